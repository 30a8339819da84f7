"""
Word-to-type lexicons.

A lexicon file is JSON::

    {"symbols": ["pi", "o", "tau", "s"],
     "entries": [{"surface": "jaata", "type": ["o.r", "pi.r", "s", "tau.l"]}, ...]}

Surfaces are matched exactly (case-sensitive, any UTF-8). A surface may have
several entries; they keep file order and get ids ``surface#0``, ``surface#1``...
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from os import PathLike
from typing import Iterable

from .pregroup import SENTENCE, PregroupType

# Table of base symbols for the Hindi fragment; s is the sentence type.
HINDI_SYMBOLS = ("pi", "n", "p", "a", "o", "k1", "rho", "alpha", "tau", SENTENCE)


class LexiconError(ValueError):
    pass


class LexiconFormatError(LexiconError):
    """The file is not valid JSON or does not have the expected layout."""


class LexiconValidationError(LexiconError):
    """An entry breaks a lexicon invariant."""


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    type: PregroupType
    entry_id: str

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise LexiconValidationError(f"bad surface form {self.surface!r}")
        if not self.type:
            raise LexiconValidationError(f"entry {self.entry_id!r} has an empty type")


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[LexiconEntry, ...]
    declared_symbols: frozenset[str]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index: dict[str, list[LexiconEntry]] = {}
        ids = set()
        for entry in self.entries:
            if entry.entry_id in ids:
                raise LexiconValidationError(f"duplicate entry id {entry.entry_id!r}")
            ids.add(entry.entry_id)
            for atom in entry.type:
                if atom.base not in self.declared_symbols:
                    raise LexiconValidationError(
                        f"entry {entry.entry_id!r} uses undeclared symbol {atom.base!r}")
            index.setdefault(entry.surface, []).append(entry)
        object.__setattr__(self, "_index", {k: tuple(v) for k, v in index.items()})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, PregroupType | str]],
                   symbols: Iterable[str] = HINDI_SYMBOLS) -> Lexicon:
        """Build a lexicon from ``(surface, type)`` pairs, numbering repeats."""
        counts: dict[str, int] = {}
        entries = []
        for surface, typ in pairs:
            if not isinstance(typ, PregroupType):
                typ = PregroupType.parse(typ)
            ordinal = counts.get(surface, 0)
            counts[surface] = ordinal + 1
            entries.append(LexiconEntry(surface, typ, f"{surface}#{ordinal}"))
        return cls(tuple(entries), frozenset(symbols))

    @property
    def surfaces(self) -> list[str]:
        return list(self._index)

    def lookup(self, surface: str) -> tuple[LexiconEntry, ...]:
        return self._index.get(surface, ())

    def __getitem__(self, entry_id: str) -> LexiconEntry:
        for entry in self.entries:
            if entry.entry_id == entry_id:
                return entry
        raise KeyError(entry_id)

    def to_dict(self) -> dict:
        return {
            "symbols": sorted(self.declared_symbols),
            "entries": [{"surface": e.surface, "type": e.type.render()}
                        for e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def lookup(lex: Lexicon, surface: str) -> list[LexiconEntry]:
    return list(lex.lookup(surface))


def lexicon_from_dict(data) -> Lexicon:
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise LexiconFormatError("lexicon must be an object with an 'entries' list")
    symbols = data.get("symbols", [])
    if not isinstance(symbols, list) or not all(isinstance(s, str) and s for s in symbols):
        raise LexiconFormatError("'symbols' must be a list of non-empty strings")
    pairs = []
    for k, item in enumerate(data["entries"]):
        if not isinstance(item, dict) or not isinstance(item.get("surface"), str) \
                or not isinstance(item.get("type"), list):
            raise LexiconFormatError(f"entry {k} needs a 'surface' string and a 'type' list")
        try:
            typ = PregroupType.parse(item["type"])
        except (ValueError, TypeError, AttributeError) as err:
            raise LexiconValidationError(
                f"entry {k} ({item['surface']!r}): {err}") from None
        if not typ:
            raise LexiconValidationError(f"entry {k} ({item['surface']!r}) has an empty type")
        pairs.append((item["surface"], typ))
    return Lexicon.from_pairs(pairs, symbols)


def load_lexicon(path: str | PathLike) -> Lexicon:
    """Read and validate a lexicon file."""
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as err:
            raise LexiconFormatError(f"{path}: {err}") from None
    return lexicon_from_dict(data)


def write_lexicon(lex: Lexicon, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(lex.to_json())


SEED_ENTRIES = (
    ("Main", "pi"),
    ("School", "o"),
    ("jaata", "o.r pi.r s tau.l"),
    ("hu", "tau"),
    ("Mukesh", "n"),
    ("ne", "k1.l"),
    ("khaana", "k1 o"),
    ("khaya", "o.r n.r s"),
)


def seed_lexicon() -> Lexicon:
    """The eight words of the two worked sentences."""
    return Lexicon.from_pairs(SEED_ENTRIES)


def toy_lexicon() -> Lexicon:
    """Seed lexicon extended with the words used by the bundled toy corpus."""
    text = resources.files("hindi_qnlp.data").joinpath("toy_lexicon.json").read_text("utf-8")
    return lexicon_from_dict(json.loads(text))


def resolve_lexicon(name_or_path: str | PathLike) -> Lexicon:
    """``'seed'`` and ``'toy'`` name the bundled lexicons; anything else is a path."""
    if name_or_path == "seed":
        return seed_lexicon()
    if name_or_path == "toy":
        return toy_lexicon()
    return load_lexicon(name_or_path)
