"""
Sentence diagrams: word boxes with typed output wires, joined by cups.

Wire indices run over the flattened sequence of all word types, left to right.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .lexicon import Lexicon
from .pregroup import AtomicType, LinkSet, NoParse, PregroupType, reduce_to_sentence

MAX_ASSIGNMENTS = 10_000


class ParseError(ValueError):
    pass


class UnknownWordError(ParseError):
    def __init__(self, token):
        super().__init__(f"unknown word {token!r}")
        self.token = token


class NoParseError(ParseError):
    def __init__(self, message, tokens=()):
        super().__init__(message)
        self.tokens = tuple(tokens)


class AmbiguityLimitError(ParseError):
    pass


@dataclass(frozen=True)
class Word:
    entry: str
    wires: PregroupType

    @property
    def surface(self) -> str:
        return self.entry.rsplit("#", 1)[0]


@dataclass(frozen=True)
class Diagram:
    words: tuple[Word, ...]
    links: LinkSet
    closed: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "closed", tuple(sorted(self.closed)))
        self.links.check(len(self.wires), self.closed)

    @property
    def wires(self) -> PregroupType:
        return PregroupType(a for w in self.words for a in w.wires)

    @property
    def cups(self) -> tuple[tuple[int, int], ...]:
        return self.links.cups

    @property
    def open(self) -> tuple[int, ...]:
        return self.links.open

    def word_spans(self) -> list[range]:
        """Flattened wire indices owned by each word."""
        spans, start = [], 0
        for w in self.words:
            spans.append(range(start, start + len(w.wires)))
            start += len(w.wires)
        return spans

    def owner(self) -> list[int]:
        """Word index for each flattened wire."""
        return [k for k, span in enumerate(self.word_spans()) for _ in span]

    def to_dict(self) -> dict:
        out = {
            "words": [{"entry": w.entry, "wires": w.wires.render()} for w in self.words],
            "cups": [list(c) for c in self.cups],
            "open": list(self.open),
        }
        if self.closed:
            out["closed"] = list(self.closed)
        return out

    def to_json(self) -> str:
        return to_json(self)

    @classmethod
    def from_dict(cls, data: dict) -> Diagram:
        words = tuple(Word(w["entry"], PregroupType.parse(w["wires"])) for w in data["words"])
        links = LinkSet(tuple(tuple(c) for c in data["cups"]), tuple(data["open"]))
        return cls(words, links, tuple(data.get("closed", ())))


def to_json(d: Diagram) -> str:
    """Canonical JSON: sorted keys, cups sorted by their first index."""
    return json.dumps(d.to_dict(), sort_keys=True, ensure_ascii=False)


def from_json(text: str) -> Diagram:
    data = json.loads(text)
    if data.get("rewritten"):
        from .rewrite import RewrittenDiagram
        return RewrittenDiagram.from_dict(data)
    return Diagram.from_dict(data)


def parse_sentence(tokens: Sequence[str], lex: Lexicon,
                   max_assignments: int = MAX_ASSIGNMENTS) -> Diagram:
    """Build the diagram of the first type assignment that reduces to ``s``.

    Assignments are tried in lexicon order (rightmost word varies fastest).
    """
    tokens = list(tokens)
    if not tokens:
        raise ParseError("empty sentence")
    choices = []
    for token in tokens:
        entries = lex.lookup(token)
        if not entries:
            raise UnknownWordError(token)
        choices.append(entries)

    first_failure = None
    for count, assignment in enumerate(itertools.product(*choices)):
        if count >= max_assignments:
            raise AmbiguityLimitError(
                f"more than {max_assignments} type assignments for {' '.join(tokens)!r}")
        seq = [a for entry in assignment for a in entry.type]
        try:
            links = reduce_to_sentence(seq)
        except NoParse as err:
            if first_failure is None:
                first_failure = (assignment, err)
            continue
        return Diagram(tuple(Word(e.entry_id, e.type) for e in assignment), links)

    assignment, err = first_failure
    owner = [k for k, e in enumerate(assignment) for _ in e.type]
    stuck = sorted({owner[i] for i in err.residual
                    if assignment[owner[i]].type != PregroupType([AtomicType("s")])})
    stuck_tokens = [tokens[k] for k in stuck] or tokens
    raise NoParseError(
        f"no parse for {' '.join(tokens)!r}: unreduced wires at "
        + ", ".join(repr(t) for t in stuck_tokens), stuck_tokens)


def to_dot(d: Diagram) -> str:
    """Graphviz rendering: ``w*`` word nodes, ``c*`` cup nodes, ``o*`` open ends."""
    owner = d.owner()
    wires = d.wires
    lines = ["digraph diagram {", "  rankdir=TB;"]
    for k, w in enumerate(d.words):
        lines.append(f'  w{k} [shape=box, label="{w.surface}"];')
    for k, (i, j) in enumerate(d.cups):
        lines.append(f'  c{k} [shape=point, label=""];')
        lines.append(f'  w{owner[i]} -> c{k} [arrowhead=none, label="{wires[i]}"];')
        lines.append(f'  w{owner[j]} -> c{k} [arrowhead=none, label="{wires[j]}"];')
    for k, i in enumerate(d.open):
        lines.append(f'  o{k} [shape=plaintext, label="{wires[i]}"];')
        lines.append(f'  w{owner[i]} -> o{k};')
    lines.append("}")
    return "\n".join(lines) + "\n"
