"""
Cup removal.

A word state whose wires all end in cups against one contiguous block of
another word can be bent down into an effect on that block: contracting
``|w>`` through Bell effects is the same as applying the transpose of the
word circuit to the partner wires and projecting onto ``<0|``. The word's own
wires disappear, and so do the qubits needed to carry them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram import Diagram, Word
from .pregroup import LinkSet, PregroupType


@dataclass(frozen=True)
class Effect:
    """A word applied as a transposed effect.

    ``targets[m]`` is the live wire that the word's ``m``-th wire was cupped to.
    ``position`` is the word's index in the original sentence.
    """

    entry: str
    wires: PregroupType
    targets: tuple[int, ...]
    position: int

    def to_dict(self):
        return {"entry": self.entry, "wires": self.wires.render(),
                "targets": list(self.targets), "position": self.position}


@dataclass(frozen=True)
class RewrittenDiagram:
    diagram: Diagram
    effects: tuple[Effect, ...] = ()
    iterations: int = field(default=0, compare=False)

    def __post_init__(self):
        closed = sorted(t for e in self.effects for t in e.targets)
        if closed != list(self.diagram.closed):
            raise ValueError("effect targets must be exactly the closed wires")

    @property
    def effect_words(self) -> tuple[tuple[int, str], ...]:
        """``(sentence position, entry id)`` of every word turned into an effect."""
        return tuple((e.position, e.entry) for e in self.effects)

    @property
    def removed_cups(self) -> dict[tuple[int, str], int]:
        return {(e.position, e.entry): len(e.wires) for e in self.effects}

    # the Diagram surface, so compile/to_dot accept either
    @property
    def words(self):
        return self.diagram.words

    @property
    def cups(self):
        return self.diagram.cups

    @property
    def open(self):
        return self.diagram.open

    @property
    def wires(self):
        return self.diagram.wires

    def to_dict(self) -> dict:
        out = self.diagram.to_dict()
        out["rewritten"] = True
        out["effect_words"] = [e.to_dict() for e in self.effects]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> RewrittenDiagram:
        effects = tuple(Effect(e["entry"], PregroupType.parse(e["wires"]),
                               tuple(e["targets"]), e["position"])
                        for e in data.get("effect_words", ()))
        return cls(Diagram.from_dict(data), effects)


def remove_cups(d: Diagram | RewrittenDiagram) -> RewrittenDiagram:
    """Turn fully-cupped word states into transposed effects until nothing changes.

    A word qualifies when every one of its wires is cupped and the partners
    form one contiguous, order-reversed run of wires owned by a single other
    live word. Words are visited left to right and the state is updated after
    each conversion. Open wires are untouched.
    """
    if isinstance(d, RewrittenDiagram):
        base, effects = d.diagram, list(d.effects)
        positions = _live_positions(d)
    else:
        base, effects = d, []
        positions = list(range(len(d.words)))

    spans = base.word_spans()
    owner = base.owner()
    alive = [True] * len(base.words)
    partner = base.links.partner()
    closed = set(base.closed)

    iterations = 0
    changed = True
    while changed:
        changed = False
        iterations += 1
        for k, word in enumerate(base.words):
            if not alive[k]:
                continue
            span = list(spans[k])
            if not all(i in partner for i in span):
                continue
            targets = [partner[i] for i in span]
            if len({owner[t] for t in targets}) != 1 or owner[targets[0]] == k:
                continue
            if targets != list(range(targets[0], targets[0] - len(targets), -1)):
                continue
            alive[k] = False
            for i, t in zip(span, targets):
                del partner[i], partner[t]
                closed.add(t)
            effects.append(Effect(word.entry, word.wires, tuple(targets), positions[k]))
            changed = True

    # reindex onto the surviving wires
    keep = [i for k, span in enumerate(spans) if alive[k] for i in span]
    new_index = {old: new for new, old in enumerate(keep)}
    words = tuple(w for k, w in enumerate(base.words) if alive[k])
    cups = tuple((new_index[i], new_index[j]) for i, j in partner.items() if i < j)
    links = LinkSet(cups, tuple(new_index[i] for i in base.open))
    diagram = Diagram(words, links, tuple(new_index[i] for i in closed))
    effects = tuple(Effect(e.entry, e.wires, tuple(new_index[t] for t in e.targets), e.position)
                    for e in effects)
    return RewrittenDiagram(diagram, effects, iterations)


def _live_positions(rd: RewrittenDiagram) -> list[int]:
    """Original sentence positions of the words still alive in ``rd``."""
    gone = {e.position for e in rd.effects}
    positions, p = [], 0
    for _ in rd.diagram.words:
        while p in gone:
            p += 1
        positions.append(p)
        p += 1
    return positions
