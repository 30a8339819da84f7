"""
Pregroup types and planar reduction.

Atomic types carry an adjoint ordinal ``z``: ``z = -1`` is the left adjoint,
``z = +1`` the right adjoint, and iterated adjoints keep counting.

>>> n, s = AtomicType('n'), AtomicType('s')
>>> str(n.r), str(n.l.l)
('n.r', 'n.l.l')
>>> reduce_to_sentence([n, n.r, s]).cups
((0, 1),)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

SENTENCE = "s"


class NoParse(ValueError):
    """Raised when a type sequence does not reduce to a single sentence wire."""

    def __init__(self, message, residual=()):
        super().__init__(message)
        self.residual = tuple(residual)


@dataclass(frozen=True, order=True)
class AtomicType:
    """A basic type ``base`` with adjoint ordinal ``z``."""

    base: str
    z: int = 0

    def __post_init__(self):
        if not isinstance(self.base, str) or not self.base:
            raise ValueError(f"atomic type needs a non-empty base, got {self.base!r}")
        if self.base.strip() != self.base or "." in self.base:
            raise ValueError(f"invalid base symbol {self.base!r}")
        if not isinstance(self.z, int) or isinstance(self.z, bool):
            raise TypeError(f"adjoint ordinal must be an int, got {self.z!r}")

    @property
    def l(self) -> AtomicType:  # noqa: E743
        return left_adjoint(self)

    @property
    def r(self) -> AtomicType:
        return right_adjoint(self)

    def __str__(self):
        return self.base + (".l" if self.z < 0 else ".r") * abs(self.z)

    def __repr__(self):
        return f"AtomicType({self.base!r}{', z=%d' % self.z if self.z else ''})"

    @classmethod
    def parse(cls, text: str) -> AtomicType:
        """Parse the ``base(.l|.r)*`` rendering, e.g. ``'tau.l'``."""
        base, *suffixes = text.strip().split(".")
        z = 0
        for suffix in suffixes:
            if suffix == "l":
                z -= 1
            elif suffix == "r":
                z += 1
            else:
                raise ValueError(f"bad adjoint suffix {suffix!r} in {text!r}")
        return cls(base, z)


def left_adjoint(t: AtomicType) -> AtomicType:
    return AtomicType(t.base, t.z - 1)


def right_adjoint(t: AtomicType) -> AtomicType:
    return AtomicType(t.base, t.z + 1)


def reduces_pair(a: AtomicType, b: AtomicType) -> bool:
    """True iff ``a . b -> 1``, covering both ``x.l . x`` and ``x . x.r``."""
    return a.base == b.base and a.z + 1 == b.z


class PregroupType(tuple):
    """An ordered sequence of atomic types; the empty sequence is the unit.

    >>> n = AtomicType('n')
    >>> PregroupType([n]) @ PregroupType([n.r, AtomicType('s')])
    PregroupType('n n.r s')
    """

    def __new__(cls, atoms: Iterable[AtomicType] = ()):
        atoms = tuple(atoms)
        for atom in atoms:
            if not isinstance(atom, AtomicType):
                raise TypeError(f"expected AtomicType, got {atom!r}")
        return super().__new__(cls, atoms)

    @classmethod
    def parse(cls, items: Iterable[str] | str) -> PregroupType:
        if isinstance(items, str):
            items = items.split()
        return cls(AtomicType.parse(item) for item in items)

    def __matmul__(self, other):
        return concat(self, other)

    def render(self) -> list[str]:
        return [str(atom) for atom in self]

    def __str__(self):
        return " ".join(self.render()) if self else "1"

    def __repr__(self):
        return f"PregroupType({' '.join(self.render())!r})"


def concat(t1: Sequence[AtomicType], t2: Sequence[AtomicType]) -> PregroupType:
    return PregroupType(tuple(t1) + tuple(t2))


@dataclass(frozen=True)
class LinkSet:
    """Cups ``(i, j)`` with ``i < j`` plus the open indices, over a flat sequence."""

    cups: tuple[tuple[int, int], ...]
    open: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cups", tuple(sorted(tuple(c) for c in self.cups)))
        object.__setattr__(self, "open", tuple(sorted(self.open)))

    @property
    def size(self) -> int:
        return 2 * len(self.cups) + len(self.open)

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.cups:
            out[i], out[j] = j, i
        return out

    def check(self, n: int | None = None, closed: Sequence[int] = ()) -> None:
        """Raise ``ValueError`` unless disjointness, planarity and coverage hold.

        ``closed`` lists wires terminated by something other than a cup (the
        rewriter's transposed effects); they count towards coverage only.
        """
        seen = list(closed)
        for i, j in self.cups:
            if not i < j:
                raise ValueError(f"cup {(i, j)} is not ordered")
            seen += [i, j]
        seen += list(self.open)
        if len(set(seen)) != len(seen):
            raise ValueError("cups and open wires overlap")
        n = len(seen) if n is None else n
        if sorted(seen) != list(range(n)):
            raise ValueError("cups and open wires do not partition the wire range")
        for i, j in self.cups:
            for k, l in self.cups:
                if i < k < j < l:
                    raise ValueError(f"cups {(i, j)} and {(k, l)} cross")
            for o in self.open:
                if i < o < j:
                    raise ValueError(f"open wire {o} is enclosed by cup {(i, j)}")


def reduce_to_sentence(seq: Sequence[AtomicType]) -> LinkSet:
    """Link ``seq`` into cups leaving exactly one open ``s`` wire.

    Scans left to right with a stack, cupping the stack top with the current
    atom whenever they reduce. When that greedy pass leaves a residue the same
    scan backtracks over the cup/push choices, so any planar linking is found;
    the greedy linking is returned whenever it exists.

    Raises :class:`NoParse` when no linking exists.
    """
    seq = tuple(seq)
    if not seq:
        raise NoParse("cannot reduce an empty type sequence")
    n = len(seq)
    dead: set[tuple[int, tuple[int, ...]]] = set()

    # cup before push: the first leaf reached is the greedy linking
    def search(pos, stack, cups):
        if (pos, stack) in dead or len(stack) > n - pos + 1:
            return None
        if pos == n:
            if len(stack) == 1 and seq[stack[0]] == AtomicType(SENTENCE):
                return cups
            dead.add((pos, stack))
            return None
        if stack and reduces_pair(seq[stack[-1]], seq[pos]):
            found = search(pos + 1, stack[:-1], cups + ((stack[-1], pos),))
            if found is not None:
                return found
        found = search(pos + 1, stack + (pos,), cups)
        if found is None:
            dead.add((pos, stack))
        return found

    cups = search(0, (), ())
    if cups is None:
        residual = _greedy_residual(seq)
        shown = " ".join(str(seq[i]) for i in residual)
        raise NoParse(f"type sequence {' '.join(map(str, seq))!r} leaves {shown!r}, "
                      f"not a single {SENTENCE!r}", residual)
    used = {i for cup in cups for i in cup}
    return LinkSet(cups, tuple(i for i in range(n) if i not in used))


def _greedy_residual(seq):
    stack = []
    for pos, atom in enumerate(seq):
        if stack and reduces_pair(seq[stack[-1]], atom):
            stack.pop()
        else:
            stack.append(pos)
    return tuple(stack)
