"""
Dense statevector simulation with postselection.

Qubit 0 is the most significant bit of the basis index. Postselection keeps
the state unnormalised; normalisation happens once, when outcome
probabilities are read off.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .ansatz import PARAMETERISED, CircuitIR, Gate

MAX_WIDTH = 24
# success weight below this is treated as a vanished postselection branch
DEGENERATE_WEIGHT = 1e-12

_S2 = 1 / np.sqrt(2)
H = np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def crz(theta: float) -> np.ndarray:
    return np.diag([1, 1, np.exp(-0.5j * theta), np.exp(0.5j * theta)]).astype(complex)


def gate_matrix(kind: str, theta: float | None = None) -> np.ndarray:
    """Unitary for a gate kind; two-qubit matrices are ordered (control, target)."""
    if kind in PARAMETERISED:
        if theta is None:
            raise ValueError(f"{kind} needs an angle")
        return {"RZ": rz, "RX": rx, "CRZ": crz}[kind](theta)
    if theta is not None:
        raise ValueError(f"{kind} takes no angle")
    if kind == "H":
        return H
    if kind == "CNOT":
        return CNOT
    raise ValueError(f"unknown gate kind {kind!r}")


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class Statevector:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != 2 ** self.n:
            raise ValueError(f"{amps.size} amplitudes for {self.n} qubits")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def zeros(cls, n: int) -> Statevector:
        amps = np.zeros(2 ** n, dtype=complex)
        amps[0] = 1
        return cls(n, amps)

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


def _apply(tensor: np.ndarray, matrix: np.ndarray, qubits) -> np.ndarray:
    m = len(qubits)
    op = matrix.reshape((2,) * (2 * m))
    out = np.tensordot(op, tensor, axes=(list(range(m, 2 * m)), list(qubits)))
    return np.moveaxis(out, list(range(m)), list(qubits))


def apply_gate(sv: Statevector, g: Gate, theta: float | None = None) -> Statevector:
    if any(not 0 <= q < sv.n for q in g.qubits):
        raise SimulationError(f"gate {g.kind} on {g.qubits} out of range for {sv.n} qubits")
    tensor = _apply(sv.amps.reshape((2,) * sv.n), gate_matrix(g.kind, theta), g.qubits)
    return Statevector(sv.n, tensor.reshape(-1))


def postselect(sv: Statevector, qubit: int, outcome: int = 0) -> Statevector:
    """Project ``qubit`` onto ``|outcome>`` and drop it, without renormalising."""
    if not 0 <= qubit < sv.n:
        raise SimulationError(f"qubit {qubit} out of range for {sv.n} qubits")
    tensor = sv.amps.reshape((2,) * sv.n)
    kept = np.take(tensor, outcome, axis=qubit)
    return Statevector(sv.n - 1, np.ascontiguousarray(kept).reshape(-1))


@dataclass(frozen=True)
class OutcomeDistribution:
    """Amplitudes over the measured qubits after postselection.

    ``amplitudes`` is indexed like a statevector over the measured qubits in
    their declared order; ``raw_amplitudes`` and ``probabilities`` key the
    same numbers by bitstring.
    """

    amplitudes: np.ndarray

    @property
    def n(self) -> int:
        return int(np.log2(self.amplitudes.size))

    def _key(self, index):
        return format(index, f"0{self.n}b") if self.n else ""

    @property
    def success_weight(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def degenerate(self) -> bool:
        return self.success_weight < DEGENERATE_WEIGHT

    @property
    def raw_amplitudes(self) -> dict[str, complex]:
        return {self._key(i): complex(a) for i, a in enumerate(self.amplitudes)}

    def probability_vector(self) -> np.ndarray:
        w = self.success_weight
        p = np.abs(self.amplitudes) ** 2
        return p / w if w > 0 else np.zeros_like(p)

    @property
    def probabilities(self) -> dict[str, float]:
        return {self._key(i): float(p) for i, p in enumerate(self.probability_vector())}


def _resolve(g: Gate, params) -> float | None:
    if g.param is None:
        return None
    try:
        return params[g.param]
    except KeyError:
        raise SimulationError(f"unbound parameter {g.param!r}") from None


def final_state(c: CircuitIR, params: Mapping[str, float]) -> Statevector:
    """State after all gates, before postselection and measurement."""
    if c.width > MAX_WIDTH:
        raise SimulationError(f"circuit width {c.width} exceeds the {MAX_WIDTH}-qubit limit")
    tensor = Statevector.zeros(c.width).amps.reshape((2,) * c.width)
    for g in c.gates:
        tensor = _apply(tensor, gate_matrix(g.kind, _resolve(g, params)), g.qubits)
    return Statevector(c.width, tensor.reshape(-1))


def run(c: CircuitIR, params: Mapping[str, float]) -> OutcomeDistribution:
    """Simulate ``c`` from ``|0...0>``; ``params`` maps names to angles."""
    tensor = final_state(c, params).amps.reshape((2,) * c.width)
    index = tuple(0 if q in c.postselect else slice(None) for q in range(c.width))
    for q, v in c.postselect.items():
        if v != 0:
            index = index[:q] + (v,) + index[q + 1:]
    kept = tensor[index]
    # surviving axes are the measured qubits in ascending order
    survivors = sorted(c.measured)
    kept = np.transpose(kept, [survivors.index(q) for q in c.measured])
    return OutcomeDistribution(np.ascontiguousarray(kept).reshape(-1))
