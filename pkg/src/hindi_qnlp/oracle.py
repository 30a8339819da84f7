"""
Brute-force tensor contraction of a sentence diagram.

Builds each word state as a dense vector from Pauli-form gate matrices and
contracts the whole network with one ``einsum``; nothing here goes through
the circuit IR or the statevector simulator, which it exists to check.
"""

from __future__ import annotations

from functools import reduce
from typing import Mapping

import numpy as np

from .ansatz import AnsatzConfig
from .diagram import Diagram
from .rewrite import RewrittenDiagram
from .simulator import OutcomeDistribution

MAX_QUBITS = 12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


def _rot(pauli, theta):
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * pauli


def _embed(op, first, k):
    """``op`` on local qubits ``first..`` of ``k``, qubit 0 most significant."""
    span = int(np.log2(op.shape[0]))
    return reduce(np.kron, [np.eye(2 ** first), op, np.eye(2 ** (k - first - span))])


def word_state(entry: str, k: int, layers: int, params: Mapping[str, float]) -> np.ndarray:
    zero = np.zeros(2 ** k, dtype=complex)
    zero[0] = 1
    if k == 1:
        t = [params[f"{entry}__{s}"] for s in range(3)]
        return _rot(Z, t[2]) @ _rot(X, t[1]) @ _rot(Z, t[0]) @ zero
    hadamards = reduce(np.kron, [(X + Z) / np.sqrt(2)] * k)
    state = zero
    for layer in range(layers):
        state = hadamards @ state
        for q in range(k - 1):
            theta = params[f"{entry}__{layer * (k - 1) + q}"]
            controlled = np.kron(P0, I2) + np.kron(P1, _rot(Z, theta))
            state = _embed(controlled, q, k) @ state
    return state


def contract_diagram_oracle(d: Diagram | RewrittenDiagram, params: Mapping[str, float],
                            cfg: AnsatzConfig | None = None) -> OutcomeDistribution:
    """Amplitudes on the open wires, by explicit contraction.

    Each cup contributes ``sum_i <ii|`` times ``2**(-q_b/2)``, matching the
    circuit's Bell effects. Effect words contract their state vector (not
    conjugated, no scale) against the wires they target.
    """
    cfg = cfg or AnsatzConfig()
    if isinstance(d, RewrittenDiagram):
        base, effects = d.diagram, d.effects
    else:
        base, effects = d, ()
    wires = base.wires
    sizes = [cfg.qubits(a.base) for a in wires]
    total = sum(sizes) + sum(cfg.qubits(a.base) for e in effects for a in e.wires)
    if total > MAX_QUBITS:
        raise ValueError(f"{total} qubits is too many for dense contraction")

    labels, nxt = [], 0
    for size in sizes:
        labels.append(list(range(nxt, nxt + size)))
        nxt += size

    scale = 1.0
    for i, j in base.cups:
        # nested pairing: left qubit m meets right qubit q-1-m
        for m, lab in enumerate(labels[i]):
            labels[j][len(labels[j]) - 1 - m] = lab
        scale *= 2 ** (-len(labels[i]) / 2)

    operands = []
    for word, span in zip(base.words, base.word_spans()):
        local = [lab for i in span for lab in labels[i]]
        vec = word_state(word.entry, len(local), cfg.layers, params)
        operands += [vec.reshape((2,) * len(local)), local]
    for eff in effects:
        local = [lab for t in eff.targets for lab in labels[t][::-1]]
        vec = word_state(eff.entry, len(local), cfg.layers, params)
        operands += [vec.reshape((2,) * len(local)), local]

    out = [lab for i in base.open for lab in labels[i]]
    amps = np.einsum(*operands, out) * scale
    return OutcomeDistribution(np.asarray(amps, dtype=complex).reshape(-1))
