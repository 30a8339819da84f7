"""
IQP-style compilation of sentence diagrams into parameterised circuits.

Every live wire of base type ``b`` gets ``q_b`` qubits, allocated left to
right. A word on ``k`` qubits is prepared from ``|0...0>`` by

* ``k == 1``: ``Rz(t0) Rx(t1) Rz(t2)`` (3 parameters),
* ``k > 1``: ``d`` layers of ``H`` on every qubit followed by ``CRz`` on each
  adjacent pair (``d * (k - 1)`` parameters).

Cups become nested Bell effects (``CNOT``, ``H`` on the control, postselect
both qubits on 0). Words removed by :func:`~hindi_qnlp.rewrite.remove_cups`
become their transposed circuit on the partner qubits followed by
postselection. Parameters are named ``<entry id>__<slot>`` so the same entry
shares parameters across sentences.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .diagram import Diagram
from .rewrite import RewrittenDiagram

GATE_KINDS = ("H", "RZ", "RX", "CRZ", "CNOT")
PARAMETERISED = frozenset({"RZ", "RX", "CRZ"})
TWO_QUBIT = frozenset({"CRZ", "CNOT"})


class CompileError(ValueError):
    pass


@dataclass(frozen=True)
class AnsatzConfig:
    """Qubits per base type (``default`` for unlisted types) and IQP depth."""

    qubits_per_type: Mapping[str, int] = field(default_factory=dict)
    layers: int = 1
    default: int | None = 1

    def __post_init__(self):
        object.__setattr__(self, "qubits_per_type", dict(self.qubits_per_type))
        if not isinstance(self.layers, int) or self.layers < 1:
            raise CompileError(f"layers must be a positive integer, got {self.layers!r}")
        for base, q in self.qubits_per_type.items():
            if not isinstance(q, int) or q < 1:
                raise CompileError(f"q_b for {base!r} must be a positive integer, got {q!r}")
        if self.default is not None and (not isinstance(self.default, int) or self.default < 1):
            raise CompileError(f"default q_b must be a positive integer, got {self.default!r}")

    def qubits(self, base: str) -> int:
        if base in self.qubits_per_type:
            return self.qubits_per_type[base]
        if self.default is None:
            raise CompileError(f"no qubit count for type {base!r} and no default")
        return self.default

    def to_dict(self) -> dict:
        return {"qubits_per_type": dict(sorted(self.qubits_per_type.items())),
                "layers": self.layers, "default": self.default}

    @classmethod
    def from_dict(cls, data: Mapping) -> AnsatzConfig:
        return cls(data.get("qubits_per_type", {}), data.get("layers", 1),
                   data.get("default", 1))


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    param: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity or len(set(self.qubits)) != arity:
            raise ValueError(f"{self.kind} needs {arity} distinct qubits, got {self.qubits}")
        if (self.param is not None) != (self.kind in PARAMETERISED):
            raise ValueError(f"{self.kind} parameter mismatch: {self.param!r}")

    def remap(self, mapping) -> Gate:
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.param)


class ParameterTable:
    """Ordered ``name -> value`` table (radians)."""

    def __init__(self, items: Iterable[tuple[str, float]] = ()):
        self._values: dict[str, float] = {}
        for name, value in items:
            if name in self._values:
                raise ValueError(f"duplicate parameter {name!r}")
            self._values[name] = float(value)

    @property
    def names(self) -> list[str]:
        return list(self._values)

    def values(self) -> np.ndarray:
        return np.array(list(self._values.values()), dtype=float)

    def set_values(self, values) -> None:
        values = list(values)
        if len(values) != len(self._values):
            raise ValueError("wrong number of parameter values")
        self._values = dict(zip(self._values, map(float, values)))

    def items(self):
        return self._values.items()

    def __getitem__(self, name: str) -> float:
        return self._values[name]

    def __setitem__(self, name: str, value: float):
        self._values[name] = float(value)

    def __contains__(self, name) -> bool:
        return name in self._values

    def __len__(self):
        return len(self._values)

    def __iter__(self):
        return iter(self._values)

    def __eq__(self, other):
        return isinstance(other, ParameterTable) and list(self.items()) == list(other.items())

    def __repr__(self):
        return f"ParameterTable({list(self.items())!r})"

    def copy(self) -> ParameterTable:
        return ParameterTable(self.items())

    def add(self, name: str, value: float = 0.0) -> None:
        self._values.setdefault(name, float(value))


@dataclass(frozen=True)
class CircuitIR:
    width: int
    gates: tuple[Gate, ...]
    postselect: Mapping[int, int]
    measured: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "postselect", dict(sorted(self.postselect.items())))
        object.__setattr__(self, "measured", tuple(self.measured))
        for g in self.gates:
            if any(not 0 <= q < self.width for q in g.qubits):
                raise ValueError(f"gate {g} out of range for width {self.width}")
        touched = sorted(list(self.postselect) + list(self.measured))
        if touched != list(range(self.width)):
            raise ValueError("postselected and measured qubits must partition the register")

    @property
    def param_names(self) -> list[str]:
        seen = {}
        for g in self.gates:
            if g.param is not None:
                seen.setdefault(g.param, None)
        return list(seen)

    def to_dict(self, params: ParameterTable | None = None) -> dict:
        out = {
            "width": self.width,
            "gates": [{"kind": g.kind, "qubits": list(g.qubits), "param": g.param}
                      for g in self.gates],
            "postselect": [[q, v] for q, v in self.postselect.items()],
            "measured": list(self.measured),
        }
        if params is not None:
            out["params"] = {name: params[name] for name in self.param_names}
        return out

    def to_json(self, params: ParameterTable | None = None) -> str:
        return json.dumps(self.to_dict(params), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> CircuitIR:
        gates = tuple(Gate(g["kind"], tuple(g["qubits"]), g.get("param")) for g in data["gates"])
        return cls(data["width"], gates, {q: v for q, v in data["postselect"]},
                   tuple(data["measured"]))


def word_circuit(entry: str, k: int, layers: int) -> list[Gate]:
    """Gates preparing a word state on local qubits ``0..k-1``."""
    if k == 1:
        return [Gate("RZ", (0,), f"{entry}__0"),
                Gate("RX", (0,), f"{entry}__1"),
                Gate("RZ", (0,), f"{entry}__2")]
    gates = []
    for layer in range(layers):
        gates += [Gate("H", (q,)) for q in range(k)]
        gates += [Gate("CRZ", (q, q + 1), f"{entry}__{layer * (k - 1) + q}")
                  for q in range(k - 1)]
    return gates


def transposed_word_circuit(entry: str, k: int, layers: int) -> list[Gate]:
    # Rz, Rx, H and CRz are all symmetric matrices: the transpose of the
    # product is the same gates in reverse order
    return word_circuit(entry, k, layers)[::-1]


def word_param_count(k: int, layers: int) -> int:
    return 3 if k == 1 else layers * (k - 1)


def bell_effect(control: int, target: int) -> list[Gate]:
    return [Gate("CNOT", (control, target)), Gate("H", (control,))]


def ghz_circuit(n: int) -> list[Gate]:
    """H on qubit 0 then CNOT fan-out: ``(|0...0> + |1...1>)/sqrt(2)``."""
    if n < 1:
        raise ValueError("GHZ state needs at least one qubit")
    return [Gate("H", (0,))] + [Gate("CNOT", (0, i)) for i in range(1, n)]


def _wire_qubits(d: Diagram, cfg: AnsatzConfig) -> list[list[int]]:
    out, nxt = [], 0
    for atom in d.wires:
        q = cfg.qubits(atom.base)
        out.append(list(range(nxt, nxt + q)))
        nxt += q
    return out


def compile_diagram(d: Diagram | RewrittenDiagram, cfg: AnsatzConfig | None = None,
                    values: Mapping[str, float] | None = None):
    """Compile ``d`` to ``(CircuitIR, ParameterTable)``.

    Parameter values come from ``values`` when given there, else 0.0.
    """
    cfg = cfg or AnsatzConfig()
    if isinstance(d, RewrittenDiagram):
        base, effects = d.diagram, d.effects
    else:
        base, effects = d, ()
    wires = base.wires
    wq = _wire_qubits(base, cfg)
    width = sum(map(len, wq))

    gates: list[Gate] = []
    names: list[str] = []
    for word, span in zip(base.words, base.word_spans()):
        local = [q for i in span for q in wq[i]]
        for g in word_circuit(word.entry, len(local), cfg.layers):
            gates.append(g.remap(local))
        names += _slot_names(word.entry, len(local), cfg.layers)

    postselect: dict[int, int] = {}
    for eff in effects:
        if len(eff.targets) != len(eff.wires):
            raise CompileError(f"effect {eff.entry!r} does not match its targets")
        local = []
        for atom, t in zip(eff.wires, eff.targets):
            if wires[t].base != atom.base:
                raise CompileError(f"effect {eff.entry!r} wire {atom} targets {wires[t]}")
            # partner qubits pair in reverse, as nested Bell effects do
            local += wq[t][::-1]
        for g in transposed_word_circuit(eff.entry, len(local), cfg.layers):
            gates.append(g.remap(local))
        names += _slot_names(eff.entry, len(local), cfg.layers)
        postselect.update((q, 0) for q in local)

    for i, j in base.cups:
        left, right = wq[i], wq[j]
        if len(left) != len(right):
            raise CompileError(f"cup {(i, j)} joins wires of different widths")
        # innermost pair first
        for m in reversed(range(len(left))):
            a, b = left[m], right[len(right) - 1 - m]
            gates += bell_effect(a, b)
            postselect[a] = postselect[b] = 0

    measured = tuple(q for i in base.open for q in wq[i])
    circuit = CircuitIR(width, tuple(gates), postselect, measured)

    values = values or {}
    table = ParameterTable()
    for name in names:
        table.add(name, values.get(name, 0.0))
    return circuit, table


def _slot_names(entry, k, layers):
    return [f"{entry}__{s}" for s in range(word_param_count(k, layers))]


def param_count(diagrams: Diagram | RewrittenDiagram | Iterable, cfg: AnsatzConfig | None = None) -> int:
    """Number of distinct parameters over one diagram or a corpus of them."""
    cfg = cfg or AnsatzConfig()
    if isinstance(diagrams, (Diagram, RewrittenDiagram)):
        diagrams = [diagrams]
    seen: dict[str, int] = {}
    for d in diagrams:
        words = list(d.words) + list(getattr(d, "effects", ()))
        for w in words:
            k = sum(cfg.qubits(a.base) for a in w.wires)
            seen[w.entry] = word_param_count(k, cfg.layers)
    return sum(seen.values())


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def to_qasm_like(c: CircuitIR, p: ParameterTable | Mapping[str, float]) -> str:
    """Flat text listing: gates, then postselections, then measurements."""
    lines = []
    for g in c.gates:
        qubits = ",".join(f"q[{q}]" for q in g.qubits)
        if g.param is None:
            lines.append(f"{g.kind} {qubits}")
        else:
            if g.param not in p:
                raise CompileError(f"unbound parameter {g.param!r}")
            lines.append(f"{g.kind} {qubits} (theta={_fmt(p[g.param])})")
    lines += [f"postselect q[{q}] {v}" for q, v in c.postselect.items()]
    lines += [f"measure q[{q}] -> c[{k}]" for k, q in enumerate(c.measured)]
    return "\n".join(lines) + "\n"


def random_values(names: Iterable[str], rng: np.random.Generator) -> dict[str, float]:
    """Uniform draws in ``[0, 2*pi)``, one per name, in order."""
    names = list(names)
    return dict(zip(names, rng.uniform(0.0, 2 * math.pi, size=len(names)).tolist()))
