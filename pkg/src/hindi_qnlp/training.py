"""
Binary sentence classification with shared word parameters, trained by SPSA.

The class is read off the single measured qubit of the sentence wire:
``p1`` is the probability of outcome 1 after postselection, ``p0 = 1 - p1``.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from os import PathLike
from typing import Iterable, Sequence

import numpy as np

from .ansatz import AnsatzConfig, ParameterTable, compile_diagram, random_values
from .diagram import ParseError, parse_sentence
from .lexicon import Lexicon, lexicon_from_dict
from .rewrite import remove_cups
from .simulator import DEGENERATE_WEIGHT, OutcomeDistribution, run

log = logging.getLogger(__name__)

TIE = 1e-12


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Example:
    tokens: tuple[str, ...]
    label: int
    split: str = "train"

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.label not in (0, 1):
            raise DatasetError(f"label must be 0 or 1, got {self.label!r}")
        if self.split not in ("train", "dev"):
            raise DatasetError(f"split must be 'train' or 'dev', got {self.split!r}")


@dataclass(frozen=True)
class Dataset:
    items: tuple[Example, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def split(self, name: str) -> Dataset:
        return Dataset(tuple(x for x in self.items if x.split == name))

    @property
    def train(self) -> Dataset:
        return self.split("train")

    @property
    def dev(self) -> Dataset:
        return self.split("dev")

    def validate(self, lexicon: Lexicon) -> None:
        """Every sentence must parse and the train split must hold both labels."""
        for k, x in enumerate(self.items):
            try:
                parse_sentence(x.tokens, lexicon)
            except ParseError as err:
                raise DatasetError(f"item {k} ({' '.join(x.tokens)!r}): {err}") from err
        if {x.label for x in self.train} != {0, 1}:
            raise DatasetError("train split must contain both labels")

    def to_jsonl(self) -> str:
        return "".join(json.dumps({"tokens": list(x.tokens), "label": x.label,
                                   "split": x.split}, ensure_ascii=False) + "\n"
                       for x in self.items)


def dataset_from_lines(lines: Iterable[str]) -> Dataset:
    items = []
    for n, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
            items.append(Example(tuple(row["tokens"]), row["label"], row.get("split", "train")))
        except (json.JSONDecodeError, KeyError, TypeError) as err:
            raise DatasetError(f"line {n}: {err}") from None
    return Dataset(tuple(items))


def load_dataset(path: str | PathLike, lexicon: Lexicon | None = None) -> Dataset:
    with open(path, encoding="utf-8") as f:
        ds = dataset_from_lines(f)
    if lexicon is not None:
        ds.validate(lexicon)
    return ds


def toy_dataset() -> Dataset:
    """The bundled 16-sentence corpus: food (0) vs travel/school (1)."""
    text = resources.files("hindi_qnlp.data").joinpath("toy_corpus.jsonl").read_text("utf-8")
    return dataset_from_lines(text.splitlines())


@dataclass
class TrainConfig:
    seed: int = 7
    iterations: int = 500
    a: float = 2.0
    c: float = 0.1
    A: float | None = None  # None means 0.1 * iterations
    alpha: float = 0.602
    gamma: float = 0.101
    epsilon: float = 1e-9

    def __post_init__(self):
        if self.a < 0 or self.c <= 0:
            raise ValueError("SPSA needs a >= 0 and c > 0")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")

    @property
    def stability(self) -> float:
        return 0.1 * self.iterations if self.A is None else self.A

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Model:
    """Lexicon, ansatz and one shared parameter table for a whole corpus."""

    lexicon: Lexicon
    ansatz: AnsatzConfig = field(default_factory=AnsatzConfig)
    params: ParameterTable = field(default_factory=ParameterTable)
    rewrite: bool = False
    _circuits: dict = field(default_factory=dict, init=False, repr=False)

    @classmethod
    def initialize(cls, lexicon: Lexicon, sentences: Iterable[Sequence[str]],
                   ansatz: AnsatzConfig | None = None, rewrite: bool = False,
                   seed: int = 7) -> Model:
        """Model whose parameters cover ``sentences``, drawn uniformly in [0, 2pi)."""
        model = cls(lexicon, ansatz or AnsatzConfig(), ParameterTable(), rewrite)
        names: dict[str, None] = {}
        for tokens in sentences:
            # word order of the plain diagram, so the draw ignores the rewrite flag
            _, table = compile_diagram(parse_sentence(tokens, lexicon), model.ansatz)
            names.update(dict.fromkeys(table.names))
            model.compiled(tokens)
        rng = np.random.default_rng(seed)
        model.params = ParameterTable(random_values(names, rng).items())
        return model

    def compiled(self, tokens: Sequence[str]):
        """Cached ``(circuit, parameter names)`` for a sentence."""
        key = tuple(tokens)
        if key not in self._circuits:
            d = parse_sentence(key, self.lexicon)
            if self.rewrite:
                d = remove_cups(d)
            self._circuits[key] = compile_diagram(d, self.ansatz)
        return self._circuits[key]

    def ensure_params(self, sentences: Iterable[Sequence[str]], seed: int = 7) -> None:
        missing = {}
        for tokens in sentences:
            for name in self.compiled(tokens)[0].param_names:
                if name not in self.params:
                    missing[name] = None
        if missing:
            for name, value in random_values(missing, np.random.default_rng(seed)).items():
                self.params.add(name, value)

    def distribution(self, tokens: Sequence[str], theta: dict | None = None) -> OutcomeDistribution:
        circuit, _ = self.compiled(tokens)
        return run(circuit, self.params if theta is None else theta)

    def with_values(self, values) -> dict[str, float]:
        return dict(zip(self.params.names, values))

    def to_checkpoint(self) -> dict:
        return {
            "config": {"ansatz": self.ansatz.to_dict(), "rewrite": self.rewrite,
                       "lexicon": self.lexicon.to_dict()},
            "params": dict(self.params.items()),
        }

    @classmethod
    def from_checkpoint(cls, data: dict) -> Model:
        cfg = data["config"]
        return cls(lexicon_from_dict(cfg["lexicon"]), AnsatzConfig.from_dict(cfg["ansatz"]),
                   ParameterTable(data["params"].items()), bool(cfg.get("rewrite", False)))


def save_checkpoint(m: Model, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(m.to_checkpoint(), f, indent=2, ensure_ascii=False)
        f.write("\n")


def load_checkpoint(path: str | PathLike) -> Model:
    with open(path, encoding="utf-8") as f:
        return Model.from_checkpoint(json.load(f))


def _class_probs(dist: OutcomeDistribution) -> tuple[float, float]:
    if dist.success_weight < DEGENERATE_WEIGHT:
        log.debug("zero postselection weight; predicting (0.5, 0.5)")
        return 0.5, 0.5
    probs = dist.probability_vector()
    if dist.n == 1:
        return float(probs[0]), float(probs[1])
    # wider sentence wire: majority vote over the bits, ties split evenly
    ones = np.array([bin(i).count("1") for i in range(probs.size)])
    p1 = probs[2 * ones > dist.n].sum() + 0.5 * probs[2 * ones == dist.n].sum()
    return float(1 - p1), float(p1)


def predict(m: Model, tokens: Sequence[str], theta: dict | None = None) -> tuple[float, float]:
    """``(p0, p1)`` for one sentence; ``(0.5, 0.5)`` when postselection never succeeds."""
    return _class_probs(m.distribution(tokens, theta))


def is_degenerate(m: Model, tokens: Sequence[str]) -> bool:
    return m.distribution(tokens).success_weight < DEGENERATE_WEIGHT


def loss(m: Model, ds: Dataset, theta: dict | None = None, epsilon: float = 1e-9) -> float:
    """Mean binary cross-entropy ``-log(max(p_label, epsilon))``."""
    if not len(ds):
        return 0.0
    total = 0.0
    for x in ds:
        p = predict(m, x.tokens, theta)[x.label]
        total -= math.log(max(p, epsilon))
    return total / len(ds)


def evaluate(m: Model, ds: Dataset, theta: dict | None = None) -> float:
    """Accuracy; a prediction with ``|p0 - p1| < 1e-12`` counts as wrong."""
    if not len(ds):
        return 0.0
    correct = 0
    for x in ds:
        p0, p1 = predict(m, x.tokens, theta)
        if abs(p0 - p1) >= TIE and int(p1 > p0) == x.label:
            correct += 1
    return correct / len(ds)


def spsa_train(m: Model, ds: Dataset, cfg: TrainConfig | None = None,
               callback=None) -> tuple[Model, list[dict]]:
    """Fit ``m`` on the train split of ``ds`` with SPSA.

    Step ``k`` (from 0) perturbs all parameters by ``c_k * delta`` with
    ``delta`` uniform on {-1, +1}, estimates the gradient from the two
    losses, and moves by ``a_k`` times that estimate, where
    ``a_k = a / (k + 1 + A) ** alpha`` and ``c_k = c / (k + 1) ** gamma``.
    Returns a new model and one ``{"step", "loss", "acc"}`` record per step,
    measured after the update.
    """
    cfg = cfg or TrainConfig()
    train = ds.train if any(x.split == "train" for x in ds) else ds
    m.ensure_params([x.tokens for x in ds], seed=cfg.seed)
    rng = np.random.default_rng([cfg.seed, 1])
    theta = m.params.values()
    history = []

    def objective(values):
        return loss(m, train, m.with_values(values), cfg.epsilon)

    for k in range(cfg.iterations):
        a_k = cfg.a / (k + 1 + cfg.stability) ** cfg.alpha
        c_k = cfg.c / (k + 1) ** cfg.gamma
        delta = rng.choice([-1.0, 1.0], size=theta.size)
        diff = objective(theta + c_k * delta) - objective(theta - c_k * delta)
        theta = theta - a_k * diff / (2 * c_k) / delta
        current = m.with_values(theta)
        record = {"step": k + 1,
                  "loss": loss(m, train, current, cfg.epsilon),
                  "acc": evaluate(m, train, current)}
        history.append(record)
        if callback is not None:
            callback(record)

    trained = Model(m.lexicon, m.ansatz, ParameterTable(zip(m.params.names, theta)), m.rewrite)
    trained._circuits = m._circuits
    return trained, history


def finite_diff_gradient(m: Model, ds: Dataset, h: float = 1e-4,
                         epsilon: float = 1e-9) -> np.ndarray:
    """Central differences of :func:`loss` along every parameter."""
    if h <= 0:
        raise ValueError("step must be positive")
    theta = m.params.values()
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = h
        up = loss(m, ds, m.with_values(theta + step), epsilon)
        down = loss(m, ds, m.with_values(theta - step), epsilon)
        grad[i] = (up - down) / (2 * h)
    return grad


def format_history(history: Iterable[dict]) -> str:
    """JSON lines with values rounded to 12 significant digits."""
    return "".join(json.dumps({"step": r["step"], "loss": float(f"{r['loss']:.12g}"),
                               "acc": float(f"{r['acc']:.12g}")}) + "\n"
                   for r in history)
