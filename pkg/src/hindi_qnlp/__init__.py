"""Pregroup grammar to IQP circuits for Hindi sentence classification."""

from .ansatz import (AnsatzConfig, CircuitIR, CompileError, Gate, ParameterTable,
                     compile_diagram, ghz_circuit, param_count, to_qasm_like)
from .diagram import (AmbiguityLimitError, Diagram, NoParseError, ParseError,
                      UnknownWordError, parse_sentence, to_dot, to_json)
from .lexicon import (Lexicon, LexiconEntry, LexiconError, load_lexicon, lookup,
                      resolve_lexicon, seed_lexicon, toy_lexicon)
from .pregroup import (AtomicType, LinkSet, NoParse, PregroupType, concat, left_adjoint,
                       reduce_to_sentence, reduces_pair, right_adjoint)
from .rewrite import RewrittenDiagram, remove_cups
from .oracle import contract_diagram_oracle
from .simulator import OutcomeDistribution, Statevector, apply_gate, postselect, run
from .training import (Dataset, Example, Model, TrainConfig, evaluate, finite_diff_gradient,
                       load_checkpoint, load_dataset, loss, predict, save_checkpoint,
                       spsa_train, toy_dataset)

compile = compile_diagram  # noqa: A001

__version__ = "0.1.0"
