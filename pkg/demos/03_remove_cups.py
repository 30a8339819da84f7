# Shrinking circuits by removing cups
#
# A word whose wires are all cupped to a single neighbour can be bent round
# and applied to that neighbour as an effect. The circuit loses qubits, the
# predictions stay the same, and the raw amplitude grows by sqrt(2) per
# removed cup.

# %%

import numpy as np

from hindi_qnlp import compile_diagram, parse_sentence, remove_cups, run, seed_lexicon
from hindi_qnlp.ansatz import random_values

lex = seed_lexicon()
d = parse_sentence(["Main", "School", "jaata", "hu"], lex)
rd = remove_cups(d)
print("effects:", rd.effect_words)
print("remaining words:", [w.surface for w in rd.words])

# %%

plain, params = compile_diagram(d)
small, _ = compile_diagram(rd)
print("width", plain.width, "->", small.width)

values = random_values(params.names, np.random.default_rng(1))
before, after = run(plain, values), run(small, values)
print("probabilities", before.probability_vector(), after.probability_vector())
print("amplitude ratio", after.amplitudes / before.amplitudes)
removed = len(plain.postselect) - len(small.postselect)
print("expected", 2 ** (removed / 2))
