# From diagrams to parameterised circuits
#
# Each atomic type gets some number of qubits. Words become IQP-style state
# preparations and every cup becomes a Bell effect (CNOT, H, postselect).

# %%

import numpy as np

from hindi_qnlp import AnsatzConfig, compile_diagram, parse_sentence, run, seed_lexicon
from hindi_qnlp.ansatz import random_values, to_qasm_like

lex = seed_lexicon()
d = parse_sentence(["Main", "School", "jaata", "hu"], lex)

circuit, params = compile_diagram(d, AnsatzConfig())
print("width", circuit.width, "parameters", len(params))
print("postselected", sorted(circuit.postselect), "measured", circuit.measured)

# %%
# The QASM-like listing is stable, which makes it handy for diffs.

print(to_qasm_like(circuit, params))

# %%
# Bind random angles and simulate. Postselection leaves the state
# unnormalised; the class probabilities are renormalised on read-out.

values = random_values(params.names, np.random.default_rng(0))
dist = run(circuit, values)
print("success weight", dist.success_weight)
print(dist.probabilities)

# %%
# Two qubits per object wire and two IQP layers widen the circuit.

wide, wide_params = compile_diagram(d, AnsatzConfig({"o": 2}, layers=2))
print("width", wide.width, "parameters", len(wide_params))
