# Training a topic classifier with SPSA
#
# The bundled corpus has sixteen short sentences: food (label 0) against
# travel and school (label 1). Parameters are shared across sentences by
# lexicon entry, so "Main" means the same thing everywhere.

# %%

import time

from hindi_qnlp import Model, TrainConfig, evaluate, predict, spsa_train, toy_dataset, toy_lexicon

lex = toy_lexicon()
ds = toy_dataset()
print(len(ds.train), "train,", len(ds.dev), "dev")

model = Model.initialize(lex, [x.tokens for x in ds], seed=7)
print("parameters", len(model.params))
print("untrained dev accuracy", evaluate(model, ds.dev))

# %%

start = time.perf_counter()
trained, history = spsa_train(model, ds, TrainConfig(seed=7, iterations=300))
print(f"{time.perf_counter() - start:.1f}s")
for record in history[::50] + history[-1:]:
    print(record)

# %%

for x in ds.dev:
    p0, p1 = predict(trained, x.tokens)
    print(" ".join(x.tokens), "label", x.label, f"p1={p1:.3f}")
print("dev accuracy", evaluate(trained, ds.dev))
