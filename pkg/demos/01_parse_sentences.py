# Parsing Hindi sentences into string diagrams
#
# Every word in the lexicon carries a pregroup type. A sentence is
# grammatical when the concatenated types reduce to a single `s`, and the
# reduction tells us which wires get joined by cups.

# %%

from hindi_qnlp import PregroupType, lookup, parse_sentence, seed_lexicon, to_dot

lex = seed_lexicon()
for surface in ["Main", "School", "jaata", "hu"]:
    print(surface, [" ".join(e.type.render()) for e in lookup(lex, surface)])

# %%
# "Main School jaata hu" (I go to school). The verb asks for an object on its
# left, then the subject, and leaves a slot for the tense marker on its right.

d = parse_sentence(["Main", "School", "jaata", "hu"], lex)
print("wires:", [str(t) for t in d.wires])
print("cups: ", d.cups)
print("open: ", d.open)

# %%
# The ergative sentence threads the k1 role through the postposition "ne".

d2 = parse_sentence(["Mukesh", "ne", "khaana", "khaya"], lex)
print(d2.cups, d2.open)

# %%
# Types can also be reduced directly, without a lexicon.

t = PregroupType.parse("n") @ PregroupType.parse("n.r s")
print(t.render())

# %%
# Diagrams serialise to JSON and to Graphviz DOT.

print(d2.to_json())
print(to_dot(d2))
