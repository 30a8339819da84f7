"""Shared test helpers: sentence generators and brute-force oracles."""

import itertools

import numpy as np

from hindi_qnlp.pregroup import AtomicType, reduces_pair

SENTENCE_1 = ["Main", "School", "jaata", "hu"]
SENTENCE_2 = ["Mukesh", "ne", "khaana", "khaya"]

ACCEPTANCE_RESULTS = []


def words_by_type(lex):
    out = {}
    for entry in lex.entries:
        out.setdefault(" ".join(entry.type.render()), []).append(entry.surface)
    return {k: sorted(set(v)) for k, v in out.items()}


# slot types for the two sentence shapes of the corpus
TEMPLATES = (
    ("pi", "o", "o.r pi.r s tau.l", "tau"),
    ("n", "k1.l", "k1 o", "o.r n.r s"),
)


def template_sentences(lex, rng, count):
    """Random sentences filling the corpus templates from ``lex``."""
    groups = words_by_type(lex)
    out = []
    for _ in range(count):
        template = TEMPLATES[rng.integers(len(TEMPLATES))]
        out.append([groups[t][rng.integers(len(groups[t]))] for t in template])
    return out


def brute_force_linkings(seq):
    """Every planar linking of ``seq`` with one unenclosed open ``s``.

    Enumerates all partial matchings and filters them, so it shares nothing
    with the stack matcher beyond ``reduces_pair``.
    """
    n = len(seq)
    found = []

    def matchings(free):
        if not free:
            yield []
            return
        first, rest = free[0], free[1:]
        for m in matchings(rest):
            yield [(first,)] + m
        for k, other in enumerate(rest):
            for m in matchings(rest[:k] + rest[k + 1:]):
                yield [(first, other)] + m

    for m in matchings(list(range(n))):
        cups = [p for p in m if len(p) == 2]
        opens = [p[0] for p in m if len(p) == 1]
        if len(opens) != 1 or seq[opens[0]] != AtomicType("s"):
            continue
        if not all(reduces_pair(seq[i], seq[j]) for i, j in cups):
            continue
        if any(i < k < j < l for (i, j), (k, l) in itertools.permutations(cups, 2)):
            continue
        if any(i < opens[0] < j for i, j in cups):
            continue
        found.append((tuple(sorted(cups)), tuple(opens)))
    return found


def random_params(names, rng):
    return dict(zip(names, rng.uniform(0, 2 * np.pi, len(names))))
