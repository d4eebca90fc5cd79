"""Brute-force reference implementations, written against plain Python sets."""

from itertools import product

import numpy as np


def concepts_bruteforce(incidence) -> set[tuple[frozenset, frozenset]]:
    """Every (B'', B') for B ranging over all object subsets."""
    I = np.asarray(incidence, dtype=bool)
    nA, nX = I.shape

    def up(B):
        return frozenset(x for x in range(nX) if all(I[a, x] for a in B))

    def down(Y):
        return frozenset(a for a in range(nA) if all(I[a, x] for x in Y))

    out = set()
    for code in range(1 << nA):
        B = [a for a in range(nA) if code >> a & 1]
        Y = up(B)
        out.add((down(Y), Y))
    return out


def as_sets(L) -> set[tuple[frozenset, frozenset]]:
    def members(mask):
        return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)

    return {(members(c.extent), members(c.intent)) for c in L}


def residuum_bruteforce(order, meet, a, b):
    """Greatest c with meet(a, c) <= b, searched over the whole carrier."""
    n = len(order)
    cands = [c for c in range(n) if order[meet[a][c]][b]]
    tops = [c for c in cands if all(order[d][c] for d in cands)]
    return tops[0] if len(tops) == 1 else None


def relations(n: int):
    for code in range(1 << (n * n)):
        yield np.array([(code >> k) & 1 for k in range(n * n)], dtype=bool).reshape(n, n)


def mv_vectors(k: int, n: int):
    return [np.array(v, dtype=np.int64) for v in product(range(k), repeat=n)]
