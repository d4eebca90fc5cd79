"""
Concept lattices and modal operators
====================================

A three-object context, its concepts, and a box relation that is
not I-compatible yet still acts as the identity on the lattice.
"""

# %%
import numpy as np

from roughconcepts import (
    EnrichedContext,
    Polarity,
    Sort,
    TypedRelation,
    converse_rel,
    enumerate_concepts,
    hasse_covers,
    incidence_relation,
    is_i_compatible,
    lattice_to_dot,
    modal_op,
)

P = Polarity("abc", "xyz", [[0, 1, 1], [0, 0, 0], [0, 0, 0]])
L = enumerate_concepts(P)
for c in L:
    print(P.object_names(c.extent), P.feature_names(c.intent))

# %% The lattice is a 3-chain.
print("covers:", hasse_covers(L))
print(lattice_to_dot(L))

# %% A relation whose sections are not all Galois-stable.
R = TypedRelation(Sort.AX, [[0, 1, 1], [1, 0, 0], [0, 0, 0]])
print("compatible:", is_i_compatible(P, R))
print("R0[{x}] =", P.object_names(R.r0(P.feature_mask("x"))))

# %% Loaded permissively, box is still the identity on every concept.
F = EnrichedContext.permissive(P, R, converse_rel(incidence_relation(P)))
print([modal_op(F, "box", c) == c for c in F.lattice])

# %% Random contexts: counting concepts as density grows.
rng = np.random.default_rng(0)
for density in (0.2, 0.5, 0.8):
    sizes = [len(enumerate_concepts(Polarity(range(5), range(5), rng.random((5, 5)) < density))) for _ in range(200)]
    print(f"density {density}: mean {np.mean(sizes):.2f} concepts, max {max(sizes)}")
