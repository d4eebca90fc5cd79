"""
Belief and plausibility
=======================

Inner and outer measures on a partition space, then the same numbers
recovered from the lifted concept lattice.
"""

# %%
from fractions import Fraction

from roughconcepts import (
    PartitionProbSpace,
    belief_plausibility,
    canonical_relation_classical,
    canonical_relation_conceptual,
    inner_outer,
    lift_prob_space,
    random_conceptual_space,
    s5_law_check,
)

P = PartitionProbSpace([1, 2, 3], [[1], [2, 3]], [Fraction(2, 5), Fraction(3, 5)])
for Z in range(8):
    lo, hi = inner_outer(P, Z)
    print(sorted(P.carrier[i] for i in range(3) if Z >> i & 1), lo, hi)

R, rep = canonical_relation_classical(P)
print(R.astype(int), rep.passed)

# %% The lifted space gives the same pairs.
C = lift_prob_space(P)
print(all(belief_plausibility(C, c) == inner_outer(P, c.extent) for c in C.lattice))

# %% Random conceptual spaces.
ok = 0
for seed in range(100):
    C = random_conceptual_space(seed)
    ok += canonical_relation_conceptual(C)[1].passed and s5_law_check(C).passed
print(f"{ok}/100 random spaces pass")
