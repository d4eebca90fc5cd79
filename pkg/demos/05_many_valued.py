"""
Many-valued contexts
====================

Polarities valued in the three-element Goedel chain, the lifting of a
valued frame, and the reflexivity correspondence.
"""

# %%
from collections import Counter

import numpy as np

from roughconcepts import (
    AKripkeFrame,
    goedel_chain,
    mv_enumerate_concepts,
    mv_lift_set,
    mv_reflex_correspondence,
    mv_verify_preservation,
    random_mv_context,
)

H = goedel_chain(3)
print("implication table:")
for a in range(H.n):
    print("  ", [H.names[H.imp[a, b]] for b in range(H.n)])

# %% Lifting a two-element set gives one concept per valued subset.
print(len(mv_enumerate_concepts(mv_lift_set(H, "vw"))), "concepts")

# %% A valued frame and its lift.
X = AKripkeFrame(H, "vw", [[2, 0], [1, 2]])
rep = mv_verify_preservation(X)
print(rep.passed, rep.details)

# %% Reflexivity on random contexts.
rng = np.random.default_rng(1)
tally = Counter()
for _ in range(200):
    r = mv_reflex_correspondence(random_mv_context(H, 2, 2, rng))
    tally[(r.axiom_valid, r.pointwise_cond)] += 1
print(dict(tally))
