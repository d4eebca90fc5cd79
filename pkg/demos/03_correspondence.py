"""
Axioms and first-order conditions
=================================

Each modal axiom is checked for frame validity and compared with its
first-order condition on random I-compatible contexts.
"""

# %%
from collections import Counter

import numpy as np

from roughconcepts import (
    CORRESPONDENCE,
    ContextParams,
    correspondence_check,
    frame_valid_report,
    lift_kripke,
    KripkeFrame,
    random_enriched_context,
)

# %% A non-reflexive frame refutes box p |- p, with a witness valuation.
F = lift_kripke(KripkeFrame("ab", [[0, 1], [0, 0]]))
res = frame_valid_report(F, "box p |- p")
print(res)

# %% Agreement table.
rng = np.random.default_rng(7)
for item, (sequent, condition, _) in CORRESPONDENCE.items():
    params = ContextParams(triangles=item.startswith("T"))
    tally = Counter()
    for _ in range(200):
        r = correspondence_check(random_enriched_context(params, rng), item)
        tally[(r.axiom_valid, r.fo_condition)] += 1
    agree = tally[(True, True)] + tally[(False, False)]
    print(f"{item:>3}  {sequent:<22} {condition:<28} agree {agree}/200  (valid {tally[(True, True)]})")
