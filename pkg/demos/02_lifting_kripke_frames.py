"""
From Kripke frames to enriched contexts
=======================================

Lifting a set gives a polarity whose lattice is the powerset; lifting a
frame carries its four classical operators along.
"""

# %%
import numpy as np

from roughconcepts import (
    KripkeFrame,
    Polarity,
    classify_context,
    enumerate_concepts,
    h_map,
    kripke_modal_ops,
    lift_kripke,
    lift_set,
    modal_op,
    verify_lifting_iso,
    verify_property_lifting,
)

# %% Complemented diagonal versus the plain diagonal.
print(len(enumerate_concepts(lift_set("abc"))), "concepts with the complement of the diagonal")
print(len(enumerate_concepts(Polarity("abc", "abc", np.eye(3, dtype=bool)))), "concepts with the diagonal")

# %% An equivalence relation with blocks {a} and {b, c}.
X = KripkeFrame("abc", [[1, 0, 0], [0, 1, 1], [0, 1, 1]])
F = lift_kripke(X)
for Z in range(8):
    lhs = h_map(X, kripke_modal_ops(X, "dia", Z))
    rhs = modal_op(F, "diamond", h_map(X, Z))
    assert lhs == rhs
print("diamond commutes with h on all 8 subsets")
print(classify_context(F))

# %% Every frame on three states.
fails = 0
for code in range(512):
    R = np.array([(code >> k) & 1 for k in range(9)], dtype=bool).reshape(3, 3)
    fails += not verify_lifting_iso(KripkeFrame("abc", R))
    fails += not verify_property_lifting("abc", R)
print("failures over 512 frames:", fails)
