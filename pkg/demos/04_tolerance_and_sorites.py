"""
Strict and tolerant truth
=========================

A four-element chain where each element resembles its neighbours. The
single-step tolerance principle holds, yet a chain of steps leads from a
strict member to something that is not even tolerantly p.
"""

# %%
from roughconcepts import chain_model, lift_t_model, sorites_search, step_lemma_check, t_extent

C = chain_model("abcd", "ab")
M = lift_t_model(C)
for mode in ("strict", "classical", "tolerant"):
    c = t_extent(M, "p", mode)
    print(f"{mode:>9}: {M.base.object_names(c.extent)}")

# %%
print("single step holds:", bool(step_lemma_check(M, "p")))
chain = sorites_search(M, "p", max_len=4)
print("falsifying chain:", [M.base.objects[i] for i in chain])
print("nothing shorter:", sorites_search(M, "p", max_len=3))
