import numpy as np

from roughconcepts.generate import (
    ContextParams,
    all_polarities,
    compatible_relations,
    exhaustive_contexts,
    random_enriched_context,
    random_formula,
    random_polarity,
    random_t_model,
)
from roughconcepts.io import enriched_to_dict
from roughconcepts.relations import classify_context, is_i_compatible


def test_seeded_generation_is_deterministic():
    a = random_enriched_context(ContextParams(3, 3, 3, 3), 1)
    b = random_enriched_context(ContextParams(3, 3, 3, 3), 1)
    assert enriched_to_dict(a) == enriched_to_dict(b)
    assert random_formula(7) == random_formula(7)
    assert np.array_equal(random_polarity(4, 4, 9).incidence, random_polarity(4, 4, 9).incidence)


def test_random_contexts_are_compatible():
    rng = np.random.default_rng(0)
    params = ContextParams(triangles=True)
    for _ in range(1000):
        F = random_enriched_context(params, rng)
        for R in (F.rbox, F.rdia, F.rtri, F.ltri):
            assert is_i_compatible(F.base, R)


def test_reflexive_params():
    for seed in range(50):
        assert classify_context(random_enriched_context(ContextParams(reflexive=True), seed)).reflexive


def test_exhaustive_counts():
    assert sum(1 for _ in all_polarities(2, 2)) == 16
    assert sum(1 for _ in exhaustive_contexts(2, 2)) == 693
    assert sum(1 for _ in exhaustive_contexts(2, 2, triangles=True)) == 75
    P = next(iter(all_polarities(2, 2)))
    assert all(is_i_compatible(P, R) for R in compatible_relations(P, "AX"))


def test_random_t_models_are_valid():
    for s in range(100):
        M = random_t_model(s)
        assert set(M.relations) == {"p", "q"}
