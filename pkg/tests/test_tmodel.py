import numpy as np
import pytest

from roughconcepts.errors import InvalidModelError, UnboundAtomError, UnsupportedFormulaError
from roughconcepts.generate import random_polarity
from roughconcepts.lattice import Polarity, concept_from_extent
from roughconcepts.relations import incidence_relation
from roughconcepts.tmodel import (
    MODES,
    ClassicalTModel,
    ConceptualTModel,
    chain_model,
    lift_t_model,
    similarity,
    similarity_matrix,
    sorites_search,
    step_lemma_check,
    t_extent,
)


def test_incidence_relations_collapse_modes():
    for seed in range(10):
        P = random_polarity(3, 3, seed)
        c = concept_from_extent(P, 0b001)
        M = ConceptualTModel(P, {"p": incidence_relation(P)}, {"p": c})
        ext = {t_extent(M, "p | (p & p)", m).extent for m in MODES}
        assert len(ext) == 1
        assert step_lemma_check(M, "p")


def test_delta_similarity_lifts_to_delta():
    C = ClassicalTModel("abc", {"p": np.eye(3, dtype=bool)}, {"p": ["a"]})
    M = lift_t_model(C)
    assert np.array_equal(M.relation("p").matrix, ~np.eye(3, dtype=bool))
    assert np.array_equal(similarity_matrix(M, "p", "objects"), np.eye(3, dtype=bool))


def test_neighbour_similarity():
    C = chain_model("abc", "a")
    M = lift_t_model(C)
    assert similarity(M, "p", "objects", 0, 1)
    assert not similarity(M, "p", "objects", 0, 2)
    for u in range(3):
        assert similarity(M, "p", "features", u, u)


def test_sorites_on_chain():
    M = lift_t_model(chain_model("abcd", "ab"))
    assert sorites_search(M, "p", 4) == [0, 1, 2, 3]
    assert sorites_search(M, "p", 3) is None
    with pytest.raises(ValueError):
        sorites_search(M, "p", 1)


def test_sorites_with_equivalence_similarity():
    sim = np.array([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]], dtype=bool)
    M = lift_t_model(ClassicalTModel("abcd", {"p": sim}, {"p": ["a", "b"]}))
    assert sorites_search(M, "p", 4) is None


def test_sorites_empty_valuation():
    M = lift_t_model(chain_model("abcd", []))
    assert sorites_search(M, "p", 4) is None


def test_literal_feature_step_can_fail():
    from roughconcepts.generate import random_t_model

    fails = sum(not step_lemma_check(random_t_model(s), "p", feature_form="literal") for s in range(300))
    assert fails > 0


def test_errors():
    M = lift_t_model(chain_model("ab", "a"))
    with pytest.raises(UnboundAtomError):
        t_extent(M, "q", "strict")
    with pytest.raises(UnsupportedFormulaError):
        t_extent(M, "box p", "strict")
    with pytest.raises(InvalidModelError):
        ClassicalTModel("ab", {"p": [[1, 1], [0, 1]]}, {})
    P = Polarity("ab", "xy", [[1, 0], [0, 1]])
    with pytest.raises(InvalidModelError):
        ConceptualTModel(P, {"p": [[1, 1], [0, 1]]}, {})
