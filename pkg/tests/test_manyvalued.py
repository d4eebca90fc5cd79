from itertools import product

import numpy as np
import pytest
from oracles import mv_vectors, residuum_bruteforce

from roughconcepts.errors import IncompatibleRelationError, NotHeytingError
from roughconcepts.manyvalued import (
    SHIPPED_ALGEBRAS,
    AEnrichedContext,
    AKripkeFrame,
    APolarity,
    HeytingAlgebra,
    boolean2,
    boolean4,
    goedel_chain,
    mv_compatible_by_closure,
    mv_enumerate_concepts,
    mv_is_i_compatible,
    mv_lift,
    mv_lift_kripke,
    mv_lift_set,
    mv_r0,
    mv_r1,
    mv_reflex_correspondence,
    mv_rel_apply,
    subsethood,
)

G3 = goedel_chain(3)


def test_chain_names_and_goedel_implication():
    assert G3.names == ("0", "1/2", "1")
    for a, b in product(range(3), repeat=2):
        assert G3.imp[a, b] == (2 if a <= b else b)


def test_residuum_matches_bruteforce():
    for make in SHIPPED_ALGEBRAS.values():
        H = make()
        for a, b in product(range(H.n), repeat=2):
            assert H.imp[a, b] == residuum_bruteforce(H.order, H.meet, a, b)


def test_heyting_identity():
    for make in SHIPPED_ALGEBRAS.values():
        H = make()
        for a in range(H.n):
            assert H.meet_all([H.imp[H.imp[a, b], b] for b in range(H.n)]) == a


def test_boolean4_implication_is_material():
    H = boolean4()
    for a, b in product(range(4), repeat=2):
        assert H.imp[a, b] == H.join[H.neg(a), b]


def test_top_implies_bottom_is_bottom():
    for make in SHIPPED_ALGEBRAS.values():
        H = make()
        assert H.imp[H.top, H.bottom] == H.bottom


def test_non_heyting_rejected():
    pentagon = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    with pytest.raises(NotHeytingError):
        HeytingAlgebra.from_order("0abc1", pentagon)


def test_rel_apply_bottom_input_gives_top():
    rng = np.random.default_rng(0)
    R = rng.integers(0, 3, size=(3, 4))
    assert (mv_rel_apply(G3, R, "r0", np.zeros(4, int)) == G3.top).all()
    assert (mv_rel_apply(G3, R, "r1", np.zeros(3, int)) == G3.top).all()
    with pytest.raises(ValueError):
        mv_rel_apply(G3, R, "r2", np.zeros(4, int))


def test_adjunction():
    rng = np.random.default_rng(1)
    for H in (G3, boolean4(), goedel_chain(4)):
        for _ in range(200):
            R = rng.integers(0, H.n, size=(3, 4))
            f = rng.integers(0, H.n, size=3)
            u = rng.integers(0, H.n, size=4)
            assert subsethood(H, f, mv_r0(H, R, u)) == subsethood(H, u, mv_r1(H, R, f))


def test_incidence_is_compatible():
    rng = np.random.default_rng(2)
    for _ in range(50):
        I = rng.integers(0, 3, size=(3, 3))
        P = APolarity(G3, "abc", "xyz", I)
        assert mv_is_i_compatible(P, I, "AX")
        assert mv_is_i_compatible(P, I.T, "XA")


def test_compatibility_clauses_agree():
    rng = np.random.default_rng(3)
    for _ in range(300):
        P = APolarity(G3, "ab", "xy", rng.integers(0, 3, size=(2, 2)))
        R = rng.integers(0, 3, size=(2, 2))
        assert mv_is_i_compatible(P, R, "AX") == mv_compatible_by_closure(P, R, "AX")


def test_concept_counts():
    assert len(mv_enumerate_concepts(mv_lift_set(G3, ["w"]))) == 3
    assert len(mv_enumerate_concepts(mv_lift_set(G3, "vw"))) == 9
    empty = APolarity(G3, "ab", [], np.zeros((2, 0), int))
    assert len(mv_enumerate_concepts(empty)) == 1


def test_lift_set_every_vector_stable():
    P = mv_lift_set(G3, "vw")
    assert P.n_features == 6
    for f in mv_vectors(3, 2):
        assert np.array_equal(P.down(P.up(np.array(f))), f)


def test_lift_relations():
    bottom = AKripkeFrame(G3, "vw", np.zeros((2, 2), int))
    assert (mv_lift_kripke(bottom).rbox == G3.top).all()
    D = np.eye(2, dtype=int) * 2
    F = mv_lift(G3, "kripke", "vw", D)
    assert np.array_equal(F.rbox, F.base.incidence)
    with pytest.raises(ValueError):
        mv_lift(G3, "kripke", "vw")


def test_reflexivity_correspondence_examples():
    rng = np.random.default_rng(4)
    I = rng.integers(1, 3, size=(2, 2))
    P = APolarity(G3, "ab", "xy", I)
    r = mv_reflex_correspondence(AEnrichedContext(P, I, I.T))
    assert (r.axiom_valid, r.pointwise_cond, r.generators) == (True, True, True)
    # one entry strictly above I
    P = APolarity(G3, "ab", "xy", [[1, 2], [2, 2]])
    R = np.array([[2, 2], [2, 2]])
    F = AEnrichedContext(P, R, P.incidence.T, permissive=True)
    r = mv_reflex_correspondence(F)
    assert not r.pointwise_cond and not r.axiom_valid


def test_incompatible_context_rejected():
    P = APolarity(G3, "ab", "xy", [[0, 0], [0, 0]])
    bad = None
    for code in product(range(3), repeat=4):
        R = np.reshape(code, (2, 2))
        if not mv_is_i_compatible(P, R, "AX"):
            bad = R
            break
    assert bad is not None
    with pytest.raises(IncompatibleRelationError):
        AEnrichedContext(P, bad, P.incidence.T)


def test_boolean2_enumeration_matches_crisp_count():
    from roughconcepts.generate import all_polarities
    from roughconcepts.lattice import enumerate_concepts

    B = boolean2()
    for P in all_polarities(2, 3):
        Q = APolarity(B, P.objects, P.features, P.incidence.astype(int))
        assert len(mv_enumerate_concepts(Q)) == len(enumerate_concepts(P))
