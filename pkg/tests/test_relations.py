import numpy as np
import pytest

from roughconcepts.errors import (
    CarrierMismatchError,
    IncompatibleRelationError,
    MissingRelationError,
    UnsupportedSortError,
)
from roughconcepts.generate import random_enriched_context, random_polarity, random_relation
from roughconcepts.lattice import Polarity, enumerate_concepts
from roughconcepts.lifting import KripkeFrame, lift_kripke, lift_set, lift_typed_relation
from roughconcepts.relations import (
    EnrichedContext,
    Sort,
    TypedRelation,
    adjoint_relation,
    classify_context,
    compose_rel,
    converse_rel,
    incidence_relation,
    is_i_compatible,
    modal_op,
    rel_apply,
    rel_property,
)

EX1_R = [[0, 1, 1], [1, 0, 0], [0, 0, 0]]


@pytest.fixture
def ex1():
    return Polarity("abc", "xyz", [[0, 1, 1], [0, 0, 0], [0, 0, 0]])


def test_rel_apply_on_ex1(ex1):
    R = TypedRelation(Sort.AX, EX1_R)
    assert ex1.object_names(rel_apply(ex1, R, "r0", ex1.feature_mask("x"))) == ["b"]
    assert ex1.feature_names(rel_apply(ex1, R, "r1", ex1.object_mask("a"))) == ["y", "z"]
    empty = TypedRelation(Sort.AX, np.zeros((3, 3), dtype=bool))
    assert rel_apply(ex1, empty, "r0", 0b001) == 0
    assert rel_apply(ex1, empty, "r0", 0) == 0b111


def test_compatibility(ex1):
    assert not is_i_compatible(ex1, TypedRelation(Sort.AX, EX1_R))
    assert is_i_compatible(ex1, incidence_relation(ex1))
    for sort, shape in [(Sort.AX, (3, 3)), (Sort.XA, (3, 3)), (Sort.AA, (3, 3)), (Sort.XX, (3, 3))]:
        assert is_i_compatible(ex1, TypedRelation(sort, np.zeros(shape, dtype=bool)))


def test_shape_is_checked(ex1):
    with pytest.raises(CarrierMismatchError):
        is_i_compatible(ex1, TypedRelation(Sort.AX, np.zeros((2, 3), dtype=bool)))


def test_adjoint_relation(ex1):
    R = TypedRelation(Sort.AX, EX1_R)
    A = adjoint_relation(R)
    assert A.sort == Sort.XA
    for B in range(8):
        assert A.r0(B) == R.r1(B)
    assert adjoint_relation(A) == R
    with pytest.raises(UnsupportedSortError):
        adjoint_relation(TypedRelation(Sort.AA, np.eye(3, dtype=bool)))


def test_box_identity_on_ex1(ex1):
    F = EnrichedContext.permissive(ex1, TypedRelation(Sort.AX, EX1_R), converse_rel(incidence_relation(ex1)))
    assert F.incompatible == ("rbox",)
    for c in F.lattice:
        assert modal_op(F, "box", c) == c
    with pytest.raises(IncompatibleRelationError):
        EnrichedContext(ex1, TypedRelation(Sort.AX, EX1_R), converse_rel(incidence_relation(ex1)))


def test_missing_and_wrong_sorts(ex1):
    I = incidence_relation(ex1)
    F = EnrichedContext(ex1, I, converse_rel(I))
    with pytest.raises(MissingRelationError):
        modal_op(F, "rtriangle", F.lattice.top_concept)
    with pytest.raises(UnsupportedSortError):
        EnrichedContext(ex1, converse_rel(I), converse_rel(I))


def test_box_with_incidence_is_identity():
    for seed in range(20):
        P = random_polarity(3, 4, seed)
        I = incidence_relation(P)
        F = EnrichedContext(P, I, converse_rel(I))
        for c in F.lattice:
            assert modal_op(F, "box", c) == c
            assert modal_op(F, "diamond", c) == c


def test_composition(ex1):
    I = incidence_relation(ex1)
    assert compose_rel(ex1, I, I) == I
    S = "ab"
    P = lift_set(S)
    D = lift_typed_relation(S, ~np.eye(2, dtype=bool), "I")
    assert compose_rel(P, D, D) == D
    with pytest.raises(UnsupportedSortError):
        compose_rel(ex1, I, converse_rel(I))


def test_composition_associative():
    rng = np.random.default_rng(3)
    for _ in range(40):
        P = random_polarity(3, 3, rng)
        R, T, U = (random_relation(P, Sort.AX, rng, 0.4) for _ in range(3))
        assert compose_rel(P, compose_rel(P, R, T), U) == compose_rel(P, R, compose_rel(P, T, U))


def test_converse():
    S = "abc"
    R = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=bool)
    assert converse_rel(lift_typed_relation(S, R, "I")) == lift_typed_relation(S, R.T, "J")
    sym = TypedRelation(Sort.AA, R | R.T)
    assert converse_rel(sym) == sym
    assert converse_rel(converse_rel(sym)) == sym


def test_properties(ex1):
    I = incidence_relation(ex1)
    for prop in ("reflexive", "subdelta", "transitive", "dense"):
        assert rel_property(ex1, I, prop)
    assert rel_property(ex1, TypedRelation(Sort.AX, [[0, 1, 1], [0, 0, 0], [0, 0, 0]]), "reflexive")
    assert not rel_property(ex1, TypedRelation(Sort.AX, EX1_R), "reflexive")


def test_classify_lifted_s5():
    R = np.array([[1, 0, 0], [0, 1, 1], [0, 1, 1]], dtype=bool)
    flags = classify_context(lift_kripke(KripkeFrame("abc", R)))
    assert flags.reflexive and flags.symmetric and flags.transitive and flags.is_approx


def test_classify_incidence_everything():
    P = random_polarity(3, 3, 11)
    I = incidence_relation(P)
    assert all(classify_context(EnrichedContext(P, I, converse_rel(I))).as_dict().values())


def test_reflexive_implies_approx():
    from roughconcepts.generate import ContextParams

    for seed in range(100):
        F = random_enriched_context(ContextParams(reflexive=True), seed)
        flags = classify_context(F)
        assert flags.reflexive and flags.is_approx


def test_operators_are_normal():
    for seed in range(50):
        F = random_enriched_context(seed=seed)
        L = F.lattice
        for c in L:
            for d in L:
                assert modal_op(F, "box", L.meet(c, d)) == L.meet(modal_op(F, "box", c), modal_op(F, "box", d))
                assert modal_op(F, "diamond", L.join(c, d)) == L.join(
                    modal_op(F, "diamond", c), modal_op(F, "diamond", d)
                )
        assert modal_op(F, "box", L.top_concept) == L.top_concept
        assert len(enumerate_concepts(F.base)) == len(L)
