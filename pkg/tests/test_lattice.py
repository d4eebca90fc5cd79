import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughconcepts import bits
from roughconcepts.errors import CarrierMismatchError, DuplicateIdentifierError, MembershipError
from roughconcepts.lattice import (
    FormalConcept,
    Polarity,
    closure,
    concept_bound,
    derive,
    enumerate_concepts,
    hasse_covers,
    is_stable,
)
from roughconcepts.lifting import lift_set


@pytest.fixture
def ex1():
    return Polarity("abc", "xyz", [[0, 1, 1], [0, 0, 0], [0, 0, 0]])


def test_derivations_on_ex1(ex1):
    assert ex1.feature_names(derive(ex1, "up", ex1.object_mask("a"))) == ["y", "z"]
    assert derive(ex1, "up", 0) == bits.full(3)
    assert ex1.object_names(derive(ex1, "down", ex1.feature_mask("yz"))) == ["a"]


def test_closure_and_stability(ex1):
    assert closure(ex1, "extent", ex1.object_mask("b")) == bits.full(3)
    assert not is_stable(ex1, "extent", ex1.object_mask("b"))
    assert is_stable(ex1, "extent", ex1.object_mask("a"))
    delta = Polarity("abc", "abc", np.eye(3, dtype=bool))
    assert closure(delta, "extent", 0b011) == 0b111


def test_boolean_vectors_accepted(ex1):
    assert derive(ex1, "up", [True, False, False]) == 0b110


def test_bad_inputs(ex1):
    with pytest.raises(CarrierMismatchError):
        Polarity("ab", "x", [[1, 0]])
    with pytest.raises(DuplicateIdentifierError):
        Polarity("aa", "x", [[1], [0]])
    with pytest.raises(CarrierMismatchError):
        derive(ex1, "up", 1 << 5)


def test_concept_counts(ex1):
    L = enumerate_concepts(ex1)
    named = {(tuple(ex1.object_names(c.extent)), tuple(ex1.feature_names(c.intent))) for c in L}
    assert named == {((), ("x", "y", "z")), (("a",), ("y", "z")), (("a", "b", "c"), ())}
    assert len(enumerate_concepts(lift_set("abc"))) == 8
    assert len(enumerate_concepts(Polarity("abc", "abc", np.eye(3, dtype=bool)))) == 5
    assert len(enumerate_concepts(lift_set([]))) == 1


def test_meet_join_and_membership(ex1):
    L = enumerate_concepts(ex1)
    mid = L[L.index_of_extent(0b001)]
    assert concept_bound(L, "meet", L.top_concept, mid) == mid
    assert concept_bound(L, "join", mid, mid) == mid
    with pytest.raises(MembershipError):
        L.index(FormalConcept(0b010, 0))
    P = lift_set("ab")
    Lp = enumerate_concepts(P)
    h = lambda Z: FormalConcept(Z, 0b11 & ~Z)  # noqa: E731
    assert Lp.join(h(0b01), h(0b10)) == h(0b11)


def test_hasse_covers(ex1):
    L = enumerate_concepts(ex1)
    assert len(hasse_covers(L)) == 2
    assert hasse_covers(enumerate_concepts(Polarity("a", "x", [[1]]))) == []
    assert len(hasse_covers(enumerate_concepts(lift_set("abc")))) == 12


incidences = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(st.booleans(), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@settings(max_examples=150, deadline=None)
@given(incidences, st.data())
def test_galois_laws(rows, data):
    P = Polarity(range(len(rows)), range(len(rows[0])), rows)
    B = data.draw(st.integers(0, bits.full(P.n_objects)))
    B2 = data.draw(st.integers(0, bits.full(P.n_objects)))
    Y = data.draw(st.integers(0, bits.full(P.n_features)))
    assert bits.is_subset(B, P.down(Y)) == bits.is_subset(Y, P.up(B))
    assert bits.is_subset(B, closure(P, "extent", B))
    assert P.up(B) == P.up(closure(P, "extent", B))
    assert P.up(B | B2) == P.up(B) & P.up(B2)
    if bits.is_subset(B, B2):
        assert bits.is_subset(P.up(B2), P.up(B))
    assert is_stable(P, "extent", P.down(P.up(B)))


def test_lattice_order_is_extent_inclusion(ex1):
    L = enumerate_concepts(ex1)
    for i, c in enumerate(L):
        for j, d in enumerate(L):
            assert bool(L.order[i, j]) == c.leq(d)
