"""Typed relations over a polarity and the modal operators they induce."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Literal

import numpy as np

from . import bits
from .errors import (
    CarrierMismatchError,
    IncompatibleRelationError,
    MissingRelationError,
    UnsupportedSortError,
)
from .lattice import (
    ConceptLattice,
    FormalConcept,
    Polarity,
    as_mask,
    concept_from_extent,
    concept_from_intent,
    enumerate_concepts,
)


class Sort(str, Enum):
    AX = "AX"
    XA = "XA"
    AA = "AA"
    XX = "XX"

    @property
    def row_side(self) -> str:
        return self.value[0]

    @property
    def col_side(self) -> str:
        return self.value[1]

    @property
    def flipped(self) -> Sort:
        return Sort(self.value[::-1])


def _size(P: Polarity, side: str) -> int:
    return P.n_objects if side == "A" else P.n_features


def _stable(P: Polarity, side: str, mask: int) -> bool:
    if side == "A":
        return P.down(P.up(mask)) == mask
    return P.up(P.down(mask)) == mask


class TypedRelation:
    """A boolean matrix whose rows and columns are indexed by carriers named in ``sort``.

    ``R^(0)[V]`` collects rows related to every column in ``V``;
    ``R^(1)[U]`` collects columns related to every row in ``U``.
    """

    def __init__(self, sort: Sort | str, matrix):
        self.sort = Sort(sort)
        mat = np.array(matrix, dtype=bool)
        if mat.ndim != 2:
            if mat.size != 0:
                raise CarrierMismatchError("relation matrix must be two-dimensional")
            mat = mat.reshape(0, 0)
        mat.setflags(write=False)
        self.matrix = mat
        self.rows = bits.row_masks(mat)
        self.cols = bits.col_masks(mat)
        self.n_rows, self.n_cols = mat.shape

    def check(self, P: Polarity) -> None:
        expected = (_size(P, self.sort.row_side), _size(P, self.sort.col_side))
        if self.matrix.shape != expected:
            raise CarrierMismatchError(
                f"{self.sort.value} relation has shape {self.matrix.shape}, expected {expected}"
            )

    def r0(self, cols: int) -> int:
        out = bits.full(self.n_rows)
        for v in bits.iter_bits(cols):
            out &= self.cols[v]
        return out

    def r1(self, rows: int) -> int:
        out = bits.full(self.n_cols)
        for u in bits.iter_bits(rows):
            out &= self.rows[u]
        return out

    def __le__(self, other: TypedRelation) -> bool:
        return included(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TypedRelation)
            and self.sort == other.sort
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self) -> int:
        return hash((self.sort, self.matrix.shape, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"TypedRelation({self.sort.value}, {int(self.matrix.sum())} pairs)"

    @classmethod
    def from_columns(cls, sort: Sort | str, n_rows: int, cols: list[int]) -> TypedRelation:
        mat = np.zeros((n_rows, len(cols)), dtype=bool)
        for j, c in enumerate(cols):
            for i in bits.iter_bits(c):
                mat[i, j] = True
        return cls(sort, mat)


def incidence_relation(P: Polarity) -> TypedRelation:
    """The incidence ``I`` itself, viewed as a relation of sort AX."""
    return TypedRelation(Sort.AX, P.incidence)


def included(R: TypedRelation, T: TypedRelation) -> bool:
    """Pointwise inclusion of two relations of the same sort."""
    if R.sort != T.sort or R.matrix.shape != T.matrix.shape:
        raise UnsupportedSortError(f"cannot compare {R.sort.value} with {T.sort.value}")
    return not bool(np.any(R.matrix & ~T.matrix))


def rel_apply(P: Polarity, R: TypedRelation, direction: Literal["r0", "r1"], s) -> int:
    R.check(P)
    if direction == "r0":
        side = R.sort.col_side
        return R.r0(as_mask(s, _size(P, side), "objects" if side == "A" else "features"))
    if direction == "r1":
        side = R.sort.row_side
        return R.r1(as_mask(s, _size(P, side), "objects" if side == "A" else "features"))
    raise ValueError(f"unknown direction {direction!r}")


def is_i_compatible(P: Polarity, R: TypedRelation) -> bool:
    """Every singleton section of ``R`` is Galois-stable on its carrier."""
    R.check(P)
    rs, cs = R.sort.row_side, R.sort.col_side
    for v in range(R.n_cols):
        if not _stable(P, rs, R.r0(1 << v)):
            return False
    for u in range(R.n_rows):
        if not _stable(P, cs, R.r1(1 << u)):
            return False
    return True


def converse_rel(R: TypedRelation) -> TypedRelation:
    return TypedRelation(R.sort.flipped, R.matrix.T)


def adjoint_relation(R: TypedRelation) -> TypedRelation:
    """``R_box`` to ``R_blackdiamond`` and ``R_diamond`` to ``R_blackbox`` (and back)."""
    if R.sort not in (Sort.AX, Sort.XA):
        raise UnsupportedSortError(f"no adjoint relation for sort {R.sort.value}")
    return converse_rel(R)


def compose_rel(P: Polarity, R: TypedRelation, T: TypedRelation) -> TypedRelation:
    """I-composition ``R ; T``."""
    if R.sort != T.sort:
        raise UnsupportedSortError(f"cannot compose {R.sort.value} with {T.sort.value}")
    R.check(P)
    T.check(P)
    if R.sort == Sort.AX:
        cols = [R.r0(P.up(T.r0(1 << x))) for x in range(P.n_features)]
        return TypedRelation.from_columns(Sort.AX, P.n_objects, cols)
    if R.sort == Sort.XA:
        cols = [R.r0(P.down(T.r0(1 << a))) for a in range(P.n_objects)]
        return TypedRelation.from_columns(Sort.XA, P.n_features, cols)
    raise UnsupportedSortError(f"I-composition is not defined for sort {R.sort.value}")


def rel_property(P: Polarity, R: TypedRelation, prop: str) -> bool:
    I = incidence_relation(P)
    if R.sort == Sort.AX:
        if prop == "reflexive":
            return included(R, I)
        if prop == "subdelta":
            return included(I, R)
    elif R.sort == Sort.XA:
        if prop == "reflexive":
            return included(converse_rel(R), I)
        if prop == "subdelta":
            return included(I, converse_rel(R))
    else:
        raise UnsupportedSortError(f"relation properties are not defined for sort {R.sort.value}")
    if prop == "transitive":
        return included(R, compose_rel(P, R, R))
    if prop == "dense":
        return included(compose_rel(P, R, R), R)
    raise ValueError(f"unknown property {prop!r}")


class EnrichedContext:
    """A polarity with ``R_box`` (AX), ``R_diamond`` (XA) and optional ``R_rtri`` (AA), ``R_ltri`` (XX).

    Construction rejects relations that are not I-compatible unless
    ``permissive`` is set; ``verified`` records whether every relation passed.
    """

    def __init__(
        self,
        base: Polarity,
        rbox: TypedRelation,
        rdia: TypedRelation,
        rtri: TypedRelation | None = None,
        ltri: TypedRelation | None = None,
        permissive: bool = False,
    ):
        expected = {"rbox": Sort.AX, "rdia": Sort.XA, "rtri": Sort.AA, "ltri": Sort.XX}
        self.base = base
        self.rbox, self.rdia, self.rtri, self.ltri = rbox, rdia, rtri, ltri
        bad = []
        for name, sort in expected.items():
            rel = getattr(self, name)
            if rel is None:
                continue
            if rel.sort != sort:
                raise UnsupportedSortError(f"{name} must have sort {sort.value}, got {rel.sort.value}")
            rel.check(base)
            if not is_i_compatible(base, rel):
                bad.append(name)
        if bad and not permissive:
            raise IncompatibleRelationError(f"not I-compatible: {', '.join(bad)}")
        self.incompatible = tuple(bad)
        self.verified = not bad

    @classmethod
    def permissive(cls, base, rbox, rdia, rtri=None, ltri=None) -> EnrichedContext:
        return cls(base, rbox, rdia, rtri, ltri, permissive=True)

    @cached_property
    def lattice(self) -> ConceptLattice:
        return enumerate_concepts(self.base)

    @cached_property
    def rblackbox(self) -> TypedRelation:
        return adjoint_relation(self.rdia)

    @cached_property
    def rblackdia(self) -> TypedRelation:
        return adjoint_relation(self.rbox)

    @cached_property
    def incidence(self) -> TypedRelation:
        return incidence_relation(self.base)

    def relation(self, name: str) -> TypedRelation:
        rel = getattr(self, name)
        if rel is None:
            raise MissingRelationError(f"context has no {name} relation")
        return rel

    def __repr__(self) -> str:
        extra = "".join(f", {n}" for n in ("rtri", "ltri") if getattr(self, n) is not None)
        return f"EnrichedContext({self.base!r}{extra}, verified={self.verified})"


MODAL_OPS = ("box", "diamond", "blackbox", "blackdiamond", "rtriangle", "ltriangle")


def modal_op(F: EnrichedContext, op: str, c: FormalConcept) -> FormalConcept:
    P = F.base
    if op == "box":
        return concept_from_extent(P, F.rbox.r0(c.intent))
    if op == "blackbox":
        return concept_from_extent(P, F.rblackbox.r0(c.intent))
    if op == "diamond":
        return concept_from_intent(P, F.rdia.r0(c.extent))
    if op == "blackdiamond":
        return concept_from_intent(P, F.rblackdia.r0(c.extent))
    if op == "rtriangle":
        return concept_from_extent(P, F.relation("rtri").r0(c.extent))
    if op == "ltriangle":
        return concept_from_intent(P, F.relation("ltri").r0(c.intent))
    raise ValueError(f"unknown modal operator {op!r}")


@dataclass(frozen=True)
class ContextFlags:
    is_approx: bool
    is_coapprox: bool
    is_coapprox_alt: bool
    reflexive: bool
    symmetric: bool
    transitive: bool
    subdelta: bool
    dense: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def classify_context(F: EnrichedContext) -> ContextFlags:
    """Frame conditions of conceptual approximation and co-approximation spaces.

    ``is_coapprox`` tests ``I <= R_box ; R_blackbox`` and ``is_coapprox_alt``
    the reversed order ``I <= R_blackbox ; R_box``.
    """
    P = F.base
    I = F.incidence
    box, dia, bbox = F.rbox, F.rdia, F.rblackbox
    box_bbox = compose_rel(P, box, bbox)
    return ContextFlags(
        is_approx=included(box_bbox, I),
        is_coapprox=included(I, box_bbox),
        is_coapprox_alt=included(I, compose_rel(P, bbox, box)),
        reflexive=included(box, I) and included(bbox, I),
        symmetric=dia == F.rblackdia,
        transitive=included(box, compose_rel(P, box, box)) and included(dia, compose_rel(P, dia, dia)),
        subdelta=included(I, box) and included(I, bbox),
        dense=included(compose_rel(P, box, box), box) and included(compose_rel(P, dia, dia), dia),
    )
