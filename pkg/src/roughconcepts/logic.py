"""Models, validity, correspondence checks, algebra classes and representation constructions."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import product
from typing import Literal

import numpy as np

from . import bits
from .errors import (
    MembershipError,
    MissingRelationError,
    NotNormalError,
    SearchSpaceExceeded,
    UnboundAtomError,
    UnsupportedFormulaError,
)
from .formula import (
    And,
    Atom,
    BlackBox,
    BlackDia,
    Bot,
    Box,
    Dia,
    Formula,
    LTri,
    Or,
    RTri,
    Top,
    atoms,
    parse_formula,
    parse_sequent,
)
from .lattice import (
    ConceptLattice,
    FormalConcept,
    Polarity,
    concept_from_extent,
    concept_from_intent,
    enumerate_concepts,
)
from .posets import FiniteLattice
from .relations import (
    EnrichedContext,
    Sort,
    TypedRelation,
    compose_rel,
    included,
    modal_op,
)

Valuation = Mapping[str, FormalConcept]

_OPS = {Box: "box", Dia: "diamond", BlackBox: "blackbox", BlackDia: "blackdiamond", RTri: "rtriangle", LTri: "ltriangle"}


@dataclass
class Model:
    """An enriched context together with a valuation of atoms into its concept lattice.

    Valuation entries may be concepts or lattice indices.
    """

    context: EnrichedContext
    valuation: dict = field(default_factory=dict)

    def __post_init__(self):
        L = self.context.lattice
        val = {}
        for name, c in dict(self.valuation).items():
            if isinstance(c, (int, np.integer)):
                c = L[int(c)]
            L.index(c)
            val[name] = c
        self.valuation = val

    @property
    def lattice(self) -> ConceptLattice:
        return self.context.lattice


def _as_formula(f) -> Formula:
    return parse_formula(f) if isinstance(f, str) else f


def _interpret(F: EnrichedContext, val: Mapping[str, FormalConcept], f: Formula, memo: dict) -> FormalConcept:
    hit = memo.get(f)
    if hit is not None:
        return hit
    P = F.base
    if isinstance(f, Atom):
        try:
            out = val[f.name]
        except KeyError:
            raise UnboundAtomError(f"atom {f.name!r} has no value") from None
    elif isinstance(f, Top):
        out = concept_from_extent(P, P.all_objects)
    elif isinstance(f, Bot):
        out = concept_from_intent(P, P.all_features)
    elif isinstance(f, And):
        a = _interpret(F, val, f.left, memo)
        b = _interpret(F, val, f.right, memo)
        out = concept_from_extent(P, a.extent & b.extent)
    elif isinstance(f, Or):
        a = _interpret(F, val, f.left, memo)
        b = _interpret(F, val, f.right, memo)
        out = concept_from_intent(P, a.intent & b.intent)
    elif type(f) in _OPS:
        out = modal_op(F, _OPS[type(f)], _interpret(F, val, f.arg, memo))
    else:
        raise UnsupportedFormulaError(f"cannot interpret {f!r}")
    memo[f] = out
    return out


def interpret(M: Model, f: Formula | str) -> FormalConcept:
    return _interpret(M.context, M.valuation, _as_formula(f), {})


class _Recursive:
    """Direct reading of the member/describes clauses, one element at a time."""

    def __init__(self, M: Model):
        F = M.context
        self.P = F.base
        self.val = M.valuation
        self.F = F
        self.memo: dict = {}

    def rel(self, name: str) -> np.ndarray:
        F = self.F
        if name == "box":
            return F.rbox.matrix  # a R x
        if name == "blackbox":
            return F.rblackbox.matrix
        if name == "diamond":
            return F.rdia.matrix  # x R a
        if name == "blackdiamond":
            return F.rblackdia.matrix
        return F.relation({"rtriangle": "rtri", "ltriangle": "ltri"}[name]).matrix

    def member(self, a: int, f: Formula) -> bool:
        key = ("m", a, f)
        if key not in self.memo:
            self.memo[key] = self._member(a, f)
        return self.memo[key]

    def describes(self, x: int, f: Formula) -> bool:
        key = ("d", x, f)
        if key not in self.memo:
            self.memo[key] = self._describes(x, f)
        return self.memo[key]

    def _incident(self, a: int, x: int) -> bool:
        return bool(self.P.incidence[a, x])

    def _all_features_of(self, a: int, f: Formula) -> bool:
        # every feature describing f is incident to a
        return all(self._incident(a, x) for x in range(self.P.n_features) if self.describes(x, f))

    def _all_members_of(self, x: int, f: Formula) -> bool:
        return all(self._incident(a, x) for a in range(self.P.n_objects) if self.member(a, f))

    def _member(self, a: int, f: Formula) -> bool:
        nX = self.P.n_features
        if isinstance(f, Atom):
            if f.name not in self.val:
                raise UnboundAtomError(f"atom {f.name!r} has no value")
            return bool(self.val[f.name].extent >> a & 1)
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return all(self._incident(a, x) for x in range(nX))
        if isinstance(f, And):
            return self.member(a, f.left) and self.member(a, f.right)
        if isinstance(f, (Box, BlackBox)):
            R = self.rel(_OPS[type(f)])
            return all(R[a, x] for x in range(nX) if self.describes(x, f.arg))
        if isinstance(f, RTri):
            R = self.rel("rtriangle")
            return all(R[a, b] for b in range(self.P.n_objects) if self.member(b, f.arg))
        if isinstance(f, (Or, Dia, BlackDia, LTri)):
            return self._all_features_of(a, f)
        raise UnsupportedFormulaError(f"cannot interpret {f!r}")

    def _describes(self, x: int, f: Formula) -> bool:
        nA = self.P.n_objects
        if isinstance(f, Atom):
            if f.name not in self.val:
                raise UnboundAtomError(f"atom {f.name!r} has no value")
            return bool(self.val[f.name].intent >> x & 1)
        if isinstance(f, Bot):
            return True
        if isinstance(f, Top):
            return all(self._incident(a, x) for a in range(nA))
        if isinstance(f, Or):
            return self.describes(x, f.left) and self.describes(x, f.right)
        if isinstance(f, (Dia, BlackDia)):
            R = self.rel(_OPS[type(f)])
            return all(R[x, a] for a in range(nA) if self.member(a, f.arg))
        if isinstance(f, LTri):
            R = self.rel("ltriangle")
            return all(R[x, y] for y in range(self.P.n_features) if self.describes(y, f.arg))
        if isinstance(f, (And, Box, BlackBox, RTri)):
            return self._all_members_of(x, f)
        raise UnsupportedFormulaError(f"cannot interpret {f!r}")


def satisfies(
    M: Model,
    elem: int,
    side: Literal["member", "describes"],
    f: Formula | str,
    method: Literal["extent", "recursive"] = "extent",
) -> bool:
    """Whether object ``elem`` is a member of ``f`` (or feature ``elem`` describes it).

    ``method="recursive"`` evaluates the element-wise clauses instead of
    reading the interpreted concept; both agree on I-compatible contexts.
    """
    f = _as_formula(f)
    P = M.context.base
    n = P.n_objects if side == "member" else P.n_features
    if not 0 <= elem < n:
        raise MembershipError(f"element {elem} is outside the carrier of size {n}")
    if method == "recursive":
        r = _Recursive(M)
        return r.member(elem, f) if side == "member" else r.describes(elem, f)
    c = interpret(M, f)
    if side == "member":
        return bool(c.extent >> elem & 1)
    if side == "describes":
        return bool(c.intent >> elem & 1)
    raise ValueError(f"unknown side {side!r}")


def sequent_holds(M: Model, f: Formula | str, g: Formula | str) -> bool:
    memo: dict = {}
    a = _interpret(M.context, M.valuation, _as_formula(f), memo)
    b = _interpret(M.context, M.valuation, _as_formula(g), memo)
    return bits.is_subset(a.extent, b.extent)


@dataclass
class ValidityResult:
    valid: bool
    checked: int
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.valid


def frame_valid_report(
    F: EnrichedContext, f: Formula | str, g: Formula | str | None = None, guard: int = 10**6
) -> ValidityResult:
    """Check ``f |- g`` under every valuation of its atoms into the concept lattice.

    With ``g`` omitted, ``f`` is parsed as a sequent.
    """
    if g is None:
        f, g = parse_sequent(f) if isinstance(f, str) else f
    f, g = _as_formula(f), _as_formula(g)
    names = sorted(atoms(f) | atoms(g))
    L = F.lattice
    total = len(L) ** len(names)
    if total > guard:
        raise SearchSpaceExceeded(f"{total} valuations exceed the guard of {guard}")
    checked = 0
    for choice in product(L.concepts, repeat=len(names)):
        val = dict(zip(names, choice))
        memo: dict = {}
        a = _interpret(F, val, f, memo)
        b = _interpret(F, val, g, memo)
        checked += 1
        if not bits.is_subset(a.extent, b.extent):
            return ValidityResult(False, checked, {n: L.index(c) for n, c in val.items()})
    return ValidityResult(True, checked)


def frame_valid(F: EnrichedContext, f: Formula | str, g: Formula | str | None = None, guard: int = 10**6) -> bool:
    return frame_valid_report(F, f, g, guard).valid


# Correspondence items: sequent and first-order condition on the context.


def _box_bbox(F):
    return compose_rel(F.base, F.rbox, F.rblackbox)


def _rtri_diag_rows(F) -> list[int]:
    T = F.relation("rtri").matrix
    return [a for a in range(F.base.n_objects) if T[a, a]]


CORRESPONDENCE: dict[str, tuple[str, str, callable]] = {
    "1": ("box p |- dia p", "R□ ; R■ ⊆ I", lambda F: included(_box_bbox(F), F.incidence)),
    "2": ("box p |- p", "R□ ⊆ I", lambda F: included(F.rbox, F.incidence)),
    "3": ("p |- dia p", "R■ ⊆ I", lambda F: included(F.rblackbox, F.incidence)),
    "4": ("box p |- box box p", "R□ ⊆ R□ ; R□", lambda F: included(F.rbox, compose_rel(F.base, F.rbox, F.rbox))),
    "5": ("dia dia p |- dia p", "R◇ ⊆ R◇ ; R◇", lambda F: included(F.rdia, compose_rel(F.base, F.rdia, F.rdia))),
    "6": ("p |- box dia p", "R◇ ⊆ R◆", lambda F: included(F.rdia, F.rblackdia)),
    "7": ("dia box p |- p", "R◆ ⊆ R◇", lambda F: included(F.rblackdia, F.rdia)),
    "8": ("p |- box p", "I ⊆ R□", lambda F: included(F.incidence, F.rbox)),
    "9": ("dia p |- p", "I ⊆ R■", lambda F: included(F.incidence, F.rblackbox)),
    "10": ("box box p |- box p", "R□ ; R□ ⊆ R□", lambda F: included(compose_rel(F.base, F.rbox, F.rbox), F.rbox)),
    "11": ("dia p |- dia dia p", "R◇ ; R◇ ⊆ R◇", lambda F: included(compose_rel(F.base, F.rdia, F.rdia), F.rdia)),
    "12": ("dia p |- box p", "I ⊆ R■ ; R□", lambda F: included(F.incidence, compose_rel(F.base, F.rblackbox, F.rbox))),
    "T1": ("p |- rt rt p", "R▷ = R▶", lambda F: bool(np.array_equal(F.relation("rtri").matrix, F.relation("rtri").matrix.T))),
    "T2": ("T |- rt T", "R▷ = A × A", lambda F: bool(F.relation("rtri").matrix.all())),
    "T3": (
        "p & rt p |- F",
        "a R▷ a ⇒ a ∈ X↓",
        lambda F: all(F.base.down(F.base.all_features) >> a & 1 for a in _rtri_diag_rows(F)),
    ),
    "T4": (
        "T |- rt (p & rt p)",
        "a R▷ a ⇒ A ⊆ R▷⁽⁰⁾[a]",
        lambda F: all(F.relation("rtri").matrix[:, a].all() for a in _rtri_diag_rows(F)),
    ),
}

CORRESPONDENCE_ITEMS = tuple(CORRESPONDENCE)


@dataclass(frozen=True)
class CorrespondenceResult:
    item: str
    sequent: str
    condition: str
    axiom_valid: bool
    fo_condition: bool

    @property
    def agree(self) -> bool:
        return self.axiom_valid == self.fo_condition


def correspondence_check(F: EnrichedContext, item: int | str) -> CorrespondenceResult:
    key = str(item).upper()
    if key not in CORRESPONDENCE:
        raise ValueError(f"unknown correspondence item {item!r}")
    text, cond, fo = CORRESPONDENCE[key]
    if key.startswith("T") and F.rtri is None:
        raise MissingRelationError(f"item {key} needs an rtri relation")
    return CorrespondenceResult(key, text, cond, frame_valid(F, text), bool(fo(F)))


def sahlqvist_consequences(F: EnrichedContext) -> dict[int, bool]:
    """Whether each implication between frame conditions holds on ``F``.

    1. R□ ⊆ I and R■ ⊆ I imply R□ ; R■ ⊆ I
    2. I ⊆ R□ and I ⊆ R■ imply I ⊆ R■ ; R□
    3. I ⊆ R□ implies R□ ⊆ R□ ; R□
    4. I ⊆ R■ implies R◇ ⊆ R◇ ; R◇
    5. R□ ⊆ I implies R□ ; R□ ⊆ R□
    6. R■ ⊆ I implies R◇ ; R◇ ⊆ R◇
    """
    c = {k: CORRESPONDENCE[k][2](F) for k in ("1", "2", "3", "4", "5", "8", "9", "10", "11", "12")}
    return {
        1: not (c["2"] and c["3"]) or c["1"],
        2: not (c["8"] and c["9"]) or c["12"],
        3: not c["8"] or c["4"],
        4: not c["9"] or c["5"],
        5: not c["2"] or c["10"],
        6: not c["3"] or c["11"],
    }


# Complex algebras as index tables.


@dataclass(frozen=True)
class ModalAlgebra:
    """A finite lattice with unary ``box`` and ``dia`` given as index tables."""

    lattice: FiniteLattice
    box: tuple[int, ...]
    dia: tuple[int, ...]

    def check_normal(self) -> None:
        if len(self.box) != self.lattice.n or len(self.dia) != self.lattice.n:
            raise NotNormalError("operator tables must have one entry per element")
        if not self.lattice.is_meet_preserving(self.box):
            raise NotNormalError("box table does not preserve finite meets")
        if not self.lattice.is_join_preserving(self.dia):
            raise NotNormalError("diamond table does not preserve finite joins")


def complex_algebra(F: EnrichedContext) -> ModalAlgebra:
    """``F+`` with concepts numbered as in ``F.lattice``."""
    L = F.lattice
    box = tuple(L.index(modal_op(F, "box", c)) for c in L)
    dia = tuple(L.index(modal_op(F, "diamond", c)) for c in L)
    return ModalAlgebra(FiniteLattice(L.order), box, dia)


@dataclass
class ClassCheck:
    holds: bool
    failed: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


# One-variable inequalities: name -> (lhs, rhs) as functions of (algebra, a).
_ONE_VAR = {
    "□a ≤ ◇a": (lambda A, a: A.box[a], lambda A, a: A.dia[a]),
    "◇a ≤ □a": (lambda A, a: A.dia[a], lambda A, a: A.box[a]),
    "□a ≤ a": (lambda A, a: A.box[a], lambda A, a: a),
    "a ≤ ◇a": (lambda A, a: a, lambda A, a: A.dia[a]),
    "□a ≤ □□a": (lambda A, a: A.box[a], lambda A, a: A.box[A.box[a]]),
    "◇◇a ≤ ◇a": (lambda A, a: A.dia[A.dia[a]], lambda A, a: A.dia[a]),
    "a ≤ □◇a": (lambda A, a: a, lambda A, a: A.box[A.dia[a]]),
    "◇□a ≤ a": (lambda A, a: A.dia[A.box[a]], lambda A, a: a),
    "a ≤ □a": (lambda A, a: a, lambda A, a: A.box[a]),
    "◇a ≤ a": (lambda A, a: A.dia[a], lambda A, a: a),
    "□□a ≤ □a": (lambda A, a: A.box[A.box[a]], lambda A, a: A.box[a]),
    "◇a ≤ ◇◇a": (lambda A, a: A.dia[a], lambda A, a: A.dia[A.dia[a]]),
    "◇□a ≤ □a": (lambda A, a: A.dia[A.box[a]], lambda A, a: A.box[a]),
    "◇a ≤ □◇a": (lambda A, a: A.dia[a], lambda A, a: A.box[A.dia[a]]),
}

_BASE_CLASSES = {
    "rough-basic": ["□a ≤ ◇a"],
    "co-rough-basic": ["◇a ≤ □a"],
    "reflexive": ["□a ≤ a", "a ≤ ◇a"],
    "transitive": ["□a ≤ □□a", "◇◇a ≤ ◇a"],
    "symmetric": ["a ≤ □◇a", "◇□a ≤ a"],
    "sub-delta": ["a ≤ □a", "◇a ≤ a"],
    "dense": ["□□a ≤ □a", "◇a ≤ ◇◇a"],
    "5": ["◇□a ≤ □a", "◇a ≤ □◇a"],
}

_COMPOSITE = {
    "tqBa": ["rough-basic", "reflexive", "transitive"],
    "co-tqBa": ["co-rough-basic", "sub-delta", "dense"],
    "tqBa5": ["tqBa", "5"],
    "co-tqBa5": ["co-tqBa", "5"],
    "IA2": ["tqBa5", "IA2-laws"],
    "co-IA2": ["co-tqBa5", "IA2-laws"],
    "IA3": ["tqBa5", "IA3-law"],
    "co-IA3": ["co-tqBa5", "IA3-law"],
    "prerough": ["tqBa5", "IA2-laws", "IA3-law"],
    "co-prerough": ["co-tqBa5", "IA2-laws", "IA3-law"],
}

ALGEBRA_CLASSES = tuple(k for k in _BASE_CLASSES if k != "5") + tuple(_COMPOSITE)


def _check(A: ModalAlgebra, name: str) -> ClassCheck:
    leq = A.lattice.order
    n = A.lattice.n
    if name in _BASE_CLASSES:
        for law in _BASE_CLASSES[name]:
            lhs, rhs = _ONE_VAR[law]
            for a in range(n):
                if not leq[lhs(A, a), rhs(A, a)]:
                    return ClassCheck(False, law, (a,))
        return ClassCheck(True)
    if name == "IA2-laws":
        m, j = A.lattice.meet_table, A.lattice.join_table
        for a in range(n):
            for b in range(n):
                if not leq[A.box[j[a, b]], j[A.box[a], A.box[b]]]:
                    return ClassCheck(False, "□(a∨b) ≤ □a ∨ □b", (a, b))
                if not leq[m[A.dia[a], A.dia[b]], A.dia[m[a, b]]]:
                    return ClassCheck(False, "◇a ∧ ◇b ≤ ◇(a∧b)", (a, b))
        return ClassCheck(True)
    if name == "IA3-law":
        for a in range(n):
            for b in range(n):
                if leq[A.box[a], A.box[b]] and leq[A.dia[a], A.dia[b]] and not leq[a, b]:
                    return ClassCheck(False, "□a ≤ □b and ◇a ≤ ◇b imply a ≤ b", (a, b))
        return ClassCheck(True)
    if name in _COMPOSITE:
        for part in _COMPOSITE[name]:
            r = _check(A, part)
            if not r:
                return r
        return ClassCheck(True)
    raise ValueError(f"unknown algebra class {name!r}")


def algebra_class_check(F: EnrichedContext | ModalAlgebra, cls: str, max_size: int = 4096) -> ClassCheck:
    """Evaluate the defining inequalities of ``cls`` on ``F+`` (or on a given algebra).

    ``witness`` holds the lattice indices of a failing instance.
    """
    if cls not in ALGEBRA_CLASSES:
        raise ValueError(f"unknown algebra class {cls!r}")
    A = F if isinstance(F, ModalAlgebra) else None
    if A is None:
        if len(F.lattice) > max_size:
            raise SearchSpaceExceeded(f"lattice has {len(F.lattice)} elements, guard is {max_size}")
        A = complex_algebra(F)
    return _check(A, cls)


# Representation constructions.


@dataclass
class LatticeRepresentation:
    polarity: Polarity
    lattice: ConceptLattice
    iso: tuple[int, ...]  # element -> concept index
    verified: bool


def _canonical_polarity(L: FiniteLattice) -> Polarity:
    names = tuple(range(L.n))
    return Polarity(names, names, L.order)


def _principal_concepts(P: Polarity, L: FiniteLattice) -> list[FormalConcept]:
    # l -> (down-set of l, up-set of l)
    return [
        FormalConcept(bits.from_bools(L.order[:, l]), bits.from_bools(L.order[l, :])) for l in range(L.n)
    ]


def _order_iso(L: FiniteLattice, CL: ConceptLattice, images: list[FormalConcept]) -> tuple[int, ...] | None:
    if any(c not in CL for c in images):
        return None
    iso = tuple(CL.index(c) for c in images)
    if len(set(iso)) != len(CL) or len(iso) != len(CL):
        return None
    idx = np.array(iso)
    if not np.array_equal(CL.order[np.ix_(idx, idx)], L.order):
        return None
    return iso


def context_from_lattice(order) -> LatticeRepresentation:
    """The polarity ``(L, L, <=)`` and its concept lattice, isomorphic to ``L``."""
    L = order if isinstance(order, FiniteLattice) else FiniteLattice(order)
    P = _canonical_polarity(L)
    CL = enumerate_concepts(P)
    iso = _order_iso(L, CL, _principal_concepts(P, L))
    return LatticeRepresentation(P, CL, iso or (), iso is not None)


@dataclass
class ModalRepresentation:
    context: EnrichedContext
    iso: tuple[int, ...]
    verified: bool


def context_from_modal_algebra(order, box_table, dia_table) -> ModalRepresentation:
    """Enriched context with ``a R□ x`` iff ``a <= □x`` and ``x R◇ a`` iff ``◇a <= x``.

    The returned iso is checked to commute with both operators.
    """
    L = order if isinstance(order, FiniteLattice) else FiniteLattice(order)
    A = ModalAlgebra(L, tuple(int(v) for v in box_table), tuple(int(v) for v in dia_table))
    A.check_normal()
    P = _canonical_polarity(L)
    leq = L.order
    rbox = np.array([[leq[a, A.box[x]] for x in range(L.n)] for a in range(L.n)])
    rdia = np.array([[leq[A.dia[a], x] for a in range(L.n)] for x in range(L.n)])
    F = EnrichedContext(P, TypedRelation(Sort.AX, rbox), TypedRelation(Sort.XA, rdia))
    CL = F.lattice
    iso = _order_iso(L, CL, _principal_concepts(P, L))
    ok = iso is not None
    if ok:
        for l in range(L.n):
            c = CL[iso[l]]
            if CL.index(modal_op(F, "box", c)) != iso[A.box[l]] or CL.index(modal_op(F, "diamond", c)) != iso[A.dia[l]]:
                ok = False
                break
    return ModalRepresentation(F, iso or (), ok)
