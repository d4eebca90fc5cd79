"""Lifting sets, Kripke frames and approximation spaces into polarities.

A relation ``R`` on ``S`` is a square boolean matrix; composition ``R∘T``
relates ``s`` to ``u`` when ``s R t`` and ``t T u`` for some ``t``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import bits
from .errors import CarrierMismatchError, InvalidKentError
from .lattice import FormalConcept, Polarity, _check_unique
from .relations import (
    EnrichedContext,
    Sort,
    TypedRelation,
    compose_rel,
    converse_rel,
    included,
    incidence_relation,
    is_i_compatible,
    modal_op,
    rel_property,
)

Tag = Literal["I", "J", "H", "K"]
_TAG_SORT = {"I": Sort.AX, "J": Sort.XA, "H": Sort.AA, "K": Sort.XX}


def _square(R, n: int) -> np.ndarray:
    mat = np.array(R, dtype=bool)
    if mat.size == 0 and n == 0:
        mat = mat.reshape(0, 0)
    if mat.shape != (n, n):
        raise CarrierMismatchError(f"relation has shape {mat.shape}, expected {(n, n)}")
    return mat


def bool_compose(R: np.ndarray, T: np.ndarray) -> np.ndarray:
    return (R.astype(np.int64) @ T.astype(np.int64)) > 0


@dataclass(frozen=True, eq=False)
class KripkeFrame:
    states: tuple
    rel: np.ndarray

    def __init__(self, states: Sequence, rel):
        states = _check_unique(states, "state")
        mat = _square(rel, len(states))
        mat.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "rel", mat)

    @property
    def size(self) -> int:
        return len(self.states)

    def is_equivalence(self) -> bool:
        R = self.rel
        return bool(np.all(np.diag(R)) and np.array_equal(R, R.T) and not np.any(bool_compose(R, R) & ~R))


def lift_set(S: Sequence) -> Polarity:
    """``(S_A, S_X, I_{Δᶜ})``: objects and features are copies of ``S``."""
    S = _check_unique(S, "state")
    return Polarity(S, S, ~np.eye(len(S), dtype=bool))


def lift_typed_relation(S: Sequence, R, tag: Tag) -> TypedRelation:
    """``I_R`` (AX), ``J_R`` (XA), ``H_R`` (AA) or ``K_R`` (XX), each a copy of ``R``."""
    return TypedRelation(_TAG_SORT[tag], _square(R, len(S)))


def lift_kripke(X: KripkeFrame, triangles: bool = False) -> EnrichedContext:
    """``(P_S, I_{Rᶜ}, J_{Rᶜ})``; with ``triangles`` also ``H_{Rᶜ}`` and ``K_{Rᶜ}``."""
    S, Rc = X.states, ~X.rel
    extra = {}
    if triangles:
        extra = {"rtri": lift_typed_relation(S, Rc, "H"), "ltri": lift_typed_relation(S, Rc, "K")}
    return EnrichedContext(
        lift_set(S), lift_typed_relation(S, Rc, "I"), lift_typed_relation(S, Rc, "J"), **extra
    )


def kripke_modal_ops(X: KripkeFrame, op: Literal["dia", "box", "impossible", "skeptic"], Z: int) -> int:
    n = X.size
    everything = bits.full(n)
    rows = bits.row_masks(X.rel)

    def preimage(W: int) -> int:
        return bits.from_indices(s for s in range(n) if rows[s] & W)

    if op == "dia":
        return preimage(Z)
    if op == "box":
        return everything & ~preimage(everything & ~Z)
    if op == "impossible":
        return everything & ~preimage(Z)
    if op == "skeptic":
        return preimage(everything & ~Z)
    raise ValueError(f"unknown Kripke operator {op!r}")


@dataclass
class Report:
    """Outcome of an extensional verification."""

    passed: bool = True
    checked: int = 0
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def fail(self, message: str) -> None:
        if self.passed:
            self.counterexample = message
        self.passed = False

    def __bool__(self) -> bool:
        return self.passed


def h_map(X: KripkeFrame, Z: int) -> FormalConcept:
    """``P ↦ (P_A, Pᶜ_X)``."""
    return FormalConcept(Z, bits.full(X.size) & ~Z)


def verify_lifting_iso(X: KripkeFrame, complemented: bool = True) -> Report:
    """Check that ``h`` is an isomorphism of complex algebras for all four operators.

    With ``complemented=False`` the lift uses ``I_Δ`` and ``I_R`` in place of
    ``I_{Δᶜ}`` and ``I_{Rᶜ}``, which breaks the powerset isomorphism.
    """
    report = Report()
    n = X.size
    S = X.states
    if complemented:
        F = lift_kripke(X, triangles=True)
    else:
        base = Polarity(S, S, np.eye(n, dtype=bool))
        rels = [lift_typed_relation(S, X.rel, t) for t in "IJHK"]
        F = EnrichedContext.permissive(base, *rels)
    L = F.lattice
    if len(L) != 2**n:
        report.fail(f"lattice has {len(L)} concepts, powerset has {2**n}")
        return report
    images = {}
    for Z in bits.all_subsets(n):
        c = h_map(X, Z)
        if c not in L:
            report.fail(f"h({_names(S, Z)}) is not a concept")
            return report
        images[Z] = c
    for Z, c in images.items():
        for W, d in images.items():
            if (Z & ~W == 0) != c.leq(d):
                report.fail(f"order not preserved between {_names(S, Z)} and {_names(S, W)}")
                return report
    pairs = [("dia", "diamond"), ("box", "box"), ("impossible", "rtriangle"), ("skeptic", "ltriangle")]
    for Z, c in images.items():
        for kop, cop in pairs:
            report.checked += 1
            lhs = h_map(X, kripke_modal_ops(X, kop, Z))
            rhs = modal_op(F, cop, c)
            if lhs != rhs or lhs.intent != rhs.intent:
                report.fail(f"h({kop} {_names(S, Z)}) != {cop} h({_names(S, Z)})")
                return report
    return report


def _names(S: Sequence, Z: int) -> str:
    return "{" + ",".join(str(S[i]) for i in bits.iter_bits(Z)) + "}"


def classical_properties(R: np.ndarray) -> dict[str, bool]:
    n = R.shape[0]
    delta = np.eye(n, dtype=bool)
    RR = bool_compose(R, R)
    return {
        "reflexive": bool(np.all(R[delta])),
        "transitive": not np.any(RR & ~R),
        "symmetric": bool(np.array_equal(R, R.T)),
        "subdelta": not np.any(R & ~delta),
        "dense": not np.any(R & ~RR),
    }


def lifted_properties(S: Sequence, R) -> dict[str, bool]:
    n = len(S)
    Rc = ~_square(R, n)
    P = lift_set(S)
    I_Rc = lift_typed_relation(S, Rc, "I")
    J_Rc = lift_typed_relation(S, Rc, "J")
    I_Dc = incidence_relation(P)
    return {
        "reflexive": rel_property(P, I_Rc, "reflexive") and rel_property(P, J_Rc, "reflexive"),
        "transitive": rel_property(P, I_Rc, "transitive") and rel_property(P, J_Rc, "transitive"),
        "symmetric": I_Rc == converse_rel(J_Rc),
        "subdelta": included(I_Dc, I_Rc),
        "dense": included(compose_rel(P, I_Rc, I_Rc), I_Rc),
    }


def verify_property_lifting(S: Sequence, R) -> Report:
    """Each classical property of ``R`` holds iff its lifted counterpart does."""
    R = _square(R, len(S))
    report = Report()
    classical = classical_properties(R)
    lifted = lifted_properties(S, R)
    report.details = {"classical": classical, "lifted": lifted}
    for name in classical:
        report.checked += 1
        if classical[name] != lifted[name]:
            report.fail(f"{name}: classical {classical[name]}, lifted {lifted[name]}")
    return report


def verify_composition_lifting(S: Sequence, R, T) -> bool:
    """``I_{(R∘T)ᶜ} = I_{Rᶜ} ; I_{Tᶜ}`` and the same for ``J``."""
    n = len(S)
    R, T = _square(R, n), _square(T, n)
    P = lift_set(S)
    RTc = ~bool_compose(R, T)
    for tag in "IJ":
        lhs = lift_typed_relation(S, RTc, tag)
        rhs = compose_rel(P, lift_typed_relation(S, ~R, tag), lift_typed_relation(S, ~T, tag))
        if lhs != rhs:
            return False
    return True


class KentContext:
    """A polarity with an equivalence relation ``E`` on its objects."""

    def __init__(self, base: Polarity, e_rel):
        mat = e_rel.matrix if isinstance(e_rel, TypedRelation) else np.array(e_rel, dtype=bool)
        mat = _square(mat, base.n_objects)
        if not KripkeFrame(base.objects, mat).is_equivalence():
            raise InvalidKentError("E must be reflexive, symmetric and transitive")
        self.base = base
        self.e_rel = TypedRelation(Sort.AA, mat)

    @classmethod
    def from_blocks(cls, base: Polarity, blocks: Sequence[Sequence]) -> KentContext:
        idx = {o: i for i, o in enumerate(base.objects)}
        mat = np.zeros((base.n_objects, base.n_objects), dtype=bool)
        for block in blocks:
            for a in block:
                for b in block:
                    mat[idx[a], idx[b]] = True
        return cls(base, mat)


def lax_strict(P: Polarity, E: np.ndarray) -> tuple[TypedRelation, TypedRelation]:
    """``aRx`` iff some ``b`` with ``aEb`` has ``bIx``; ``aSx`` iff all of them do."""
    I = P.incidence
    lax = bool_compose(E, I)
    strict = ~bool_compose(E, ~I)
    return TypedRelation(Sort.AX, lax), TypedRelation(Sort.AX, strict)


def _e_definable(rel: TypedRelation, E: np.ndarray) -> bool:
    # every column section is a union of E-blocks
    for x in range(rel.n_cols):
        col = rel.matrix[:, x]
        if np.any(bool_compose(E, col[:, None])[:, 0] & ~col):
            return False
    return True


def kent_approx(G: KentContext) -> tuple[TypedRelation, TypedRelation, Report]:
    P, E = G.base, G.e_rel.matrix
    R, S = lax_strict(P, E)
    I = incidence_relation(P)
    report = Report()
    d = report.details
    d["r_definable"] = _e_definable(R, E)
    d["s_definable"] = _e_definable(S, E)
    d["s_below_i"] = included(S, I)
    d["i_below_r"] = included(I, R)
    d["e_compatible"] = is_i_compatible(P, G.e_rel)
    d["r_compatible"] = is_i_compatible(P, R)
    d["s_compatible"] = is_i_compatible(P, S)
    d["amenable"] = d["e_compatible"] and d["r_compatible"] and d["s_compatible"]
    checks = ["r_definable", "s_definable", "s_below_i", "i_below_r"]
    if d["amenable"]:
        d["rr_below_r"] = included(compose_rel(P, R, R), R)
        d["s_below_ss"] = included(S, compose_rel(P, S, S))
        checks += ["rr_below_r", "s_below_ss"]
    for key in checks:
        report.checked += 1
        if not d[key]:
            report.fail(key)
    return R, S, report


def strict_lemma_check(P: Polarity, E, require_compatible_e: bool = True) -> Report:
    """The two biconditionals relating an object relation to its strict approximation.

    ``E`` may be any relation on objects. The precondition is that the strict
    approximation is I-compatible and, unless ``require_compatible_e`` is
    off, that ``E`` is too; when it fails the report is marked skipped.
    """
    E = _square(E.matrix if isinstance(E, TypedRelation) else E, P.n_objects)
    _, S = lax_strict(P, E)
    report = Report()
    pre = is_i_compatible(P, S)
    if require_compatible_e:
        pre = pre and is_i_compatible(P, TypedRelation(Sort.AA, E))
    if not pre:
        report.details["skipped"] = True
        return report
    report.details["skipped"] = False
    I = incidence_relation(P)
    reflexive = bool(np.all(np.diag(E)))
    transitive = not np.any(bool_compose(E, E) & ~E)
    s_refl = included(S, I)
    s_trans = included(S, compose_rel(P, S, S))
    report.details.update(
        e_reflexive=reflexive, s_below_i=s_refl, e_transitive=transitive, s_below_ss=s_trans
    )
    report.checked = 2
    if reflexive != s_refl:
        report.fail(f"reflexivity: E {reflexive}, S<=I {s_refl}")
    if transitive != s_trans:
        report.fail(f"transitivity: E {transitive}, S<=S;S {s_trans}")
    return report


def kent_lemma_check(G: KentContext) -> Report:
    return strict_lemma_check(G.base, G.e_rel.matrix, require_compatible_e=False)
