"""Many-valued polarities over a finite Heyting algebra of truth values.

Truth values are element indices of a :class:`HeytingAlgebra`; ``A``-valued
sets are integer numpy vectors and ``A``-valued relations integer matrices.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import (
    CarrierMismatchError,
    IncompatibleRelationError,
    NotHeytingError,
    NotALatticeError,
    SearchSpaceExceeded,
)
from .lattice import _check_unique
from .lifting import Report
from .posets import FiniteLattice


class HeytingAlgebra:
    """A finite distributive lattice with its residuum ``a -> b`` precomputed."""

    def __init__(self, names: Sequence, order):
        self.names = _check_unique(names, "truth value")
        try:
            lat = FiniteLattice(order)
        except NotALatticeError as exc:
            raise NotHeytingError(str(exc)) from exc
        if lat.n != len(self.names):
            raise CarrierMismatchError("order size differs from the number of names")
        self.lattice = lat
        self.n = lat.n
        self.order = lat.order
        self.meet = lat.meet_table
        self.join = lat.join_table
        self.top = lat.top
        self.bottom = lat.bottom
        self.imp = self._residuum()

    def _residuum(self) -> np.ndarray:
        n, leq, m, j = self.n, self.order, self.meet, self.join
        imp = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                cands = [c for c in range(n) if leq[m[a, c], b]]
                best = cands[0]
                for c in cands[1:]:
                    best = j[best, c]
                if not leq[m[a, best], b]:
                    raise NotHeytingError(f"no greatest c with {self.names[a]} ∧ c ≤ {self.names[b]}")
                imp[a, b] = best
        imp.setflags(write=False)
        return imp

    @classmethod
    def from_order(cls, names: Sequence, pairs) -> HeytingAlgebra:
        """Build from covering or order pairs ``(lower, upper)``; the reflexive-transitive closure is taken."""
        names = tuple(names)
        idx = {v: i for i, v in enumerate(names)}
        n = len(names)
        leq = np.eye(n, dtype=bool)
        for lo, hi in pairs:
            leq[idx[lo], idx[hi]] = True
        for k in range(n):
            leq |= leq[:, [k]] & leq[[k], :]
        return cls(names, leq)

    def residuum(self, a: int, b: int) -> int:
        return int(self.imp[a, b])

    def leq(self, a, b) -> bool:
        return bool(np.all(self.order[a, b]))

    def meet_all(self, arr: np.ndarray, axis: int = 0) -> np.ndarray:
        arr = np.moveaxis(np.asarray(arr, dtype=np.int64), axis, 0)
        out = np.full(arr.shape[1:], self.top, dtype=np.int64)
        for row in arr:
            out = self.meet[out, row]
        return out

    def join_all(self, arr: np.ndarray, axis: int = 0) -> np.ndarray:
        arr = np.moveaxis(np.asarray(arr, dtype=np.int64), axis, 0)
        out = np.full(arr.shape[1:], self.bottom, dtype=np.int64)
        for row in arr:
            out = self.join[out, row]
        return out

    def neg(self, a):
        return self.imp[a, self.bottom]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"HeytingAlgebra({', '.join(map(str, self.names))})"


def boolean2() -> HeytingAlgebra:
    return HeytingAlgebra.from_order(("0", "1"), [("0", "1")])


def goedel_chain(k: int) -> HeytingAlgebra:
    """The ``k``-element chain ``0 < 1/(k-1) < ... < 1`` with Gödel implication."""
    names = tuple("0" if i == 0 else "1" if i == k - 1 else f"{i}/{k - 1}" for i in range(k))
    return HeytingAlgebra.from_order(names, list(zip(names, names[1:])))


def boolean4() -> HeytingAlgebra:
    """The four-element Boolean algebra ``2 × 2``."""
    return HeytingAlgebra.from_order(("0", "a", "b", "1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


SHIPPED_ALGEBRAS = {
    "boolean2": boolean2,
    "goedel3": lambda: goedel_chain(3),
    "goedel4": lambda: goedel_chain(4),
    "boolean4": boolean4,
}


def _vec(H: HeytingAlgebra, s, n: int, what: str) -> np.ndarray:
    v = np.asarray(s, dtype=np.int64)
    if v.shape != (n,):
        raise CarrierMismatchError(f"{what} vector has shape {v.shape}, expected ({n},)")
    if v.size and (v.min() < 0 or v.max() >= H.n):
        raise CarrierMismatchError(f"{what} vector has entries outside the algebra")
    return v


def singleton(H: HeytingAlgebra, n: int, w: int, alpha: int) -> np.ndarray:
    """``{alpha \\ w}``: ``alpha`` at ``w`` and bottom elsewhere."""
    out = np.full(n, H.bottom, dtype=np.int64)
    out[w] = alpha
    return out


def subsethood(H: HeytingAlgebra, f, g) -> int:
    f, g = np.asarray(f), np.asarray(g)
    return int(H.meet_all(H.imp[f, g])) if f.size else H.top


def mv_r0(H: HeytingAlgebra, R: np.ndarray, u) -> np.ndarray:
    """``a ↦ ⋀_x (u(x) → R(a, x))``."""
    u = _vec(H, u, R.shape[1], "column")
    return H.meet_all(H.imp[u[None, :], R], axis=1)


def mv_r1(H: HeytingAlgebra, R: np.ndarray, f) -> np.ndarray:
    """``x ↦ ⋀_a (f(a) → R(a, x))``."""
    f = _vec(H, f, R.shape[0], "row")
    return H.meet_all(H.imp[f[:, None], R], axis=0)


def _matrix(H: HeytingAlgebra, R, shape=None) -> np.ndarray:
    M = np.array(R, dtype=np.int64)
    if M.ndim != 2:
        M = M.reshape(0, 0) if M.size == 0 else M
    if shape is not None and M.shape != shape:
        raise CarrierMismatchError(f"matrix has shape {M.shape}, expected {shape}")
    if M.size and (M.min() < 0 or M.max() >= H.n):
        raise CarrierMismatchError("matrix has entries outside the algebra")
    M.setflags(write=False)
    return M


@dataclass(frozen=True, eq=False)
class MVConcept:
    extent: tuple[int, ...]
    intent: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, MVConcept) and self.extent == other.extent

    def __hash__(self) -> int:
        return hash(self.extent)


class APolarity:
    """``(A, X, I)`` with ``I`` valued in a Heyting algebra."""

    def __init__(self, algebra: HeytingAlgebra, objects: Sequence, features: Sequence, incidence):
        self.algebra = algebra
        self.objects = _check_unique(objects, "object")
        self.features = _check_unique(features, "feature")
        self.n_objects = len(self.objects)
        self.n_features = len(self.features)
        self.incidence = _matrix(algebra, incidence, (self.n_objects, self.n_features))

    def up(self, f) -> np.ndarray:
        return mv_r1(self.algebra, self.incidence, f)

    def down(self, u) -> np.ndarray:
        return mv_r0(self.algebra, self.incidence, u)

    def is_stable_extent(self, f) -> bool:
        return bool(np.array_equal(self.down(self.up(f)), np.asarray(f)))

    def is_stable_intent(self, u) -> bool:
        return bool(np.array_equal(self.up(self.down(u)), np.asarray(u)))

    def concept_from_extent(self, f) -> MVConcept:
        u = self.up(f)
        return MVConcept(tuple(int(v) for v in self.down(u)), tuple(int(v) for v in u))

    def concept_from_intent(self, u) -> MVConcept:
        f = self.down(u)
        return MVConcept(tuple(int(v) for v in f), tuple(int(v) for v in self.up(f)))

    def __repr__(self) -> str:
        return f"APolarity({self.n_objects} objects, {self.n_features} features over {len(self.algebra)} values)"


def mv_rel_apply(H: HeytingAlgebra, R, direction: str, s) -> np.ndarray:
    R = _matrix(H, R)
    if direction == "r0":
        return mv_r0(H, R, s)
    if direction == "r1":
        return mv_r1(H, R, s)
    raise ValueError(f"unknown direction {direction!r}")


def _stable(P: APolarity, side: str, v: np.ndarray) -> bool:
    return P.is_stable_extent(v) if side == "A" else P.is_stable_intent(v)


def mv_is_i_compatible(P: APolarity, R, sort: str = "AX") -> bool:
    """Stability of ``R^(0)[{α\\c}]`` and ``R^(1)[{α\\r}]`` for every value ``α``."""
    H = P.algebra
    rs, cs = sort[0], sort[1]
    n = {"A": P.n_objects, "X": P.n_features}
    R = _matrix(H, R, (n[rs], n[cs]))
    for c in range(R.shape[1]):
        for alpha in range(H.n):
            if not _stable(P, rs, mv_r0(H, R, singleton(H, R.shape[1], c, alpha))):
                return False
    for r in range(R.shape[0]):
        for alpha in range(H.n):
            if not _stable(P, cs, mv_r1(H, R, singleton(H, R.shape[0], r, alpha))):
                return False
    return True


def _all_vectors(H: HeytingAlgebra, n: int, guard: int) -> np.ndarray:
    if H.n**n > guard:
        raise SearchSpaceExceeded(f"{H.n}^{n} vectors exceed the guard of {guard}")
    return np.array(list(product(range(H.n), repeat=n)), dtype=np.int64).reshape(H.n**n, n)


def mv_compatible_by_closure(P: APolarity, R, sort: str = "AX", guard: int = 10**5) -> bool:
    """Equivalent test through ``R^(1)[f] = R^(1)[f^↑↓]`` and ``R^(0)[u] = R^(0)[u^↓↑]``.

    The closures are those of the carrier each argument lives on.
    """
    H = P.algebra
    rs, cs = sort[0], sort[1]
    n = {"A": P.n_objects, "X": P.n_features}
    R = _matrix(H, R, (n[rs], n[cs]))

    def close(side, v):
        return P.down(P.up(v)) if side == "A" else P.up(P.down(v))

    for f in _all_vectors(H, R.shape[0], guard):
        if not np.array_equal(mv_r1(H, R, f), mv_r1(H, R, close(rs, f))):
            return False
    for u in _all_vectors(H, R.shape[1], guard):
        if not np.array_equal(mv_r0(H, R, u), mv_r0(H, R, close(cs, u))):
            return False
    return True


def mv_enumerate_concepts(P: APolarity, guard: int = 10**6) -> list[MVConcept]:
    """All formal ``A``-concepts, sorted by extent, generated from the smaller carrier."""
    H = P.algebra
    if P.n_features <= P.n_objects:
        gen = (P.concept_from_intent(u) for u in _all_vectors(H, P.n_features, guard))
    else:
        gen = (P.concept_from_extent(f) for f in _all_vectors(H, P.n_objects, guard))
    seen = {}
    for c in gen:
        seen.setdefault(c.extent, c)
    return [seen[k] for k in sorted(seen)]


class AEnrichedContext:
    """An ``A``-polarity with ``R_box`` (A × X) and ``R_diamond`` (X × A)."""

    def __init__(self, base: APolarity, rbox, rdia, permissive: bool = False):
        H = base.algebra
        self.base = base
        self.rbox = _matrix(H, rbox, (base.n_objects, base.n_features))
        self.rdia = _matrix(H, rdia, (base.n_features, base.n_objects))
        bad = []
        if not mv_is_i_compatible(base, self.rbox, "AX"):
            bad.append("rbox")
        if not mv_is_i_compatible(base, self.rdia, "XA"):
            bad.append("rdia")
        if bad and not permissive:
            raise IncompatibleRelationError(f"not I-compatible: {', '.join(bad)}")
        self.incompatible = tuple(bad)
        self.verified = not bad

    @cached_property
    def concepts(self) -> list[MVConcept]:
        return mv_enumerate_concepts(self.base)

    def box(self, c: MVConcept) -> MVConcept:
        return self.base.concept_from_extent(mv_r0(self.base.algebra, self.rbox, c.intent))

    def dia(self, c: MVConcept) -> MVConcept:
        return self.base.concept_from_intent(mv_r0(self.base.algebra, self.rdia, c.extent))


@dataclass(frozen=True)
class AKripkeFrame:
    algebra: HeytingAlgebra
    states: tuple
    rel: np.ndarray = field(repr=False)

    def __init__(self, algebra: HeytingAlgebra, states: Sequence, rel):
        states = _check_unique(states, "state")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "rel", _matrix(algebra, rel, (len(states), len(states))))

    def box(self, f) -> np.ndarray:
        """``w ↦ ⋀_v (R(w, v) → f(v))``."""
        H = self.algebra
        f = _vec(H, f, len(self.states), "state")
        return H.meet_all(H.imp[self.rel, f[None, :]], axis=1)

    def dia(self, f) -> np.ndarray:
        """``w ↦ ⋁_v (R(w, v) ∧ f(v))``."""
        H = self.algebra
        f = _vec(H, f, len(self.states), "state")
        return H.join_all(H.meet[self.rel, f[None, :]], axis=1)

    def is_reflexive(self) -> bool:
        return bool(np.all(np.diag(self.rel) == self.algebra.top))


def _delta(H: HeytingAlgebra, n: int) -> np.ndarray:
    D = np.full((n, n), H.bottom, dtype=np.int64)
    np.fill_diagonal(D, H.top)
    return D


def _lift_features(H: HeytingAlgebra, states: Sequence) -> list[tuple]:
    return [(H.names[alpha], v) for v in states for alpha in range(H.n)]


def _lift_ax(H: HeytingAlgebra, R: np.ndarray) -> np.ndarray:
    # (w, (alpha, v)) -> R(w, v) -> alpha, features ordered by v then alpha
    n = R.shape[0]
    out = np.empty((n, n * H.n), dtype=np.int64)
    for v in range(n):
        for alpha in range(H.n):
            out[:, v * H.n + alpha] = H.imp[R[:, v], alpha]
    return out


def mv_lift_set(H: HeytingAlgebra, W: Sequence) -> APolarity:
    """``(W, A × W, I_Δ)`` with ``I_Δ(w, (α, v)) = Δ(w, v) → α``."""
    W = _check_unique(W, "state")
    return APolarity(H, W, _lift_features(H, W), _lift_ax(H, _delta(H, len(W))))


def mv_lift_kripke(X: AKripkeFrame) -> AEnrichedContext:
    """``(P_W, I_R, J_R)`` with ``I_R(w, (α, v)) = R(w, v) → α`` and ``J_R((α, w), v) = R(w, v) → α``."""
    H = X.algebra
    P = mv_lift_set(H, X.states)
    IR = _lift_ax(H, X.rel)
    JR = _lift_ax(H, X.rel.T).T  # row (alpha, w), column v carries R(w, v) -> alpha
    return AEnrichedContext(P, IR, JR)


def mv_lift(H: HeytingAlgebra, kind: str, W: Sequence, R=None):
    if kind == "set":
        return mv_lift_set(H, W)
    if kind == "kripke":
        if R is None:
            raise ValueError("a relation is required to lift a frame")
        return mv_lift_kripke(AKripkeFrame(H, W, R))
    raise ValueError(f"unknown lift kind {kind!r}")


def mv_verify_preservation(X: AKripkeFrame, guard: int = 10**6) -> Report:
    """Every ``f`` is stable, ``[R]f = I_R^(0)[f^↑]`` and ``<R>f = (J_R^(0)[f])^↓``.

    Also records whether ``R`` is reflexive exactly when ``I_R <= I_Δ`` pointwise.
    """
    H = X.algebra
    F = mv_lift_kripke(X)
    P = F.base
    report = Report()
    report.details["compatible"] = F.verified
    if not F.verified:
        report.fail("lifted relations are not I-compatible")
    for f in _all_vectors(H, len(X.states), guard):
        report.checked += 1
        up = P.up(f)
        if not np.array_equal(P.down(up), f):
            report.fail(f"{f.tolist()} is not stable")
            break
        if not np.array_equal(mv_r0(H, F.rbox, up), X.box(f)):
            report.fail(f"[R] differs at {f.tolist()}")
            break
        if not np.array_equal(P.down(mv_r0(H, F.rdia, f)), X.dia(f)):
            report.fail(f"<R> differs at {f.tolist()}")
            break
    below = bool(np.all(H.order[F.rbox, P.incidence]))
    report.details["reflexive"] = X.is_reflexive()
    report.details["I_R <= I_delta"] = below
    if below != X.is_reflexive():
        report.fail("reflexivity does not match I_R <= I_delta")
    return report


@dataclass(frozen=True)
class MVCorrespondence:
    axiom_valid: bool
    pointwise_cond: bool
    generators: bool

    @property
    def agree(self) -> bool:
        return self.axiom_valid == self.pointwise_cond == self.generators


def mv_reflex_correspondence(F: AEnrichedContext) -> MVCorrespondence:
    """``box p |- p`` on every concept, against ``R_box <= I`` pointwise.

    ``generators`` is the same inequality restricted to the meet-generators
    ``{α \\ x}^↓``.
    """
    H = F.base.algebra
    P = F.base
    valid = all(H.leq(F.box(c).extent, c.extent) for c in F.concepts)
    pointwise = bool(np.all(H.order[F.rbox, P.incidence]))
    gens = True
    for x in range(P.n_features):
        for alpha in range(H.n):
            m = P.concept_from_intent(singleton(H, P.n_features, x, alpha))
            if not H.leq(F.box(m).extent, m.extent):
                gens = False
    return MVCorrespondence(valid, pointwise, gens)


def random_mv_context(
    H: HeytingAlgebra, n_objects: int, n_features: int, seed=None, tries: int = 200
) -> AEnrichedContext:
    """A random context whose ``R_box`` is I-compatible and ``R_diamond`` is ``I`` transposed.

    ``R_box`` is drawn uniformly; after ``tries`` rejections ``I`` itself is used.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    I = rng.integers(0, H.n, size=(n_objects, n_features))
    P = APolarity(H, [f"a{i}" for i in range(n_objects)], [f"x{j}" for j in range(n_features)], I)
    for _ in range(tries):
        R = rng.integers(0, H.n, size=(n_objects, n_features))
        if mv_is_i_compatible(P, R, "AX"):
            return AEnrichedContext(P, R, I.T)
    return AEnrichedContext(P, I, I.T)
