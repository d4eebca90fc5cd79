"""Strict, classical and tolerant truth on classical and conceptual T-models."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import bits
from .errors import (
    CarrierMismatchError,
    IncompatibleRelationError,
    InvalidModelError,
    UnboundAtomError,
    UnsupportedFormulaError,
)
from .formula import And, Atom, Bot, Formula, Or, Top, parse_formula
from .lattice import FormalConcept, Polarity, _check_unique, concept_from_extent, concept_from_intent
from .lifting import lift_set
from .relations import Sort, TypedRelation, included, incidence_relation, is_i_compatible

Mode = Literal["strict", "classical", "tolerant"]
MODES = ("strict", "classical", "tolerant")


def _as_formula(f) -> Formula:
    return parse_formula(f) if isinstance(f, str) else f


@dataclass(eq=False)
class ClassicalTModel:
    """A domain with one reflexive, symmetric similarity per atom and a set-valued valuation."""

    domain: tuple
    similarity: dict[str, np.ndarray]
    valuation: dict[str, int]

    def __init__(self, domain: Sequence, similarity: Mapping, valuation: Mapping):
        self.domain = _check_unique(domain, "domain")
        n = len(self.domain)
        idx = {d: i for i, d in enumerate(self.domain)}
        self.similarity = {}
        for p, m in similarity.items():
            mat = np.array(m, dtype=bool)
            if mat.shape != (n, n):
                raise CarrierMismatchError(f"similarity for {p!r} has shape {mat.shape}, expected {(n, n)}")
            if not mat.diagonal().all() or not np.array_equal(mat, mat.T):
                raise InvalidModelError(f"similarity for {p!r} is not reflexive and symmetric")
            mat.setflags(write=False)
            self.similarity[p] = mat
        self.valuation = {}
        for p, v in valuation.items():
            if isinstance(v, (int, np.integer)):
                mask = int(v)
                if mask >> n:
                    raise CarrierMismatchError(f"valuation of {p!r} exceeds the domain")
            else:
                mask = bits.from_indices(idx[d] for d in v)
            self.valuation[p] = mask

    @property
    def size(self) -> int:
        return len(self.domain)


def classical_t_extent(C: ClassicalTModel, f: Formula | str, mode: Mode) -> int:
    """``V(f)``, ``V^s(f)`` or ``V^t(f)`` as a subset of the domain."""
    f = _as_formula(f)
    n = C.size
    if isinstance(f, Top):
        return bits.full(n)
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Atom):
        if f.name not in C.valuation:
            raise UnboundAtomError(f"atom {f.name!r} has no value")
        V = C.valuation[f.name]
        if mode == "classical":
            return V
        sim = C.similarity.get(f.name)
        if sim is None:
            raise UnboundAtomError(f"atom {f.name!r} has no similarity relation")
        nbrs = bits.row_masks(sim)
        if mode == "strict":
            return bits.from_indices(a for a in range(n) if nbrs[a] & ~V == 0)
        return bits.from_indices(a for a in range(n) if nbrs[a] & V)
    if isinstance(f, And):
        return classical_t_extent(C, f.left, mode) & classical_t_extent(C, f.right, mode)
    if isinstance(f, Or):
        return classical_t_extent(C, f.left, mode) | classical_t_extent(C, f.right, mode)
    raise UnsupportedFormulaError(f"T-models interpret only T, F, atoms, & and |; got {f!r}")


@dataclass(eq=False)
class ConceptualTModel:
    """A polarity with one I-compatible ``R_p ⊆ I`` (sort AX) per atom and a concept-valued valuation."""

    base: Polarity
    relations: dict[str, TypedRelation]
    valuation: dict[str, FormalConcept] = field(default_factory=dict)

    def __post_init__(self):
        P = self.base
        rels = {}
        for p, R in self.relations.items():
            if not isinstance(R, TypedRelation):
                R = TypedRelation(Sort.AX, R)
            if R.sort != Sort.AX:
                raise IncompatibleRelationError(f"relation for {p!r} must have sort AX")
            R.check(P)
            if not is_i_compatible(P, R):
                raise IncompatibleRelationError(f"relation for {p!r} is not I-compatible")
            if not included(R, incidence_relation(P)):
                raise InvalidModelError(f"relation for {p!r} is not reflexive (not contained in I)")
            rels[p] = R
        self.relations = rels
        for p, c in self.valuation.items():
            d = concept_from_extent(P, c.extent)
            if d.extent != c.extent or d.intent != c.intent:
                raise InvalidModelError(f"valuation of {p!r} is not a concept")

    def relation(self, p: str) -> TypedRelation:
        try:
            return self.relations[p]
        except KeyError:
            raise UnboundAtomError(f"atom {p!r} has no relation") from None


def t_extent(M: ConceptualTModel, f: Formula | str, mode: Mode, const_atom: str | None = None) -> FormalConcept:
    """``V^s(f)``, ``V(f)`` or ``V^t(f)`` as a concept.

    The tolerant top and strict bottom depend on a relation; they use
    ``R_{const_atom}`` when given and the classical constants otherwise.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    f = _as_formula(f)
    P = M.base
    if isinstance(f, Top):
        if mode == "tolerant" and const_atom is not None:
            return concept_from_intent(P, M.relation(const_atom).r1(P.all_objects))
        return concept_from_extent(P, P.all_objects)
    if isinstance(f, Bot):
        if mode == "strict" and const_atom is not None:
            return concept_from_extent(P, M.relation(const_atom).r0(P.all_features))
        return concept_from_intent(P, P.all_features)
    if isinstance(f, Atom):
        if f.name not in M.valuation:
            raise UnboundAtomError(f"atom {f.name!r} has no value")
        c = M.valuation[f.name]
        if mode == "classical":
            return c
        R = M.relation(f.name)
        if mode == "strict":
            return concept_from_extent(P, R.r0(c.intent))
        return concept_from_intent(P, R.r1(c.extent))
    if isinstance(f, And):
        a = t_extent(M, f.left, mode, const_atom)
        b = t_extent(M, f.right, mode, const_atom)
        return concept_from_extent(P, a.extent & b.extent)
    if isinstance(f, Or):
        a = t_extent(M, f.left, mode, const_atom)
        b = t_extent(M, f.right, mode, const_atom)
        return concept_from_intent(P, a.intent & b.intent)
    raise UnsupportedFormulaError(f"T-models interpret only T, F, atoms, & and |; got {f!r}")


def similarity(M: ConceptualTModel, p: str, side: Literal["objects", "features"], u: int, v: int) -> bool:
    """Objects: ``R_p^(1)[u] ⊆ v^up``. Features: ``R_p^(0)[u] ⊆ v^down``."""
    P = M.base
    R = M.relation(p)
    n = P.n_objects if side == "objects" else P.n_features
    if not (0 <= u < n and 0 <= v < n):
        raise CarrierMismatchError(f"elements ({u}, {v}) are outside the {side} carrier of size {n}")
    if side == "objects":
        return bits.is_subset(R.rows[u], P.rows[v])
    if side == "features":
        return bits.is_subset(R.cols[u], P.cols[v])
    raise ValueError(f"unknown side {side!r}")


def similarity_matrix(M: ConceptualTModel, p: str, side: Literal["objects", "features"]) -> np.ndarray:
    n = M.base.n_objects if side == "objects" else M.base.n_features
    return np.array([[similarity(M, p, side, u, v) for v in range(n)] for u in range(n)], dtype=bool)


@dataclass
class StepReport:
    objects: bool
    features: bool
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.objects and self.features


def step_lemma_check(
    M: ConceptualTModel, p: str, feature_form: Literal["valid", "literal"] = "valid"
) -> StepReport:
    """Single-step tolerance on both carriers.

    Objects: strict member ``a`` and ``a ~ b`` give tolerant member ``b``.
    Features (``valid``): tolerant describer ``x`` and ``x ~ y`` give strict
    describer ``y``. ``literal`` checks strict-to-tolerant on features instead,
    which fails on some models.
    """
    P = M.base
    s = t_extent(M, Atom(p), "strict")
    t = t_extent(M, Atom(p), "tolerant")
    report = StepReport(True, True)
    sim_a = similarity_matrix(M, p, "objects")
    for a in bits.iter_bits(s.extent):
        for b in range(P.n_objects):
            if sim_a[a, b] and not t.extent >> b & 1:
                report.objects = False
                report.counterexample = ("objects", a, b)
                return report
    sim_x = similarity_matrix(M, p, "features")
    start, goal = (t.intent, s.intent) if feature_form == "valid" else (s.intent, t.intent)
    for x in bits.iter_bits(start):
        for y in range(P.n_features):
            if sim_x[x, y] and not goal >> y & 1:
                report.features = False
                report.counterexample = ("features", x, y)
                return report
    return report


def sorites_search(M: ConceptualTModel, p: str, max_len: int) -> list[int] | None:
    """Shortest chain of pairwise similar objects from a strict member to a non-tolerant one.

    Breadth-first from all strict members at once, exploring in carrier order;
    returns object indices, or ``None`` when no chain of at most ``max_len``
    objects exists.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    s = t_extent(M, Atom(p), "strict").extent
    t = t_extent(M, Atom(p), "tolerant").extent
    sim = similarity_matrix(M, p, "objects")
    n = M.base.n_objects
    parent: dict[int, int | None] = {}
    queue: deque[tuple[int, int]] = deque()
    for a in bits.iter_bits(s):
        parent[a] = None
        queue.append((a, 1))
    while queue:
        a, depth = queue.popleft()
        if not t >> a & 1:
            chain = [a]
            while parent[chain[-1]] is not None:
                chain.append(parent[chain[-1]])
            return chain[::-1]
        if depth >= max_len:
            continue
        for b in range(n):
            if b != a and sim[a, b] and b not in parent:
                parent[b] = a
                queue.append((b, depth + 1))
    return None


def lift_t_model(C: ClassicalTModel) -> ConceptualTModel:
    """``((D_A, D_X, I_{Δᶜ}), {I_{~pᶜ}}, h∘V)``; similarity is checked to survive the lift."""
    P = lift_set(C.domain)
    full = bits.full(C.size)
    rels = {p: TypedRelation(Sort.AX, ~sim) for p, sim in C.similarity.items()}
    val = {p: FormalConcept(V, full & ~V) for p, V in C.valuation.items()}
    M = ConceptualTModel(P, rels, val)
    for p, sim in C.similarity.items():
        for side in ("objects", "features"):
            if not np.array_equal(similarity_matrix(M, p, side), sim):
                raise InvalidModelError(f"lifted similarity for {p!r} differs on {side}")
    return M


def chain_model(domain: Iterable, members: Iterable, atom: str = "p") -> ClassicalTModel:
    """A line of elements where each is similar to its immediate neighbours."""
    domain = tuple(domain)
    n = len(domain)
    sim = np.eye(n, dtype=bool)
    for i in range(n - 1):
        sim[i, i + 1] = sim[i + 1, i] = True
    return ClassicalTModel(domain, {atom: sim}, {atom: list(members)})
