"""Inner and outer measures, their modal reading, and belief on concept lattices.

All weights are :class:`fractions.Fraction`; nothing here is approximate.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

import numpy as np
from more_itertools import set_partitions

from . import bits
from .errors import InvalidSpaceError, MembershipError
from .lattice import (
    ConceptLattice,
    FormalConcept,
    Polarity,
    _check_unique,
    concept_from_intent,
    enumerate_concepts,
)
from .lifting import Report, lift_set
from .posets import FiniteLattice
from .relations import (
    EnrichedContext,
    Sort,
    TypedRelation,
    compose_rel,
    converse_rel,
    incidence_relation,
    included,
    is_i_compatible,
    modal_op,
)


def _fraction(w) -> Fraction:
    return w if isinstance(w, Fraction) else Fraction(w)


class PartitionProbSpace:
    """A finite set with the subalgebra generated by a partition and a weight per block."""

    def __init__(self, carrier: Sequence, blocks: Iterable[Iterable], weights: Iterable):
        self.carrier = _check_unique(carrier, "element")
        idx = {s: i for i, s in enumerate(self.carrier)}
        masks = []
        for b in blocks:
            try:
                m = bits.from_indices(idx[s] for s in b)
            except KeyError as exc:
                raise InvalidSpaceError(f"block element {exc.args[0]!r} is not in the carrier") from None
            if m == 0:
                raise InvalidSpaceError("blocks must be nonempty")
            masks.append(m)
        union = 0
        for m in masks:
            if union & m:
                raise InvalidSpaceError("blocks overlap")
            union |= m
        if union != bits.full(len(self.carrier)):
            raise InvalidSpaceError("blocks do not cover the carrier")
        self.blocks = tuple(masks)
        self.weights = tuple(_fraction(w) for w in weights)
        if len(self.weights) != len(self.blocks):
            raise InvalidSpaceError("one weight per block is required")
        if any(w < 0 for w in self.weights):
            raise InvalidSpaceError("weights must be nonnegative")
        if sum(self.weights) != 1:
            raise InvalidSpaceError(f"weights sum to {sum(self.weights)}, not 1")

    @property
    def size(self) -> int:
        return len(self.carrier)

    def mask(self, Z: Iterable) -> int:
        idx = {s: i for i, s in enumerate(self.carrier)}
        return bits.from_indices(idx[s] for s in Z)

    def is_measurable(self, Z: int) -> bool:
        return all(b & Z in (0, b) for b in self.blocks)

    def measure(self, Z: int) -> Fraction:
        if not self.is_measurable(Z):
            raise MembershipError("set is not in the subalgebra")
        return sum((w for b, w in zip(self.blocks, self.weights) if b & Z), Fraction(0))

    def iota(self, Z: int) -> int:
        """Largest measurable subset of ``Z``."""
        return sum(b for b in self.blocks if b & ~Z == 0)

    def gamma(self, Z: int) -> int:
        """Smallest measurable superset of ``Z``."""
        return sum(b for b in self.blocks if b & Z)

    def box(self, Z: int) -> int:
        return self.iota(Z)

    def dia(self, Z: int) -> int:
        return self.gamma(Z)

    def subalgebra(self) -> list[int]:
        out = []
        for code in range(1 << len(self.blocks)):
            out.append(sum(b for i, b in enumerate(self.blocks) if code >> i & 1))
        return sorted(out)

    def __repr__(self) -> str:
        shown = " | ".join(",".join(str(self.carrier[i]) for i in bits.iter_bits(b)) for b in self.blocks)
        return f"PartitionProbSpace({shown})"


def inner_outer(P: PartitionProbSpace, Z: int) -> tuple[Fraction, Fraction]:
    return P.measure(P.iota(Z)), P.measure(P.gamma(Z))


def diamond_relation(n: int, dia: Callable[[int], int]) -> np.ndarray:
    """``R(x, y)`` iff ``x`` lies in ``dia({y})``."""
    R = np.zeros((n, n), dtype=bool)
    for y in range(n):
        for x in bits.iter_bits(dia(1 << y)):
            R[x, y] = True
    return R


def _is_equivalence(R: np.ndarray) -> bool:
    return bool(
        R.diagonal().all()
        and np.array_equal(R, R.T)
        and not np.any((R.astype(np.int64) @ R.astype(np.int64) > 0) & ~R)
    )


def _partition_matrix(n: int, blocks: Iterable[int]) -> np.ndarray:
    R = np.zeros((n, n), dtype=bool)
    for b in blocks:
        idx = bits.indices(b)
        R[np.ix_(idx, idx)] = True
    return R


def is_compatible_equivalence(P: PartitionProbSpace, R: np.ndarray) -> bool:
    """``<R>`` factors through the subalgebra: every ``R``-image of a singleton is measurable."""
    return all(P.is_measurable(bits.from_bools(R[:, y])) for y in range(P.size))


def canonical_relation_classical(P: PartitionProbSpace, finest_guard: int = 10) -> tuple[np.ndarray, Report]:
    """The indiscernibility relation read off ``dia`` on singletons.

    The report checks that it is an equivalence, that it is the partition,
    and (for carriers up to ``finest_guard``) that every compatible
    equivalence contains it.
    """
    n = P.size
    R = diamond_relation(n, P.dia)
    report = Report()
    report.checked += 1
    if not _is_equivalence(R):
        report.fail("relation is not an equivalence")
    if not np.array_equal(R, _partition_matrix(n, P.blocks)):
        report.fail("relation differs from the partition")
    if not is_compatible_equivalence(P, R):
        report.fail("relation is not compatible with the subalgebra")
    if n <= finest_guard:
        for part in set_partitions(range(n)):
            E = _partition_matrix(n, [bits.from_indices(b) for b in part])
            report.checked += 1
            if is_compatible_equivalence(P, E) and np.any(R & ~E):
                report.fail(f"compatible equivalence {part} does not contain the canonical relation")
                break
        report.details["finest_checked"] = True
    return R, report


def _common_scale(values: Sequence[Fraction]) -> np.ndarray:
    vals = [_fraction(v) for v in values]
    den = math.lcm(*(v.denominator for v in vals)) if vals else 1
    return np.array([v.numerator * (den // v.denominator) for v in vals], dtype=object)


def k_monotone_powerset(values: Sequence[Fraction], n: int, k: int) -> tuple | None:
    """First ``k``-tuple of subsets violating ``k``-monotonicity of ``values``, or ``None``.

    ``values[Z]`` is the value on the subset with bitmask ``Z``.
    """
    if len(values) != 1 << n:
        raise ValueError(f"expected {1 << n} values")
    v = _common_scale(values).astype(np.int64)
    masks = np.arange(1 << n)
    grids = np.meshgrid(*([masks] * k), indexing="ij")
    sets = [g.ravel() for g in grids]
    union = np.bitwise_or.reduce(sets)
    rhs = np.zeros_like(union)
    for r in range(1, k + 1):
        sign = 1 if r % 2 else -1
        for sub in combinations(range(k), r):
            rhs += sign * v[np.bitwise_and.reduce([sets[i] for i in sub])]
    bad = np.flatnonzero(v[union] < rhs)
    if bad.size:
        return tuple(int(s[bad[0]]) for s in sets)
    return None


def k_monotone_lattice(
    elements: Sequence, meet: Callable, join: Callable, f: Callable, k: int
) -> tuple | None:
    """The same inequality on an arbitrary finite lattice, by brute force."""
    from functools import reduce

    for tup in product(elements, repeat=k):
        rhs = Fraction(0)
        for r in range(1, k + 1):
            for sub in combinations(tup, r):
                rhs += (1 if r % 2 else -1) * f(reduce(meet, sub))
        if f(reduce(join, tup)) < rhs:
            return tup
    return None


class ConceptualProbSpace:
    """A polarity, a sublattice of its concepts given by index, and a measure on it.

    Indices refer to :func:`enumerate_concepts` order. Validity means closure
    under meet and join, ``⊥`` and ``⊤`` present, and ``mu`` normalized,
    monotone and modular.
    """

    def __init__(self, base: Polarity, subalgebra: Iterable[int], mu: Mapping[int, Fraction]):
        self.base = base
        L = self.lattice
        sub = sorted(set(int(i) for i in subalgebra))
        if any(i < 0 or i >= len(L) for i in sub):
            raise InvalidSpaceError("subalgebra index out of range")
        self.subalgebra = tuple(sub)
        members = set(sub)
        if L.top not in members or L.bottom not in members:
            raise InvalidSpaceError("subalgebra must contain top and bottom")
        for i in sub:
            for j in sub:
                if L.index(L.meet(L[i], L[j])) not in members or L.index(L.join(L[i], L[j])) not in members:
                    raise InvalidSpaceError(f"subalgebra is not closed under meet and join at ({i}, {j})")
        if set(mu) != members:
            raise InvalidSpaceError("mu must be defined exactly on the subalgebra")
        self.mu = {i: _fraction(mu[i]) for i in sub}
        if self.mu[L.bottom] != 0 or self.mu[L.top] != 1:
            raise InvalidSpaceError("mu must send bottom to 0 and top to 1")
        for i in sub:
            for j in sub:
                if L.order[i, j] and self.mu[i] > self.mu[j]:
                    raise InvalidSpaceError(f"mu is not monotone at ({i}, {j})")
                m, jn = L.index(L.meet(L[i], L[j])), L.index(L.join(L[i], L[j]))
                if self.mu[jn] + self.mu[m] != self.mu[i] + self.mu[j]:
                    raise InvalidSpaceError(f"mu is not modular at ({i}, {j})")

    @cached_property
    def lattice(self) -> ConceptLattice:
        return enumerate_concepts(self.base)

    def _idx(self, c: FormalConcept | int) -> int:
        return c if isinstance(c, (int, np.integer)) else self.lattice.index(c)

    def iota(self, c: FormalConcept | int) -> int:
        """Index of the join of all subalgebra elements below ``c``."""
        L, i = self.lattice, self._idx(c)
        out = L.bottom_concept
        for a in self.subalgebra:
            if L.order[a, i]:
                out = L.join(out, L[a])
        return L.index(out)

    def gamma(self, c: FormalConcept | int) -> int:
        L, i = self.lattice, self._idx(c)
        out = L.top_concept
        for a in self.subalgebra:
            if L.order[i, a]:
                out = L.meet(out, L[a])
        return L.index(out)

    def box(self, c: FormalConcept | int) -> FormalConcept:
        return self.lattice[self.iota(c)]

    def dia(self, c: FormalConcept | int) -> FormalConcept:
        return self.lattice[self.gamma(c)]

    def belief(self, c: FormalConcept | int) -> Fraction:
        return self.mu[self.iota(c)]

    def plausibility(self, c: FormalConcept | int) -> Fraction:
        return self.mu[self.gamma(c)]


@dataclass(frozen=True)
class Adjoints:
    iota: FormalConcept
    gamma: FormalConcept
    box: FormalConcept
    dia: FormalConcept


def adjoints(C: ConceptualProbSpace, c: FormalConcept | int) -> Adjoints:
    """``ι(c)``, ``γ(c)`` and their images; the embedding is the identity on indices."""
    L = C.lattice
    i, g = C.iota(c), C.gamma(c)
    return Adjoints(L[i], L[g], L[i], L[g])


def belief_plausibility(C: ConceptualProbSpace, c: FormalConcept | int) -> tuple[Fraction, Fraction]:
    return C.belief(c), C.plausibility(c)


def canonical_relation_conceptual(C: ConceptualProbSpace) -> tuple[TypedRelation, Report]:
    """``R(a, x)`` iff the object concept of ``a`` is below ``box`` of the feature concept of ``x``."""
    P = C.base
    box_x = [C.box(concept_from_intent(P, 1 << x)) for x in range(P.n_features)]
    R = TypedRelation.from_columns(Sort.AX, P.n_objects, [b.extent for b in box_x])
    report = Report()
    if not is_i_compatible(P, R):
        report.fail("canonical relation is not I-compatible")
        return R, report
    F = EnrichedContext(P, R, converse_rel(R))
    for c in C.lattice:
        report.checked += 1
        if modal_op(F, "box", c) != C.box(c):
            report.fail(f"[R] differs from box at {c}")
            break
        if modal_op(F, "diamond", c) != C.dia(c):
            report.fail(f"<R^-1> differs from diamond at {c}")
            break
    if not included(R, incidence_relation(P)):
        report.fail("R is not contained in I")
    if not included(R, compose_rel(P, R, R)):
        report.fail("R is not contained in R;R")
    return R, report


def s5_law_check(C: ConceptualProbSpace) -> Report:
    L = C.lattice
    box = [C.iota(i) for i in range(len(L))]
    dia = [C.gamma(i) for i in range(len(L))]
    report = Report()
    leq = L.order

    def idx(c):
        return L.index(c)

    if box[L.top] != L.top or dia[L.bottom] != L.bottom:
        report.fail("operators are not normal")
    for i in range(len(L)):
        report.checked += 1
        if not (leq[box[i], i] and leq[i, dia[i]]):
            report.fail(f"box c <= c <= dia c fails at {i}")
        if box[box[i]] != box[i] or dia[dia[i]] != dia[i]:
            report.fail(f"idempotence fails at {i}")
        if not (leq[i, box[dia[i]]] and leq[dia[box[i]], i]):
            report.fail(f"S5 inequalities fail at {i}")
        for j in range(len(L)):
            m, jn = idx(L.meet(L[i], L[j])), idx(L.join(L[i], L[j]))
            if box[m] != idx(L.meet(L[box[i]], L[box[j]])):
                report.fail(f"box does not preserve the meet of {i} and {j}")
            if dia[jn] != idx(L.join(L[dia[i]], L[dia[j]])):
                report.fail(f"dia does not preserve the join of {i} and {j}")
            if bool(leq[dia[i], j]) != bool(leq[i, box[j]]):
                report.fail(f"adjunction fails at ({i}, {j})")
    return report


def lift_prob_space(P: PartitionProbSpace) -> ConceptualProbSpace:
    """The conceptual space on the lifted set, with the measurable sets as subalgebra."""
    base = lift_set(P.carrier)
    L = enumerate_concepts(base)
    sub = [i for i, c in enumerate(L) if P.is_measurable(c.extent)]
    C = ConceptualProbSpace(base, sub, {i: P.measure(L[i].extent) for i in sub})
    return C


def sublattice_closure(L: ConceptLattice, seed: Iterable[int]) -> list[int]:
    members = {L.top, L.bottom, *seed}
    while True:
        new = set(members)
        for i in members:
            for j in members:
                new.add(L.index(L.meet(L[i], L[j])))
                new.add(L.index(L.join(L[i], L[j])))
        if new == members:
            return sorted(members)
        members = new


def _restricted(L: ConceptLattice, sub: Sequence[int]) -> FiniteLattice:
    return FiniteLattice(L.order[np.ix_(sub, sub)])


def _height(lat: FiniteLattice) -> list[int]:
    order = sorted(range(len(lat)), key=lambda i: int(lat.order[:, i].sum()))
    h = [0] * len(lat)
    for i in order:
        below = [j for j in range(len(lat)) if j != i and lat.order[j, i]]
        h[i] = max((h[j] + 1 for j in below), default=0)
    return h


def valuation_generators(lat: FiniteLattice) -> list[list[Fraction]]:
    """Normalized monotone modular functions whose convex combinations are offered as measures.

    These are the characters of prime filters, plus the normalized height
    when the lattice is modular.
    """
    n = len(lat)
    gens = []
    for p in range(n):
        if p == lat.bottom:
            continue
        prime = all(
            lat.leq(p, lat.join(a, b)) <= (lat.leq(p, a) or lat.leq(p, b)) for a in range(n) for b in range(n)
        )
        if prime:
            gens.append([Fraction(int(lat.leq(p, i))) for i in range(n)])
    if lat.is_modular() and n > 1:
        h = _height(lat)
        gens.append([Fraction(v, h[lat.top]) for v in h])
    return gens


def random_conceptual_space(seed=None, max_concepts: int = 8, max_side: int = 4) -> ConceptualProbSpace:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    while True:
        nA = int(rng.integers(1, max_side + 1))
        nX = int(rng.integers(1, max_side + 1))
        P = Polarity([f"a{i}" for i in range(nA)], [f"x{j}" for j in range(nX)], rng.random((nA, nX)) < 0.5)
        L = enumerate_concepts(P)
        if len(L) > max_concepts or len(L) < 3:
            continue
        picks = [i for i in range(len(L)) if rng.random() < 0.6]
        sub = sublattice_closure(L, picks)
        gens = valuation_generators(_restricted(L, sub))
        if not gens:
            continue
        w = [Fraction(int(k), 1) for k in rng.integers(0, 4, size=len(gens))]
        if sum(w) == 0:
            w[int(rng.integers(len(w)))] = Fraction(1)
        total = sum(w)
        mu = {sub[i]: sum(wk * g[i] for wk, g in zip(w, gens)) / total for i in range(len(sub))}
        return ConceptualProbSpace(P, sub, mu)


def weight_grid(n_blocks: int, denominator: int = 8) -> Iterable[tuple[Fraction, ...]]:
    """Every weight vector with entries in ``{k/denominator}`` summing to 1."""
    for cut in combinations(range(denominator + n_blocks - 1), n_blocks - 1):
        parts, prev = [], -1
        for c in cut:
            parts.append(c - prev - 1)
            prev = c
        parts.append(denominator + n_blocks - 2 - prev)
        yield tuple(Fraction(p, denominator) for p in parts)


@dataclass
class GridSummary:
    spaces: int = 0
    failures: list = field(default_factory=list)


def exhaustive_measure_check(max_size: int = 4, denominator: int = 8) -> GridSummary:
    """Duality and 2-/3-monotonicity of the inner measure over every partition and weight grid."""
    out = GridSummary()
    for n in range(1, max_size + 1):
        S = list(range(n))
        for part in set_partitions(S):
            for w in weight_grid(len(part), denominator):
                P = PartitionProbSpace(S, part, w)
                out.spaces += 1
                full = bits.full(n)
                inner = [P.measure(P.iota(Z)) for Z in range(1 << n)]
                outer = [P.measure(P.gamma(Z)) for Z in range(1 << n)]
                if any(outer[Z] != 1 - inner[full & ~Z] for Z in range(1 << n)):
                    out.failures.append((part, w, "duality"))
                for k in (2, 3):
                    bad = k_monotone_powerset(inner, n, k)
                    if bad is not None:
                        out.failures.append((part, w, f"{k}-monotone", bad))
    return out
