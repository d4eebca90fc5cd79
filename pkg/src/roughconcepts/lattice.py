"""Polarities, Galois derivations and concept lattices.

Object and feature sets are int bitmasks over the carrier order (see
:mod:`roughconcepts.bits`); boolean vectors of the right length are accepted
wherever a set is expected.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import bits
from .errors import CarrierMismatchError, DuplicateIdentifierError, MembershipError

Side = Literal["up", "down"]
ClosureSide = Literal["extent", "intent"]


def as_mask(s, n: int, carrier: str = "carrier") -> int:
    """Normalise ``s`` (int bitmask or boolean vector) to a bitmask over ``n`` items."""
    if isinstance(s, (bool, np.bool_)):
        raise CarrierMismatchError(f"expected a set over the {carrier}, got a boolean")
    if isinstance(s, (int, np.integer)):
        s = int(s)
        if s < 0 or s >> n:
            raise CarrierMismatchError(f"bitmask {s:#b} exceeds the {carrier} of size {n}")
        return s
    arr = np.asarray(s, dtype=bool)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise CarrierMismatchError(f"vector of shape {arr.shape} does not index the {carrier} of size {n}")
    return bits.from_bools(arr)


def _check_unique(names: Sequence, what: str) -> tuple:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise DuplicateIdentifierError(f"duplicate {what} identifiers")
    return names


class Polarity:
    """A finite formal context ``(A, X, I)``; immutable."""

    def __init__(self, objects: Sequence, features: Sequence, incidence):
        self.objects = _check_unique(objects, "object")
        self.features = _check_unique(features, "feature")
        mat = np.array(incidence, dtype=bool)
        if mat.size == 0 and len(self.objects) * len(self.features) == 0:
            mat = mat.reshape(len(self.objects), len(self.features))
        if mat.shape != (len(self.objects), len(self.features)):
            raise CarrierMismatchError(
                f"incidence has shape {mat.shape}, expected {(len(self.objects), len(self.features))}"
            )
        mat.setflags(write=False)
        self.incidence = mat
        self.n_objects = len(self.objects)
        self.n_features = len(self.features)
        self.all_objects = bits.full(self.n_objects)
        self.all_features = bits.full(self.n_features)
        self.rows = bits.row_masks(mat)  # a -> a^up
        self.cols = bits.col_masks(mat)  # x -> x^down

    @classmethod
    def from_pairs(cls, objects: Sequence, features: Sequence, pairs: Iterable[tuple]) -> Polarity:
        oi = {o: i for i, o in enumerate(objects)}
        fi = {f: i for i, f in enumerate(features)}
        mat = np.zeros((len(objects), len(features)), dtype=bool)
        for a, x in pairs:
            mat[oi[a], fi[x]] = True
        return cls(objects, features, mat)

    def object_mask(self, names: Iterable) -> int:
        idx = {o: i for i, o in enumerate(self.objects)}
        return bits.from_indices(idx[n] for n in names)

    def feature_mask(self, names: Iterable) -> int:
        idx = {f: i for i, f in enumerate(self.features)}
        return bits.from_indices(idx[n] for n in names)

    def object_names(self, mask: int) -> list:
        return [self.objects[i] for i in bits.iter_bits(mask)]

    def feature_names(self, mask: int) -> list:
        return [self.features[i] for i in bits.iter_bits(mask)]

    def up(self, objs: int) -> int:
        out = self.all_features
        for a in bits.iter_bits(objs):
            out &= self.rows[a]
        return out

    def down(self, feats: int) -> int:
        out = self.all_objects
        for x in bits.iter_bits(feats):
            out &= self.cols[x]
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polarity)
            and self.objects == other.objects
            and self.features == other.features
            and np.array_equal(self.incidence, other.incidence)
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.features, self.incidence.tobytes()))

    def __repr__(self) -> str:
        return f"Polarity({self.n_objects} objects, {self.n_features} features)"


@dataclass(frozen=True, eq=False)
class FormalConcept:
    """An extent/intent pair. Equality and hashing use the extent only."""

    extent: int
    intent: int

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalConcept) and self.extent == other.extent

    def __hash__(self) -> int:
        return hash(self.extent)

    def leq(self, other: FormalConcept) -> bool:
        return self.extent & ~other.extent == 0


def derive(P: Polarity, side: Side, s) -> int:
    """``up`` maps objects to their common features, ``down`` the converse."""
    if side == "up":
        return P.up(as_mask(s, P.n_objects, "objects"))
    if side == "down":
        return P.down(as_mask(s, P.n_features, "features"))
    raise ValueError(f"unknown derivation side {side!r}")


def closure(P: Polarity, side: ClosureSide, s) -> int:
    if side == "extent":
        return P.down(P.up(as_mask(s, P.n_objects, "objects")))
    if side == "intent":
        return P.up(P.down(as_mask(s, P.n_features, "features")))
    raise ValueError(f"unknown closure side {side!r}")


def is_stable(P: Polarity, side: ClosureSide, s) -> bool:
    n = P.n_objects if side == "extent" else P.n_features
    m = as_mask(s, n, "objects" if side == "extent" else "features")
    return closure(P, side, m) == m


def concept_from_extent(P: Polarity, extent: int) -> FormalConcept:
    """The concept generated by a set of objects: ``(B^up^down, B^up)``."""
    y = P.up(extent)
    return FormalConcept(P.down(y), y)


def concept_from_intent(P: Polarity, intent: int) -> FormalConcept:
    e = P.down(intent)
    return FormalConcept(e, P.up(e))


class ConceptLattice:
    """All concepts of a polarity, in lectic order of their intents."""

    def __init__(self, polarity: Polarity, concepts: Sequence[FormalConcept]):
        self.polarity = polarity
        self.concepts = tuple(concepts)
        self._index = {c.extent: i for i, c in enumerate(self.concepts)}
        n = len(self.concepts)
        exts = [c.extent for c in self.concepts]
        order = np.zeros((n, n), dtype=bool)
        for i, e in enumerate(exts):
            for j, f in enumerate(exts):
                order[i, j] = e & ~f == 0
        order.setflags(write=False)
        self.order = order
        self.top = self._index[polarity.all_objects]
        self.bottom = self.index(concept_from_intent(polarity, polarity.all_features))

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def __getitem__(self, i: int) -> FormalConcept:
        return self.concepts[i]

    def __contains__(self, c) -> bool:
        return isinstance(c, FormalConcept) and self._lookup(c) is not None

    def _lookup(self, c: FormalConcept) -> int | None:
        i = self._index.get(c.extent)
        if i is None or self.concepts[i].intent != c.intent:
            return None
        return i

    def index(self, c: FormalConcept) -> int:
        i = self._lookup(c)
        if i is None:
            raise MembershipError(f"{c} is not a concept of this lattice")
        return i

    def index_of_extent(self, extent: int) -> int:
        return self._index[extent]

    @property
    def top_concept(self) -> FormalConcept:
        return self.concepts[self.top]

    @property
    def bottom_concept(self) -> FormalConcept:
        return self.concepts[self.bottom]

    def meet(self, c: FormalConcept, d: FormalConcept) -> FormalConcept:
        return concept_from_extent(self.polarity, c.extent & d.extent)

    def join(self, c: FormalConcept, d: FormalConcept) -> FormalConcept:
        return concept_from_intent(self.polarity, c.intent & d.intent)

    def __repr__(self) -> str:
        return f"ConceptLattice({len(self)} concepts)"


def _next_intent(P: Polarity, y: int) -> int | None:
    for i in reversed(range(P.n_features)):
        bit = 1 << i
        if y & bit:
            y &= ~bit
        else:
            b = P.up(P.down(y | bit))
            if (b & ~y) & (bit - 1) == 0:
                return b
    return None


def enumerate_concepts(P: Polarity) -> ConceptLattice:
    """NextClosure over intents; every stable extent appears exactly once."""
    concepts = []
    y: int | None = P.up(P.down(0))
    while y is not None:
        concepts.append(FormalConcept(P.down(y), y))
        y = _next_intent(P, y)
    return ConceptLattice(P, concepts)


def concept_bound(L: ConceptLattice, kind: Literal["meet", "join"], c: FormalConcept, d: FormalConcept) -> FormalConcept:
    L.index(c)
    L.index(d)
    if kind == "meet":
        return L.meet(c, d)
    if kind == "join":
        return L.join(c, d)
    raise ValueError(f"unknown bound {kind!r}")


def hasse_covers(L: ConceptLattice) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)`` such that concept ``i`` is covered by concept ``j``."""
    n = len(L)
    strict = L.order & ~np.eye(n, dtype=bool)
    through = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    covers = strict & ~through
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(covers))]
