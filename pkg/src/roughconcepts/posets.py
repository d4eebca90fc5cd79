"""Finite lattices given by order matrices, and their enumeration up to isomorphism."""

from __future__ import annotations

from functools import cached_property
from itertools import permutations, product

import numpy as np

from .errors import NotALatticeError


class FiniteLattice:
    """A finite lattice on ``0..n-1`` with ``order[i, j]`` meaning ``i <= j``."""

    def __init__(self, order):
        leq = np.array(order, dtype=bool)
        n = leq.shape[0] if leq.ndim == 2 else 0
        if leq.ndim != 2 or leq.shape != (n, n) or n == 0:
            raise NotALatticeError("order must be a non-empty square matrix")
        if not leq.diagonal().all():
            raise NotALatticeError("order is not reflexive")
        if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
            raise NotALatticeError("order is not antisymmetric")
        li = leq.astype(np.int64)
        if np.any(((li @ li) > 0) & ~leq):
            raise NotALatticeError("order is not transitive")
        leq.setflags(write=False)
        self.order = leq
        self.n = n
        self.meet_table = self._bounds(leq, lower=True)
        self.join_table = self._bounds(leq, lower=False)
        self.bottom = self._extreme(leq, lower=True)
        self.top = self._extreme(leq, lower=False)

    @staticmethod
    def _bounds(leq: np.ndarray, lower: bool) -> np.ndarray:
        n = leq.shape[0]
        rel = leq if lower else leq.T  # rel[i, j]: i is below (resp. above) j
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                common = np.nonzero(rel[:, i] & rel[:, j])[0]
                best = [c for c in common if rel[common, c].all()]
                if len(best) != 1:
                    kind = "meet" if lower else "join"
                    raise NotALatticeError(f"elements {i} and {j} have no {kind}")
                table[i, j] = table[j, i] = best[0]
        table.setflags(write=False)
        return table

    @staticmethod
    def _extreme(leq: np.ndarray, lower: bool) -> int:
        rel = leq if lower else leq.T
        cand = np.nonzero(rel.all(axis=1))[0]
        if len(cand) != 1:
            raise NotALatticeError("lattice is not bounded")
        return int(cand[0])

    def __len__(self) -> int:
        return self.n

    def leq(self, i: int, j: int) -> bool:
        return bool(self.order[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def join(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    def is_distributive(self) -> bool:
        m, j = self.meet_table, self.join_table
        r = range(self.n)
        return all(m[a, j[b, c]] == j[m[a, b], m[a, c]] for a in r for b in r for c in r)

    def is_modular(self) -> bool:
        m, j = self.meet_table, self.join_table
        r = range(self.n)
        return all(
            m[j[a, b], c] == j[a, m[b, c]] for a in r for b in r for c in r if self.order[a, c]
        )

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self._irreducible(i, self.order))

    @cached_property
    def meet_irreducibles(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self._irreducible(i, self.order.T))

    @staticmethod
    def _irreducible(i: int, leq: np.ndarray) -> bool:
        below = [k for k in range(leq.shape[0]) if leq[k, i] and k != i]
        maximal = [k for k in below if not any(leq[k, m] and m != k for m in below)]
        return len(maximal) == 1

    def is_meet_preserving(self, f) -> bool:
        f = np.asarray(f)
        if f[self.top] != self.top:
            return False
        m = self.meet_table
        return all(f[m[a, b]] == m[f[a], f[b]] for a in range(self.n) for b in range(self.n))

    def is_join_preserving(self, f) -> bool:
        f = np.asarray(f)
        if f[self.bottom] != self.bottom:
            return False
        j = self.join_table
        return all(f[j[a, b]] == j[f[a], f[b]] for a in range(self.n) for b in range(self.n))

    def normal_maps(self, kind: str) -> list[tuple[int, ...]]:
        """All meet-preserving (``kind="box"``) or join-preserving (``"diamond"``) self-maps."""
        test = self.is_meet_preserving if kind == "box" else self.is_join_preserving
        pinned = self.top if kind == "box" else self.bottom
        free = [i for i in range(self.n) if i != pinned]
        out = []
        for values in product(range(self.n), repeat=len(free)):
            f = [0] * self.n
            f[pinned] = pinned
            for i, v in zip(free, values):
                f[i] = v
            if test(f):
                out.append(tuple(f))
        return out

    def __repr__(self) -> str:
        return f"FiniteLattice({self.n} elements)"


def chain(n: int) -> FiniteLattice:
    idx = np.arange(n)
    return FiniteLattice(idx[:, None] <= idx[None, :])


def boolean_lattice(k: int) -> FiniteLattice:
    """The powerset of a ``k``-element set, elements encoded as bitmasks."""
    n = 1 << k
    return FiniteLattice([[i & ~j == 0 for j in range(n)] for i in range(n)])


def pentagon() -> FiniteLattice:
    # 0 < 1 < 2 < 4, 0 < 3 < 4
    pairs = {(0, 1), (1, 2), (2, 4), (0, 3), (3, 4), (0, 2), (0, 4), (1, 4)}
    return FiniteLattice([[i == j or (i, j) in pairs for j in range(5)] for i in range(5)])


def diamond_m3() -> FiniteLattice:
    return FiniteLattice([[i == j or i == 0 or j == 4 for j in range(5)] for i in range(5)])


def _canonical(order: np.ndarray, middle: list[int]) -> bytes:
    n = order.shape[0]
    best = None
    for perm in permutations(middle):
        p = [0, *perm, n - 1]
        key = order[np.ix_(p, p)].tobytes()
        if best is None or key < best:
            best = key
    return best


def enumerate_lattices(n: int) -> list[FiniteLattice]:
    """All lattices with ``n`` elements up to isomorphism (practical for ``n <= 6``).

    Element 0 is the bottom and ``n - 1`` the top; orders on the middle
    elements are enumerated and deduplicated under permutation.
    """
    if n < 1:
        return []
    if n == 1:
        return [FiniteLattice([[True]])]
    middle = list(range(1, n - 1))
    pairs = [(i, j) for i in middle for j in middle if i < j]
    seen: set[bytes] = set()
    out = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        order = np.eye(n, dtype=bool)
        order[0, :] = True
        order[:, n - 1] = True
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                order[i, j] = True
            elif c == 2:
                order[j, i] = True
        oi = order.astype(np.int64)
        if np.any(((oi @ oi) > 0) & ~order):
            continue
        key = _canonical(order, middle)
        if key in seen:
            continue
        try:
            lat = FiniteLattice(order)
        except NotALatticeError:
            continue
        seen.add(key)
        out.append(lat)
    return out
