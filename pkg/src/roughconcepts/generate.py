"""Seeded random polarities, relations and enriched contexts.

Relations are made I-compatible by closing every column and every row
section on its carrier until nothing changes. Closure only adds pairs, so
the loop terminates, and starting inside ``I`` (or its converse) keeps the
result inside it.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from . import bits
from .lattice import Polarity
from .relations import EnrichedContext, Sort, TypedRelation, is_i_compatible


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_polarity(n_objects: int, n_features: int, seed=None, density: float = 0.5) -> Polarity:
    rng = _rng(seed)
    mat = rng.random((n_objects, n_features)) < density
    return Polarity([f"a{i}" for i in range(n_objects)], [f"x{j}" for j in range(n_features)], mat)


def _close(P: Polarity, side: str, mask: int) -> int:
    if side == "A":
        return P.down(P.up(mask))
    return P.up(P.down(mask))


def close_relation(P: Polarity, sort: Sort | str, matrix) -> TypedRelation:
    """The least I-compatible relation of ``sort`` containing ``matrix``."""
    sort = Sort(sort)
    mat = np.array(matrix, dtype=bool)
    rs, cs = sort.row_side, sort.col_side
    while True:
        before = mat.copy()
        for j in range(mat.shape[1]):
            col = _close(P, rs, bits.from_bools(mat[:, j]))
            mat[:, j] = bits.to_bools(col, mat.shape[0])
        for i in range(mat.shape[0]):
            row = _close(P, cs, bits.from_bools(mat[i, :]))
            mat[i, :] = bits.to_bools(row, mat.shape[1])
        if np.array_equal(before, mat):
            return TypedRelation(sort, mat)


def random_relation(
    P: Polarity, sort: Sort | str, seed=None, density: float = 0.3, within=None
) -> TypedRelation:
    """A random I-compatible relation; with ``within`` the seed pairs are drawn inside it."""
    sort = Sort(sort)
    rng = _rng(seed)
    n = {"A": P.n_objects, "X": P.n_features}
    shape = (n[sort.row_side], n[sort.col_side])
    mat = rng.random(shape) < density
    if within is not None:
        mat &= np.asarray(within, dtype=bool)
    return close_relation(P, sort, mat)


@dataclass(frozen=True)
class ContextParams:
    max_objects: int = 4
    max_features: int = 4
    min_objects: int = 1
    min_features: int = 1
    density: float = 0.5
    relation_density: float = 0.3
    triangles: bool = False
    reflexive: bool = False  # draw R_box inside I and R_diamond inside I^T


def random_enriched_context(params: ContextParams | None = None, seed=None) -> EnrichedContext:
    """Deterministic for a fixed integer seed; always I-compatible."""
    p = params or ContextParams()
    rng = _rng(seed)
    nA = int(rng.integers(p.min_objects, p.max_objects + 1))
    nX = int(rng.integers(p.min_features, p.max_features + 1))
    P = random_polarity(nA, nX, rng, p.density)
    I = P.incidence
    rbox = random_relation(P, Sort.AX, rng, p.relation_density, I if p.reflexive else None)
    rdia = random_relation(P, Sort.XA, rng, p.relation_density, I.T if p.reflexive else None)
    rtri = ltri = None
    if p.triangles:
        rtri = random_relation(P, Sort.AA, rng, p.relation_density)
        ltri = random_relation(P, Sort.XX, rng, p.relation_density)
    F = EnrichedContext(P, rbox, rdia, rtri, ltri)
    assert F.verified
    return F


def compatible_relations(P: Polarity, sort: Sort | str) -> list[TypedRelation]:
    """Every I-compatible relation of ``sort`` (exhaustive; tiny polarities only)."""
    sort = Sort(sort)
    n = {"A": P.n_objects, "X": P.n_features}
    r, c = n[sort.row_side], n[sort.col_side]
    out = []
    for code in range(1 << (r * c)):
        mat = np.array(bits.to_bools(code, r * c), dtype=bool).reshape(r, c)
        R = TypedRelation(sort, mat)
        if is_i_compatible(P, R):
            out.append(R)
    return out


def all_polarities(n_objects: int, n_features: int) -> Iterator[Polarity]:
    for code in range(1 << (n_objects * n_features)):
        mat = bits.to_bools(code, n_objects * n_features).reshape(n_objects, n_features)
        yield Polarity([f"a{i}" for i in range(n_objects)], [f"x{j}" for j in range(n_features)], mat)


def exhaustive_contexts(n_objects: int, n_features: int, triangles: bool = False) -> Iterator[EnrichedContext]:
    """Every I-compatible enriched context of the given size.

    With ``triangles`` the box and diamond relations are fixed to ``I`` and
    its converse and every compatible ``R_rtri`` is enumerated instead.
    """
    for P in all_polarities(n_objects, n_features):
        if triangles:
            rbox = TypedRelation(Sort.AX, P.incidence)
            rdia = TypedRelation(Sort.XA, P.incidence.T)
            for rtri in compatible_relations(P, Sort.AA):
                yield EnrichedContext(P, rbox, rdia, rtri)
            continue
        dias = compatible_relations(P, Sort.XA)
        for rbox in compatible_relations(P, Sort.AX):
            for rdia in dias:
                yield EnrichedContext(P, rbox, rdia)


def random_formula(seed, atoms=("p", "q"), depth: int = 3, modal: bool = False):
    """A random formula over ``atoms`` with ``&``, ``|``, constants and, if ``modal``, box and diamond."""
    from .formula import And, Atom, Bot, Box, Dia, Or, Top

    rng = _rng(seed)

    def build(d: int):
        r = rng.random()
        if d == 0 or r < 0.25:
            k = int(rng.integers(len(atoms) + 2))
            return Top() if k == len(atoms) else Bot() if k == len(atoms) + 1 else Atom(atoms[k])
        if modal and r < 0.45:
            return (Box if rng.random() < 0.5 else Dia)(build(d - 1))
        return (And if rng.random() < 0.5 else Or)(build(d - 1), build(d - 1))

    return build(depth)


def random_t_model(seed=None, max_objects: int = 4, max_features: int = 4, atoms=("p", "q"), density: float = 0.5):
    """A conceptual T-model whose relations are drawn inside ``I`` and closed to compatibility."""
    from .lattice import concept_from_intent
    from .tmodel import ConceptualTModel

    rng = _rng(seed)
    nA = int(rng.integers(1, max_objects + 1))
    nX = int(rng.integers(1, max_features + 1))
    P = random_polarity(nA, nX, rng, density)
    rels, val = {}, {}
    for p in atoms:
        rels[p] = random_relation(P, Sort.AX, rng, 0.6, within=P.incidence)
        val[p] = concept_from_intent(P, bits.from_bools(rng.random(nX) < 0.5))
    return ConceptualTModel(P, rels, val)
