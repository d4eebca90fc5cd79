"""JSON documents for enriched contexts, Kripke frames, probability spaces and many-valued inputs.

Every reader validates against a JSON Schema first, then builds the objects
and lets their constructors enforce the mathematical invariants.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import jsonschema
import numpy as np

from ..dempster_shafer import ConceptualProbSpace, PartitionProbSpace
from ..errors import SchemaError
from ..lattice import FormalConcept, Polarity, concept_from_extent
from ..lifting import KripkeFrame
from ..manyvalued import SHIPPED_ALGEBRAS, AEnrichedContext, AKripkeFrame, APolarity, HeytingAlgebra
from ..relations import EnrichedContext, Sort, TypedRelation

_MATRIX01 = {"type": "array", "items": {"type": "array", "items": {"enum": [0, 1, True, False]}}}
_NAMES = {"type": "array", "items": {"type": ["string", "integer"]}}
_RATIONAL = {"type": ["string", "integer"], "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}

CONTEXT_SCHEMA = {
    "type": "object",
    "required": ["objects", "features", "incidence", "box", "diamond"],
    "properties": {
        "name": {"type": "string"},
        "objects": _NAMES,
        "features": _NAMES,
        "incidence": _MATRIX01,
        "box": _MATRIX01,
        "diamond": _MATRIX01,
        "rtri": _MATRIX01,
        "ltri": _MATRIX01,
        "permissive": {"type": "boolean"},
        "valuation": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": ["string", "integer"]}},
        },
    },
    "additionalProperties": False,
}

POLARITY_SCHEMA = {
    "type": "object",
    "required": ["objects", "features", "incidence"],
    "properties": {"name": {"type": "string"}, "objects": _NAMES, "features": _NAMES, "incidence": _MATRIX01},
}

FRAME_SCHEMA = {
    "type": "object",
    "required": ["states", "relation"],
    "properties": {"states": _NAMES, "relation": _MATRIX01},
    "additionalProperties": False,
}

SPACE_SCHEMA = {
    "type": "object",
    "required": ["carrier", "blocks", "weights"],
    "properties": {
        "carrier": _NAMES,
        "blocks": {"type": "array", "items": _NAMES},
        "weights": {"type": "array", "items": _RATIONAL},
    },
    "additionalProperties": False,
}

CONCEPTUAL_SPACE_SCHEMA = {
    "type": "object",
    "required": ["context", "subalgebra", "mu"],
    "properties": {
        "context": POLARITY_SCHEMA,
        "subalgebra": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "mu": {"type": "array", "items": _RATIONAL},
    },
    "additionalProperties": False,
}

ALGEBRA_SCHEMA = {
    "oneOf": [
        {"type": "string", "enum": sorted(SHIPPED_ALGEBRAS)},
        {
            "type": "object",
            "required": ["carrier", "order"],
            "properties": {
                "carrier": {"type": "array", "items": {"type": "string"}},
                "order": {"type": "array", "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}},
            },
            "additionalProperties": False,
        },
    ]
}

_VALUES = {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}

MV_FRAME_SCHEMA = {
    "type": "object",
    "required": ["algebra", "states", "relation"],
    "properties": {"algebra": ALGEBRA_SCHEMA, "states": _NAMES, "relation": _VALUES},
    "additionalProperties": False,
}

MV_CONTEXT_SCHEMA = {
    "type": "object",
    "required": ["algebra", "objects", "features", "incidence", "box", "diamond"],
    "properties": {
        "algebra": ALGEBRA_SCHEMA,
        "objects": _NAMES,
        "features": _NAMES,
        "incidence": _VALUES,
        "box": _VALUES,
        "diamond": _VALUES,
        "permissive": {"type": "boolean"},
    },
    "additionalProperties": False,
}


def _load(doc) -> Any:
    if isinstance(doc, (str, bytes)):
        try:
            return json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return doc


def _validate(doc, schema) -> dict:
    doc = _load(doc)
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "document"
        raise SchemaError(f"{where}: {exc.message}") from None
    return doc


def _shape(name: str, m, rows: int, cols: int) -> np.ndarray:
    if len(m) != rows or any(len(r) != cols for r in m):
        raise SchemaError(f"{name}: expected a {rows}×{cols} matrix")
    return np.array(m, dtype=bool).reshape(rows, cols)


@dataclass
class ContextDocument:
    """A polarity with named sorted relations and named valuations (given by extents)."""

    polarity: Polarity
    relations: dict[str, TypedRelation] = field(default_factory=dict)
    valuation: dict[str, FormalConcept] = field(default_factory=dict)
    permissive: bool = False
    name: str = ""

    def enriched(self) -> EnrichedContext:
        r = self.relations
        return EnrichedContext(
            self.polarity, r["box"], r["diamond"], r.get("rtri"), r.get("ltri"), permissive=self.permissive
        )


def read_polarity(doc) -> Polarity:
    d = _validate(doc, POLARITY_SCHEMA)
    nA, nX = len(d["objects"]), len(d["features"])
    return Polarity(d["objects"], d["features"], _shape("incidence", d["incidence"], nA, nX))


def read_document(doc) -> ContextDocument:
    d = _validate(doc, CONTEXT_SCHEMA)
    nA, nX = len(d["objects"]), len(d["features"])
    P = Polarity(d["objects"], d["features"], _shape("incidence", d["incidence"], nA, nX))
    shapes = {"box": (Sort.AX, nA, nX), "diamond": (Sort.XA, nX, nA), "rtri": (Sort.AA, nA, nA), "ltri": (Sort.XX, nX, nX)}
    rels = {}
    for key, (sort, r, c) in shapes.items():
        if key in d:
            rels[key] = TypedRelation(sort, _shape(key, d[key], r, c))
    val = {}
    for atom, ext in d.get("valuation", {}).items():
        try:
            mask = P.object_mask(ext)
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"valuation/{atom}: unknown object {exc}") from None
        c = concept_from_extent(P, mask)
        if c.extent != mask:
            raise SchemaError(f"valuation/{atom}: {sorted(map(str, ext))} is not a concept extent")
        val[atom] = c
    return ContextDocument(P, rels, val, bool(d.get("permissive", False)), d.get("name", ""))


def read_enriched(doc, permissive: bool | None = None) -> EnrichedContext:
    """Build and compatibility-check; ``permissive`` overrides the document flag."""
    D = read_document(doc)
    if permissive is not None:
        D.permissive = permissive
    return D.enriched()


def _ints(m) -> list[list[int]]:
    return [[int(v) for v in row] for row in np.asarray(m)]


def _plain(names) -> list:
    return [n if isinstance(n, (str, int)) and not isinstance(n, bool) else str(n) for n in names]


def polarity_to_dict(P: Polarity) -> dict:
    return {"objects": _plain(P.objects), "features": _plain(P.features), "incidence": _ints(P.incidence)}


def enriched_to_dict(F: EnrichedContext, valuation: dict[str, FormalConcept] | None = None) -> dict:
    d = polarity_to_dict(F.base)
    d["box"] = _ints(F.rbox.matrix)
    d["diamond"] = _ints(F.rdia.matrix)
    if F.rtri is not None:
        d["rtri"] = _ints(F.rtri.matrix)
    if F.ltri is not None:
        d["ltri"] = _ints(F.ltri.matrix)
    if not F.verified:
        d["permissive"] = True
    if valuation:
        d["valuation"] = {p: _plain(F.base.object_names(c.extent)) for p, c in valuation.items()}
    return d


def read_frame(doc) -> KripkeFrame:
    d = _validate(doc, FRAME_SCHEMA)
    n = len(d["states"])
    return KripkeFrame(d["states"], _shape("relation", d["relation"], n, n))


def frame_to_dict(X: KripkeFrame) -> dict:
    return {"states": _plain(X.states), "relation": _ints(X.rel)}


def _rational(v) -> Fraction:
    return Fraction(str(v).replace(" ", ""))


def read_space(doc) -> PartitionProbSpace:
    d = _validate(doc, SPACE_SCHEMA)
    return PartitionProbSpace(d["carrier"], d["blocks"], [_rational(w) for w in d["weights"]])


def read_conceptual_space(doc) -> ConceptualProbSpace:
    d = _validate(doc, CONCEPTUAL_SPACE_SCHEMA)
    if len(d["subalgebra"]) != len(d["mu"]):
        raise SchemaError("mu: one value per subalgebra element is required")
    P = read_polarity(d["context"])
    return ConceptualProbSpace(P, d["subalgebra"], {i: _rational(w) for i, w in zip(d["subalgebra"], d["mu"])})


def read_algebra(doc) -> HeytingAlgebra:
    """A shipped algebra name or ``{"carrier": [...], "order": [[lower, upper], ...]}``."""
    if isinstance(doc, str) and doc.strip() in SHIPPED_ALGEBRAS:
        return SHIPPED_ALGEBRAS[doc.strip()]()
    d = _validate(doc, ALGEBRA_SCHEMA)
    if isinstance(d, str):
        return SHIPPED_ALGEBRAS[d]()
    return HeytingAlgebra.from_order(d["carrier"], [tuple(p) for p in d["order"]])


def _values(H: HeytingAlgebra, name: str, m, rows: int, cols: int) -> np.ndarray:
    idx = {v: i for i, v in enumerate(H.names)}
    if len(m) != rows or any(len(r) != cols for r in m):
        raise SchemaError(f"{name}: expected a {rows}×{cols} matrix")
    try:
        return np.array([[idx[v] for v in r] for r in m], dtype=np.int64).reshape(rows, cols)
    except KeyError as exc:
        raise SchemaError(f"{name}: {exc.args[0]!r} is not a truth value") from None


def read_mv_frame(doc) -> AKripkeFrame:
    d = _validate(doc, MV_FRAME_SCHEMA)
    H = read_algebra(d["algebra"])
    n = len(d["states"])
    return AKripkeFrame(H, d["states"], _values(H, "relation", d["relation"], n, n))


def read_mv_context(doc) -> AEnrichedContext:
    d = _validate(doc, MV_CONTEXT_SCHEMA)
    H = read_algebra(d["algebra"])
    nA, nX = len(d["objects"]), len(d["features"])
    P = APolarity(H, d["objects"], d["features"], _values(H, "incidence", d["incidence"], nA, nX))
    return AEnrichedContext(
        P,
        _values(H, "box", d["box"], nA, nX),
        _values(H, "diamond", d["diamond"], nX, nA),
        permissive=bool(d.get("permissive", False)),
    )


def concept_names(P: Polarity, c: FormalConcept) -> tuple[list, list]:
    return _plain(P.object_names(c.extent)), _plain(P.feature_names(c.intent))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

