import json

import numpy as np
import pytest

from roughconcepts.errors import CxtFormatError, IncompatibleRelationError, SchemaError
from roughconcepts.generate import random_polarity
from roughconcepts.io import (
    dumps,
    enriched_to_dict,
    frame_to_dict,
    lattice_to_dot,
    read_algebra,
    read_conceptual_space,
    read_cxt,
    read_cxt_named,
    read_document,
    read_enriched,
    read_frame,
    read_mv_context,
    read_mv_frame,
    read_space,
    write_cxt,
)
from roughconcepts.lattice import Polarity, enumerate_concepts
from roughconcepts.lifting import KripkeFrame, lift_kripke
from roughconcepts.relations import classify_context

EX1_CXT = "B\n\n3\n3\n\na\nb\nc\nx\ny\nz\n.XX\n...\n...\n"

EX1_DOC = {
    "objects": ["a", "b", "c"],
    "features": ["x", "y", "z"],
    "incidence": [[0, 1, 1], [0, 0, 0], [0, 0, 0]],
    "box": [[0, 1, 1], [1, 0, 0], [0, 0, 0]],
    "diamond": [[0, 0, 0], [1, 0, 0], [1, 0, 0]],
}


def test_read_ex1_cxt():
    P = read_cxt(EX1_CXT)
    assert P.objects == ("a", "b", "c")
    assert P.incidence.astype(int).tolist() == [[0, 1, 1], [0, 0, 0], [0, 0, 0]]


def test_cxt_round_trip_is_byte_identical():
    rng = np.random.default_rng(5)
    for i in range(100):
        nA, nX = (int(v) for v in rng.integers(1, 7, size=2))
        P = random_polarity(nA, nX, rng)
        P = Polarity([f"o{j}" for j in range(nA)], [f"f{j}" for j in range(nX)], P.incidence)
        text = write_cxt(P, name=f"ctx{i}")
        name, Q = read_cxt_named(text)
        assert name == f"ctx{i}" and Q == P
        assert write_cxt(Q, name=name) == text


def test_truncated_cxt_reports_line():
    text = write_cxt(read_cxt(EX1_CXT))
    broken = text.rstrip("\n")[:-1] + "\n"
    with pytest.raises(CxtFormatError) as err:
        read_cxt(broken)
    assert err.value.kind == "row-length"
    assert err.value.line == len(broken.splitlines())


def test_cxt_header_and_count_errors():
    with pytest.raises(CxtFormatError) as err:
        read_cxt("A\n")
    assert err.value.kind == "header"
    with pytest.raises(CxtFormatError) as err:
        read_cxt("B\n\n3\n3\n\na\nb\n")
    assert err.value.kind == "count-mismatch"


def test_writer_rejects_unrepresentable_names():
    P = Polarity(["a b", "c"], ["x"], [[1], [0]])
    with pytest.raises(ValueError):
        write_cxt(Polarity(["a\nb"], ["x"], [[1]]))
    assert read_cxt(write_cxt(P)) == P


def test_permissive_document():
    with pytest.raises(IncompatibleRelationError):
        read_enriched(EX1_DOC)
    F = read_enriched({**EX1_DOC, "permissive": True})
    assert not F.verified and "rbox" in F.incompatible


def test_missing_diamond_is_schema_error():
    doc = {k: v for k, v in EX1_DOC.items() if k != "diamond"}
    with pytest.raises(SchemaError):
        read_document(doc)
    with pytest.raises(SchemaError):
        read_document({**EX1_DOC, "box": [[0, 1], [1, 0]]})
    with pytest.raises(SchemaError):
        read_document("{not json")


def test_lifted_frame_document_classifies_as_approx():
    X = KripkeFrame("abc", [[1, 0, 0], [0, 1, 1], [0, 1, 1]])
    F = read_enriched(dumps(enriched_to_dict(lift_kripke(X))))
    assert classify_context(F).is_approx
    assert read_frame(frame_to_dict(X)).rel.tolist() == X.rel.tolist()


def test_valuation_must_be_extent():
    doc = {**EX1_DOC, "permissive": True, "valuation": {"p": ["a"]}}
    assert read_document(doc).valuation["p"].extent == 0b001
    with pytest.raises(SchemaError):
        read_document({**doc, "valuation": {"p": ["b"]}})


def test_spaces():
    P = read_space({"carrier": [1, 2, 3], "blocks": [[1], [2, 3]], "weights": ["2/5", "3/5"]})
    assert P.weights[0].denominator == 5
    C = read_conceptual_space(
        {
            "context": {"objects": ["a", "b", "c"], "features": ["x", "y", "z"], "incidence": EX1_DOC["incidence"]},
            "subalgebra": [0, 2],
            "mu": ["1", "0"],
        }
    )
    assert len(C.subalgebra) == 2
    with pytest.raises(SchemaError):
        read_space({"carrier": [1], "blocks": [[1]], "weights": ["one"]})


def test_many_valued_documents():
    assert read_algebra("goedel3").names == ("0", "1/2", "1")
    H = read_algebra({"carrier": ["0", "1"], "order": [["0", "1"]]})
    assert H.n == 2
    X = read_mv_frame({"algebra": "goedel3", "states": ["v", "w"], "relation": [["1", "0"], ["1/2", "1"]]})
    assert X.rel.tolist() == [[2, 0], [1, 2]]
    F = read_mv_context(
        {
            "algebra": "goedel3",
            "objects": ["a"],
            "features": ["x"],
            "incidence": [["1/2"]],
            "box": [["1/2"]],
            "diamond": [["1/2"]],
        }
    )
    assert F.verified
    with pytest.raises(SchemaError):
        read_mv_frame({"algebra": "goedel3", "states": ["v"], "relation": [["2"]]})


def test_dot_export():
    L = enumerate_concepts(read_cxt(EX1_CXT))
    dot = lattice_to_dot(L)
    assert dot.count("->") == 2
    assert sum(1 for line in dot.splitlines() if "label=" in line) == 3
    assert json.loads(dumps({"a": 1})) == {"a": 1}
