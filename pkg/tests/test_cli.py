import json

import pytest

from roughconcepts.cli import main

EX1_CXT = "B\n\n3\n3\n\na\nb\nc\nx\ny\nz\n.XX\n...\n...\n"
S5_FRAME = {"states": ["a", "b", "c"], "relation": [[1, 0, 0], [0, 1, 1], [0, 1, 1]]}


@pytest.fixture
def files(tmp_path):
    (tmp_path / "ex1.cxt").write_text(EX1_CXT)
    (tmp_path / "frame.json").write_text(json.dumps(S5_FRAME))
    return tmp_path


def test_lattice_with_dot(files, capsys):
    dot = files / "out.dot"
    assert main(["lattice", str(files / "ex1.cxt"), "--dot", str(dot)]) == 0
    assert "3 concepts" in capsys.readouterr().out
    assert dot.read_text().count("->") == 2


def test_correspond_random(capsys):
    assert main(["correspond", "--item", "2", "--random", "500", "--max", "4", "--seed", "42"]) == 0
    assert "agree=500/500" in capsys.readouterr().out


def test_correspond_exhaustive_triangle_item(capsys):
    assert main(["correspond", "--item", "T4", "--exhaustive"]) == 0
    assert "agree=75/75" in capsys.readouterr().out


def test_random_needs_seed():
    with pytest.raises(SystemExit) as err:
        main(["correspond", "--item", "1", "--random", "5"])
    assert err.value.code == 2


def test_lift_kripke_verify(files, capsys):
    out = files / "lifted.json"
    assert main(["lift-kripke", str(files / "frame.json"), "--verify", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "iso: pass" in text and "approximation space: true" in text
    assert main(["classify", str(out)]) == 0
    assert "is_approx: true" in capsys.readouterr().out


def test_random_is_deterministic(files, capsys):
    a, b = files / "a.json", files / "b.json"
    main(["random", "--seed", "1", "--objects", "3", "--features", "3", "--out", str(a)])
    main(["random", "--seed", "1", "--objects", "3", "--features", "3", "--out", str(b)])
    assert a.read_text() == b.read_text()
    doc = json.loads(a.read_text())
    assert len(doc["objects"]) == 3 and "permissive" not in doc


def test_valid_and_replay(files, capsys):
    frame = files / "nonrefl.json"
    frame.write_text(json.dumps({"states": ["a", "b"], "relation": [[0, 1], [0, 0]]}))
    ctx = files / "ctx.json"
    main(["lift-kripke", str(frame), "--out", str(ctx)])
    report = files / "report.json"
    assert main(["valid", str(ctx), "box p |- p", "--report", str(report)]) == 1
    assert "not valid" in capsys.readouterr().out
    assert main(["valid", str(ctx), "p |- T"]) == 0
    assert main(["replay", str(report)]) == 0
    assert "reproduced" in capsys.readouterr().out


def test_replay_without_counterexample(files):
    report = files / "ok.json"
    main(["correspond", "--item", "2", "--exhaustive", "--report", str(report)])
    assert main(["replay", str(report)]) == 2


def test_belief(files, capsys):
    space = files / "space.json"
    space.write_text(json.dumps({"carrier": [1, 2, 3], "blocks": [[1], [2, 3]], "weights": ["2/5", "3/5"]}))
    assert main(["belief", str(space), "--subset", "1", "2"]) == 0
    out = capsys.readouterr().out
    assert "{1, 2}: belief=2/5 plausibility=1" in out
    assert "canonical relation: 1 0 0; 0 1 1; 0 1 1" in out


def test_mv_check(files, capsys):
    frame = files / "mv.json"
    frame.write_text(json.dumps({"algebra": "goedel3", "states": ["v", "w"], "relation": [["1", "0"], ["1/2", "0"]]}))
    assert main(["mv-check", str(frame)]) == 0
    assert main(["mv-check", "--random", "50", "--seed", "3"]) == 0
    assert "reflexivity agree=50/50" in capsys.readouterr().out


def test_errors_exit_2(files, capsys):
    bad = files / "bad.json"
    bad.write_text(json.dumps({"objects": ["a"], "features": ["x"], "incidence": [[1]], "box": [[1]]}))
    assert main(["classify", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["lattice", str(files / "missing.cxt")]) == 2
