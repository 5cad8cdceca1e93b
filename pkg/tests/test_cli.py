import json

import pytest

from logconn.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from logconn.connection import BundleType
from logconn.gauge import is_equivalent
from logconn.serialize import from_json


def run(tmp_path, name, *argv):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.mark.parametrize("kind", ["fuchsian", "connection", "pqpoint", "garnier"])
def test_sample_is_deterministic(tmp_path, kind):
    code1, a = run(tmp_path, "a.json", "sample", kind, "--seed", "5", "-n", "3")
    code2, b = run(tmp_path, "b.json", "sample", kind, "--seed", "5", "-n", "3")
    assert code1 == code2 == EXIT_OK
    assert a == b and len(a) == 3
    _, c = run(tmp_path, "c.json", "sample", kind, "--seed", "6", "-n", "3")
    assert c != a


def test_sample_float_backend(tmp_path):
    code, doc = run(tmp_path, "f.json", "sample", "fuchsian", "--backend", "float")
    assert code == EXIT_OK
    assert isinstance(doc["A"][0][0][0]["re"], float)


def test_chart_roundtrip(tmp_path):
    _, pt = run(tmp_path, "pt.json", "sample", "pqpoint", "--seed", "3")
    code, conn = run(tmp_path, "conn.json", "chart", "--direction", "from-pq",
                     "--in", write(tmp_path, "in.json", pt))
    assert code == EXIT_OK and conn["bundle"] == [0, 1]
    code, back = run(tmp_path, "back.json", "chart", "--direction", "to-pq",
                     "--in", str(tmp_path / "conn.json"))
    assert code == EXIT_OK and back == pt


def test_chart_to_cubic(tmp_path):
    _, pt = run(tmp_path, "pt.json", "sample", "pqpoint", "--shifted", "--seed", "4")
    code, image = run(tmp_path, "cubic.json", "chart", "--direction", "to-cubic",
                      "--in", str(tmp_path / "pt.json"))
    assert code == EXIT_OK and set(image) == {"X", "Y"}
    _, plain = run(tmp_path, "plain.json", "sample", "pqpoint", "--seed", "4")
    code, _ = run(tmp_path, "x.json", "chart", "--direction", "to-cubic",
                  "--in", str(tmp_path / "plain.json"))
    assert code == EXIT_FAIL


def test_transform_with_empty_log_is_identity(tmp_path):
    _, conn = run(tmp_path, "c.json", "sample", "connection", "--shape", "0,1", "--seed", "2")
    code, out = run(tmp_path, "o.json", "transform", "--in", str(tmp_path / "c.json"))
    assert code == EXIT_OK and out["applied"] == []
    out.pop("applied")
    assert from_json(out).same_as(from_json(conn))


def test_transform_to_a_fuchsian_bundle(tmp_path):
    _, pt = run(tmp_path, "pt.json", "sample", "pqpoint", "--shifted", "--seed", "1")
    run(tmp_path, "c.json", "chart", "--direction", "from-pq", "--in", str(tmp_path / "pt.json"))
    moves = write(tmp_path, "m.json", [{"move": "elm_minus", "i": 3}])
    code, out = run(tmp_path, "o.json", "transform", "--in", str(tmp_path / "c.json"), "--moves", moves)
    assert code == EXIT_OK and out["bundle"] == [0, 0]
    assert [m["move"] for m in out["applied"]] == ["elm_minus"]


def test_transform_twist_and_raise_back(tmp_path):
    _, conn = run(tmp_path, "c.json", "sample", "connection", "--shape", "0,1", "--seed", "7")
    doc = {"connection": conn, "moves": [
        {"move": "twist", "k": -1, "lambda": [1, 0, 0, 0]},
        {"move": "elm_plus", "i": 0}, {"move": "elm_plus", "i": 0}]}
    code, out = run(tmp_path, "o.json", "transform", "--in", write(tmp_path, "d.json", doc))
    assert code == EXIT_OK
    out.pop("applied")
    assert is_equivalent(from_json(out), from_json(conn))


def test_garnier_roundtrip(tmp_path):
    code, pt = run(tmp_path, "g.json", "sample", "garnier", "--n", "6", "--seed", "3")
    assert code == EXIT_OK and len(pt["pairs"]) == 3
    code, conn = run(tmp_path, "c.json", "garnier", "--in", str(tmp_path / "g.json"))
    assert code == EXIT_OK and conn["bundle"] == [0, 1]
    code, back = run(tmp_path, "b.json", "garnier", "--in", str(tmp_path / "c.json"))
    assert code == EXIT_OK and back == pt
    code, nf = run(tmp_path, "n.json", "garnier", "--in", str(tmp_path / "g.json"),
                   "--direction", "normal-form")
    assert from_json(nf).bundle == BundleType(0, 4)


def test_verify_suites(tmp_path):
    code, doc = run(tmp_path, "v.json", "verify", "cubic", "-n", "20")
    assert code == EXIT_OK and doc["ok"] and doc["total"] == 40
    code, doc = run(tmp_path, "w.json", "verify", "--suite", "elm", "-n", "2", "--backend", "float")
    assert code == EXIT_OK and doc["ok"]


def test_verify_chart_writes_csv(tmp_path):
    csv_path = tmp_path / "j.csv"
    code, doc = run(tmp_path, "v.json", "verify", "chart", "-n", "3", "--emit-csv", str(csv_path))
    assert code == EXIT_OK and doc["ok"]
    assert abs(doc["jacobian_ratio"]["re"] + 2) < 1e-6
    assert len(csv_path.read_text().splitlines()) == 101


def test_usage_errors(tmp_path, capsys):
    assert main(["verify", "nonsense"]) == EXIT_USAGE
    bad = write(tmp_path, "bad.json", {"unknown": 1})
    assert main(["chart", "--direction", "to-pq", "--in", bad]) == EXIT_USAGE
    (tmp_path / "broken.json").write_text("{")
    assert main(["transform", "--in", str(tmp_path / "broken.json")]) == EXIT_USAGE
    assert main(["sample", "connection", "--shape", "zero"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as err:
        main(["sample", "fuchsian", "--tol", "-1"])
    assert err.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == EXIT_USAGE


def test_failed_move_exits_one(tmp_path):
    _, conn = run(tmp_path, "c.json", "sample", "connection", "--seed", "1")
    moves = write(tmp_path, "m.json", [{"move": "twist", "k": 0, "lambda": [1, 0, 0, 0]}])
    assert main(["transform", "--in", str(tmp_path / "c.json"), "--moves", moves]) == EXIT_FAIL
