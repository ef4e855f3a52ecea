import json
from importlib.resources import files

import jsonschema
import pytest

from kxring.cli import SCHEMA_VERSION, main

SCHEMA = json.loads(files("kxring").joinpath(f"schemas/output-{SCHEMA_VERSION}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.rstrip("\n"), out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_decompose_text(capsys):
    assert run(capsys, "decompose", "--field", "q", "--lhs", "(x-1)^2", "--rhs", "(x-1)^3")[:2] == \
        (0, "(x-1)^4 + (x-1)^2")


def test_decompose_verify_json(capsys):
    code, doc = run_json(capsys, "decompose", "--field", "q", "--lhs", "(x-1)^2", "--rhs", "(x-1)^3", "--verify")
    assert code == 0
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["verification"]["match"] is True
    assert doc["terms"] == [{"kind": "band", "poly": "x-1", "s": 4, "coeff": 1},
                            {"kind": "band", "poly": "x-1", "s": 2, "coeff": 1}]


def test_decompose_realclosed(capsys):
    code, out, _ = run(capsys, "decompose", "--field", "rc", "--lhs", "R(1+i,1)", "--rhs", "R(1+i,1)", "--verify")
    assert code == 0
    assert out.splitlines() == ["2*J(2,1) + R(2i,1)", "verified: match"]


def test_dump_matrix(capsys):
    code, _, err = run(capsys, "decompose", "--field", "f3", "--lhs", "(x-1)^2", "--rhs", "(x-1)^2",
                       "--dump-matrix")
    assert code == 0
    doc = json.loads(err)
    assert len(doc["lhs_matrix"]) == 4 and len(doc["predicted_matrix"]) == 4


def test_ring_virtual(capsys):
    code, doc = run_json(capsys, "ring", "--field", "q", "--lhs", "x + (x-1)", "--rhs", "x + (x-1)")
    assert code == 0
    assert doc["result"] == "3*x + (x-1)^1"
    assert doc["dim"] == 4


def test_star_text(capsys):
    code, out, _ = run(capsys, "star", "--field", "q", "--f", "x^2-x+1", "--g", "x^2-x+1")
    assert code == 0
    assert out == "(x^2+x+1)^1 * (x-1)^2"


def test_star_check_roots(capsys):
    code, doc = run_json(capsys, "star", "--field", "f7", "--f", "x^3+2", "--g", "x^2+1", "--check-roots")
    assert code == 0 and doc["roots_check"] is True


def test_factor(capsys):
    code, doc = run_json(capsys, "factor", "--field", "q", "--poly", "2x^4-2")
    assert code == 0
    assert doc["result"] == "2 * (x^2+1)^1 * (x-1)^1 * (x+1)^1"


def test_green(capsys):
    assert run(capsys, "green", "--p", "3", "--to-w", "8")[:2] == (0, "w1^2*w0 + w1 - w0")
    assert run(capsys, "green", "--p", "3", "--expand", "w1^2*w0")[:2] == (0, "v8 - v4 + 2*v2")
    code, doc = run_json(capsys, "green", "--p", "2", "--s", "2", "--t", "2")
    assert doc["terms"] == [{"s": 2, "coeff": 2}]


def test_quiver(capsys):
    code, doc = run_json(capsys, "quiver", "--n", "1", "--field", "q", "--lhs", "S(0,1)", "--rhs", "S(0,2)")
    assert code == 0
    assert doc["result"] == "S(0,1) + S(0,0)"
    assert doc["dim_vector"] == [2, 1]


def test_verify_small(capsys):
    code, doc = run_json(capsys, "verify", "--cases", "3", "--seed", "4")
    assert code == 0 and doc["ok"] is True
    assert [s["name"] for s in doc["suites"]] == ["char0", "charp", "nilpotent", "realclosed", "quiver"]


@pytest.mark.parametrize("argv", [
    ["decompose", "--field", "q", "--lhs", "(x^2-1)^1", "--rhs", "x"],
    ["decompose", "--field", "q", "--lhs", "(x-1", "--rhs", "x"],
    ["decompose", "--field", "f4", "--lhs", "x", "--rhs", "x"],
    ["star", "--field", "q", "--f", "x^2+x", "--g", "x-1"],
    ["green", "--p", "4", "--s", "2", "--t", "2"],
    ["quiver", "--n", "1", "--field", "q", "--lhs", "S(0,1)", "--rhs", "S(0,1)", "--orientation", "+"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("kxring: error:")


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["factor", "--field", "q", "--poly", "x", "--bogus"])
    assert info.value.code == 2


def test_deterministic_output(capsys):
    argv = ["verify", "--cases", "4", "--seed", "11", "--format", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
