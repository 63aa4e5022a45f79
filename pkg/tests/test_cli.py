import json
import subprocess
import sys

import numpy as np
import pytest

from ghostdim.algebra import preset
from ghostdim.cli import main
from ghostdim.io import algebra_from_json, algebra_to_json, module_from_json, module_to_json
from ghostdim.schemas import validate_output


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    validate_output(doc)
    return doc["result"]


@pytest.fixture
def exterior_file(tmp_path):
    p = tmp_path / "ext.json"
    p.write_text(json.dumps({
        "kind": "quiver", "vertices": ["v"], "arrows": [["x", "v", "v"], ["y", "v", "v"]],
        "relations": [[[1, "x*x"]], [[1, "y*y"]], [[1, "x*y"], [1, "y*x"]]], "characteristic": 2}))
    return p


def test_presets_list(capsys):
    res = run_json(capsys, "presets", "list")
    assert {"exterior", "truncated_poly", "elem_abelian", "nilpotent_loop"} <= set(res["presets"])


def test_check_file(capsys, exterior_file):
    res = run_json(capsys, "algebra", "check", str(exterior_file))
    assert res["valid"] and res["dim"] == 4 and res["loewy_length"] == 3


def test_broken_associativity_file(capsys, tmp_path):
    mult = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        mult[0, i, i] = mult[i, 0, i] = 1
    mult[1, 1, 2] = mult[2, 1, 2] = 1
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"kind": "structure", "structure_constants": mult.tolist(), "unit": [1, 0, 0],
                             "radical_basis": [[0, 1, 0], [0, 0, 1]]}))
    code, out, err = run(capsys, "check", str(p))
    assert code == 1
    assert "(1,1,1)" in err


def test_parse_error_has_position(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"kind": "quiver",\n  "vertices": [}')
    code, out, err = run(capsys, "check", str(p))
    assert code == 1 and "line 2" in err


def test_unknown_preset(capsys):
    code, out, err = run(capsys, "bounds", "--preset", "nonsense:1")
    assert code == 1 and "unknown preset" in err


@pytest.mark.parametrize("argv", [
    ["bounds", "--preset", "exterior:2:2", "--window", "5:3"],
    ["bounds", "--preset", "exterior:2:2", "--window", "abc"],
    ["bounds", "--preset", "exterior:2:2", "--max-term-dim", "0"],
    ["bounds"],
    ["nonsense-command"],
])
def test_input_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 1


def test_bounds_exterior_three(capsys):
    res = run_json(capsys, "bounds", "--preset", "exterior:3:2", "--window", "0:15")
    assert res["data"]["rep_dim_lower"] == 4
    assert res["data"]["cx"] == 3
    assert res["data"]["gorenstein"]["status"] == "known"


def test_bounds_markdown(capsys):
    code, out, err = run(capsys, "bounds", "--preset", "exterior:2:2", "--format", "md")
    assert code == 0 and out.startswith("# Bounds for") and "| claim |" in out


def test_cx_dual_numbers(capsys):
    res = run_json(capsys, "cx", "--preset", "nilpotent_loop:2", "--window", "0:20")
    assert res["cx"] == 1


def test_cx_inconclusive_exit_two(capsys, tmp_path):
    p = tmp_path / "rad2.json"
    p.write_text(json.dumps({"kind": "quiver", "vertices": ["v"], "arrows": [["x", "v", "v"], ["y", "v", "v"]],
                             "relations": [[[1, a + "*" + b]] for a in "xy" for b in "xy"]}))
    code, out, err = run(capsys, "cx", "--algebra", str(p), "--window", "0:9")
    assert code == 2 and "Inconclusive" in err


def test_resolve_and_ext(capsys):
    res = run_json(capsys, "resolve", "--preset", "exterior:2:2", "--window", "0:6")
    assert res["betti"] == [1, 2, 3, 4, 5, 6, 7]
    assert res["checks"]["exact"] and res["checks"]["minimal"]
    res = run_json(capsys, "ext", "--preset", "linear_quiver:2", "--module", "simple:1", "--target", "simple:0",
                   "--window", "0:3")
    assert res["dims"] == [0, 1, 0, 0]


def test_koszul_command(capsys):
    res = run_json(capsys, "koszul", "--preset", "nilpotent_loop:2", "--element", "2:1", "--window", "0:10")
    assert res["dims"][1:] == res["prediction"][1:]
    assert res["annihilation"]["passed"]


def test_ghost_and_replay(capsys, tmp_path):
    res = run_json(capsys, "ghost", "--preset", "elem_abelian:2:2", "--c", "1", "--window", "0:15")
    assert res["certified_c"] == 1
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(res["certificates"][0]))
    res2 = run_json(capsys, "ghost", "--replay", str(cert))
    assert res2["matches"]
    doc = json.loads(cert.read_text())
    doc["condition1"][0]["ranks"][-1] = 1
    cert.write_text(json.dumps(doc))
    code, out, err = run(capsys, "ghost", "--replay", str(cert))
    assert code == 5


def test_ghost_not_certified_exit_two(capsys):
    code, out, err = run(capsys, "ghost", "--preset", "nilpotent_loop:2", "--c", "1", "--window", "0:12")
    assert code == 2
    assert json.loads(out)["result"]["certified_c"] == 0


def test_hochschild_refused_on_semisimple(capsys):
    code, out, err = run(capsys, "hochschild", "--preset", "semisimple:2")
    assert code == 3 and "semisimple" in err


def test_resource_cap_exit_four(capsys):
    code, out, err = run(capsys, "resolve", "--preset", "exterior:3:2", "--window", "0:15", "--max-term-dim", "40")
    assert code == 4


def test_output_is_deterministic(capsys):
    argv = ["bounds", "--preset", "truncated_poly:2,2:3", "--window", "0:12"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_module_round_trip():
    A = preset("linear_quiver", 3)
    from ghostdim.algebra import regular_module, simple_module
    for M in (simple_module(A, 1), regular_module(A)):
        doc = module_to_json(M)
        assert module_from_json(A, doc).digest == M.digest
    B = algebra_from_json(algebra_to_json(A))
    assert B.digest == A.digest


def test_structure_round_trip():
    from ghostdim.algebra import QuiverPresentation, from_quiver
    A = from_quiver(QuiverPresentation(["v"], [("x", "v", "v")], [[(1, "x*x*x")]], 3))
    B = algebra_from_json(json.loads(json.dumps(algebra_to_json(A))))
    assert np.array_equal(A.mult, B.mult)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "ghostdim.cli", "cx", "--preset", "exterior:2:2"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["result"]["cx"] == 2
