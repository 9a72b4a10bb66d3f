import json
import subprocess
import sys

import pytest

from dp1kit import cli, gale

K = "[3,1,1,1,1,1,1,1,1]"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_counts(capsys):
    code, out, _ = run(["enumerate", "--kind", "conics"], capsys)
    assert code == 0 and json.loads(out)["count"] == 2160


def test_enumerate_csv(capsys):
    code, out, _ = run(["enumerate", "--kind", "roots", "--format", "csv"], capsys)
    lines = out.strip().splitlines()
    assert lines[0].startswith("basis,d,m1") and len(lines) == 242


def test_chamber_label(capsys):
    code, out, _ = run(["chamber", "[7,1,1,1,1,1,1,1,1]"], capsys)
    data = json.loads(out)
    assert code == 0 and data["label"] == "C_h" and data["moduli"] == "P4"


def test_path_csv(capsys):
    code, out, _ = run(["path", K, "[7,1,1,1,1,1,1,1,1]", "--report", "csv"], capsys)
    rows = out.strip().splitlines()[1:]
    assert code == 0 and [r.split(",")[0] for r in rows] == ["1/12", "1/4", "3/4"]


def test_walk_invariants(capsys):
    code, out, _ = run(["walk", K, "[7,1,1,1,1,1,1,1,1]", "--invariants"], capsys)
    assert code == 0 and json.loads(out)["final"] == [1, 0, 1, 625, 126]


def test_rho_and_inverse(capsys):
    code, out, _ = run(["rho", "[1,0,0,0,0,0,0,0,0]"], capsys)
    assert json.loads(out)["rho"]["coeffs"] == [-1] * 9
    code, out, _ = run(["rho", "--basis", "X", json.dumps([-1] * 9)], capsys)
    assert json.loads(out)["rho_inverse"]["coeffs"] == [1] + [0] * 8


def test_object_literal(capsys):
    code, out, _ = run(["bertini-x", '{"basis": "X", "coeffs": [1,0,0,0,0,0,0,0,0]}'], capsys)
    assert code == 0 and json.loads(out)["image"]["coeffs"][0] == 49


def test_associate(tmp_path, capsys):
    p = tmp_path / "pts.json"
    A = gale.random_configuration(__import__("random").Random(1))
    p.write_text(json.dumps(A.to_json()))
    code, out, _ = run(["associate", "--points", str(p)], capsys)
    B = gale.PointConfiguration.from_json(json.loads(out))
    assert code == 0 and gale.orthogonal(A, B)


def test_output_is_deterministic(capsys):
    first = run(["chamber", K], capsys)
    assert run(["chamber", K], capsys) == first


@pytest.mark.parametrize("argv", [
    ["chamber", "[1.5,0,0,0,0,0,0,0,0]"],
    ["chamber", "[1,2]"],
    ["chamber", "[1,0,0,0,0,0,0,0,0]"],
    ["enumerate", "--kind", "quartics"],
    ["associate", "--points", "/nonexistent.json"],
])
def test_domain_errors_exit_one(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and err.startswith("error:")


@pytest.mark.parametrize("argv", [["bogus"], [], ["enumerate"]])
def test_usage_errors_exit_one(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dp1kit", "surface-profile", "--cubic", "[1,0,0,0,0,0,0,0,0]",
                        "--curve", "[2,1,1,1,1,1,0,0,0]"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["degree"] == 1
