import json
import subprocess
import sys
from fractions import Fraction

import pytest

from fourinv.cli import main
from fourinv.io import (InputError, dumps, frac_str, lattice_from_json, load_manifold,
                        manifold_from_json, manifold_to_json, parse_class_spec, parse_hclass,
                        parse_rational)
from fourinv.manifold import example_classes, example_xqn


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def manifest(tmp_path, capsys):
    def make(q=2, n=2):
        code, out, _ = run(capsys, "examples", "--q", str(q), "--n", str(n))
        assert code == 0
        path = tmp_path / f"x{q}_{n}.json"
        path.write_text(out)
        return str(path)
    return make


# --- io ---------------------------------------------------------------------------

def test_rationals():
    assert frac_str(Fraction(3, 6)) == "1/2"
    assert frac_str(4) == "4/1"
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(5) == 5
    for bad in ("1/0", "x", 1.5, True):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_manifold_round_trip():
    x = example_xqn(2, 1)
    names = example_classes(2, 1)
    obj = json.loads(dumps(manifold_to_json(x, names)))
    y, classes = manifold_from_json(obj)
    assert y == x and classes == names


def test_lattice_json_errors():
    with pytest.raises(InputError, match="symmetric"):
        lattice_from_json({"gram": [[1, 1], [0, 1]]})
    with pytest.raises(InputError, match="rank"):
        lattice_from_json({"rank": 3, "gram": [[1]]})
    with pytest.raises(InputError, match="integer"):
        lattice_from_json({"gram": [[1.0]]})


def test_class_specs():
    names = {"a": (1, 0, 0), "b": (0, 1, 0)}
    assert parse_class_spec("2*(a+b)", names, 3) == (2, 2, 0)
    assert parse_class_spec("[1, -2, 3]", names, 3) == (1, -2, 3)
    assert parse_class_spec("-a + 3*b", names, 3) == (-1, 3, 0)
    for bad in ("c", "a*b", "2", "[1, 2]", "a +", "__import__('os')"):
        with pytest.raises(InputError):
            parse_class_spec(bad, names, 3)
    assert parse_hclass("1/2,0,-1", names, 3) == (Fraction(1, 2), 0, -1)
    assert parse_hclass("a+b", names, 3) == (1, 1, 0)


# --- cli --------------------------------------------------------------------------

def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples", "--q", "2", "--n", "0")
    obj = json.loads(out)
    assert code == 0 and obj["lattice"]["rank"] == 23
    x, _ = manifold_from_json(obj)
    assert x.c == 3
    code, out, _ = run(capsys, "examples", "--q", "2", "--n", "2")
    x, classes = manifold_from_json(json.loads(out))
    assert x.c == 5 and len(x.sw) == 8 and "K0" in classes


def test_examples_rejects_q1(capsys):
    code, _, err = run(capsys, "examples", "--q", "1")
    assert code == 2 and "q ≥ 2" in err


def test_compute_both_equal(capsys, manifest):
    path = manifest()
    code, out, _ = run(capsys, "compute", "--manifest", path, "--w", "K0",
                       "--lambda", "2*(f1+f2)", "--delta", "5", "--m", "1",
                       "--h", "K+e1+e2", "--mode", "both", "--seeds", "3")
    rep = json.loads(out)
    assert code == 0 and rep["equal"] is True
    assert rep["witten"] != "0/1"
    assert [c["value"] for c in rep["cobordism"]] == [rep["witten"]] * 3


def test_compute_negative_degree(capsys, manifest):
    code, _, err = run(capsys, "compute", "--manifest", manifest(), "--w", "K0",
                       "--delta", "1", "--m", "1", "--h", "f1")
    assert code == 2 and "δ−2m ≥ 0" in err


def test_compute_rejects_malformed_gram(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"lattice": {"gram": [[1, 1], [0, 1]]}, "sw": []}))
    code, _, err = run(capsys, "compute", "--manifest", str(path), "--w", "[0,0]",
                       "--delta", "0", "--h", "1,0")
    assert code == 1 and "symmetric" in err


def test_compute_rejects_bad_flags(capsys, manifest):
    code, _, _ = run(capsys, "compute", "--manifest", manifest(), "--w", "nope",
                     "--delta", "1", "--h", "f1")
    assert code == 1
    code, _, _ = run(capsys, "compute", "--delta", "x")
    assert code == 1


def test_report_and_counterfixture(capsys, manifest):
    path = manifest()
    args = ["report", "--manifest", path, "--w", "K0", "--lambda", "2*(f1+f2)",
            "--delta", "5", "--m", "0", "--h", "f1+3*f2-e2+K", "--seeds", "3"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and json.loads(out)["seed_independent"]
    code, _, err = run(capsys, *args[:-2], "--lambda", "2*e1")
    assert code == 2 and "mod 4" in err


def test_blowup_and_scst_commands(capsys, manifest):
    path = manifest(2, 1)
    code, out, _ = run(capsys, "blowup", "--manifest", path)
    x, classes = manifold_from_json(json.loads(out))
    assert code == 0 and x == example_xqn(2, 2) and "e2" in classes
    code, out, _ = run(capsys, "check-scst", "--manifest", path, "--w", "K0")
    assert code == 0 and json.loads(out) == {"c": 4, "scst": True}
    code, _, err = run(capsys, "check-scst", "--manifest", path, "--w", "K")
    assert code == 2 and "w characteristic" in err


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "diffops", "--trials", "200")
    assert code == 0 and "FAIL" not in out and "PASS" in out
    code, out, _ = run(capsys, "verify", "--suite", "main-theorem", "--seeds", "5")
    assert code == 0 and "FAIL" not in out
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 1 and "unknown suite" in err


def test_cli_is_deterministic(manifest):
    path = manifest()
    argv = [sys.executable, "-m", "fourinv.cli", "compute", "--manifest", path, "--w", "K0",
            "--lambda", "2*(f1+f2)", "--delta", "9", "--m", "2", "--h", "f1-f2+e1",
            "--mode", "both", "--seed", "7", "--seeds", "2"]
    outs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1


def test_load_manifold_round_trip(manifest):
    x, classes = load_manifold(manifest(3, 1))
    assert x == example_xqn(3, 1) and classes["K0"] == example_classes(3, 1)["K0"]
