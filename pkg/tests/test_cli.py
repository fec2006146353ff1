import json
import subprocess
import sys

import pytest

from artin_homology.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_homology_laurent_example(capsys):
    code, out, _ = run(capsys, "homology", "--family", "B", "--n", "2", "--coeff", "laurent", "--ring", "Q",
                       "--degree", "1")
    assert code == 0
    rec = json.loads(out)
    assert rec["torsion"] == [{"factor": ["-1", "0", "1"], "multiplicity": 1}]
    assert rec["betti"] == 0 and rec["family"] == "B"


def test_braid_symplectic_example(capsys):
    code, out, _ = run(capsys, "braid-symplectic", "--n", "6", "--ring", "Z", "--degree", "3")
    assert code == 0
    rec = json.loads(out)
    assert rec["torsion"] == [{"factor": "2", "multiplicity": 1}, {"factor": "6", "multiplicity": 1}]
    assert rec["provenance"] == "cone-pipeline" and rec["candidate"] == "prepend-pole/v1"
    code, out, _ = run(capsys, "braid-symplectic", "--n", "6", "--degree", "3", "--format", "md")
    assert "Z_2^2 + Z_3" in out


def test_series_stable_example(capsys):
    code, out, _ = run(capsys, "series", "--which", "stable", "--maxq", "11", "--format", "md")
    assert code == 0
    assert out.startswith("q + q^2 + 2q^3 + 3q^4 + 4q^5 + 5q^6 + 7q^7 + 9q^8 + 11q^9 + 14q^10 + 17q^11")
    code, out, _ = run(capsys, "series", "--which", "odd", "--maxq", "3", "--maxt", "9", "--format", "csv")
    assert "3,9,2" in out.splitlines()


def test_range_and_formats(capsys):
    code, out, _ = run(capsys, "homology", "--family", "A", "--n", "2-4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("family,n,coeff")
    assert "A,3,trivial,Z,2,0,2,computed,," in lines
    code, out, _ = run(capsys, "complex", "--family", "B", "--n", "2", "--coeff", "mod1-t2")
    data = json.loads(out)
    assert data["format"] == "artin-homology/triplets-v1"


@pytest.mark.parametrize("argv", [
    ["homology", "--n", "0"],
    ["homology", "--n", "3", "--ring", "F4"],
    ["homology", "--n", "3", "--ring", "Fp:9"],
    ["homology", "--n", "3", "--coeff", "mod1+t2"],
    ["homology", "--family", "A", "--n", "3", "--coeff", "laurent"],
    ["homology", "--family", "B", "--n", "3", "--coeff", "laurent", "--ring", "Z"],
    ["braid-symplectic", "--n", "8", "--degree", "3", "--mode", "series-prediction"],
    ["series", "--which", "odd", "--maxq", "0"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_table_mismatch_exits_one(capsys):
    code, _, err = run(capsys, "braid-symplectic", "--n", "3", "--candidate", "prepend-pole-w2")
    assert code == 1
    assert "table mismatch" in err


def test_determinism_and_cache(capsys, tmp_path):
    argv = ["braid-symplectic", "--n", "5", "--ring", "F2", "--cache-dir", str(tmp_path)]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    c = run(capsys, "braid-symplectic", "--n", "5", "--ring", "F2")
    assert a == b == c
    assert list(tmp_path.rglob("*.json"))


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "artin_homology.cli", "series", "--which", "stable",
                          "--maxq", "4", "--format", "json"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["coefficients"] == [0, 1, 1, 2, 3]


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--suite", "build", "--n", "6")
    data = json.loads(out)
    assert code == 0 and data["suite"] == "build"
    assert {r["cells"] for r in data["rows"]} == {64, 128}


@pytest.mark.parametrize("suite", ["snf-int", "snf-poly", "pipeline"])
def test_bench_suites_small(capsys, suite):
    code, out, _ = run(capsys, "bench", "--suite", suite, "--n", "4")
    assert code == 0 and json.loads(out)["rows"]
