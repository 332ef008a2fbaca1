import json
import subprocess
import sys

import pytest

from splitkummer import kummer2
from splitkummer.cli import main
from splitkummer.edwards import EdwardsCurve
from splitkummer.projective import normalize, to_hex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mul_example(capsys):
    code, out, _ = run(capsys, "mul", "--p", "13", "--d", "5", "--n", "2", "--y", "1:0")
    assert code == 0 and out == "1:c\n"


def test_mul_one_returns_normalized_input(capsys):
    code, out, _ = run(capsys, "mul", "--p", "13", "--d", "5", "--n", "1", "--y", "2:4")
    assert code == 0 and out == "1:2\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["mul", "--p", "13", "--d", "5", "--n", "0", "--y", "1:0"],
        ["mul", "--p", "13", "--d", "5", "--n", "2", "--y", "1:0:0"],
        ["mul", "--p", "15", "--d", "5", "--n", "2", "--y", "1:0"],
        ["mul", "--p", "13", "--d", "1", "--n", "2", "--y", "1:0"],
        ["project", "--p", "13", "--d", "5", "1:1:1:1", "1:0:1:0"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_mul_twist_input_runs(capsys):
    # y = 2 lifts only over F_169, but the formulas still execute
    code, out, _ = run(capsys, "mul", "--p", "13", "--d", "5", "--n", "3", "--y", "1:2")
    assert code == 0 and out.count(":") == 1


def test_project_identity_pair(capsys):
    code, out, _ = run(capsys, "project", "--p", "13", "--d", "5", "1:0:1:0", "1:0:1:0")
    assert code == 0 and out == "1:1:1:1;1:0\n"


def test_project_matches_library(capsys, E13):
    P, Q = E13.random_point(1), E13.random_point(2)
    k = kummer2.project_k2(P, Q)
    code, out, _ = run(capsys, "project", "--p", "13", "--d", "5", P.to_hex(), Q.to_hex())
    assert out.strip() == f"{to_hex(normalize(k.U))};{to_hex(normalize(k.Z))}"
    code, out, _ = run(capsys, "project", "--p", "13", "--d", "5", "--model", "p7", P.to_hex(), Q.to_hex())
    assert out.strip() == to_hex(normalize(kummer2.p3p1_to_p7(k).T))


def test_verify_exhaustive(capsys):
    code, out, _ = run(capsys, "verify", "--p", "13", "--d", "5", "--exhaustive")
    assert code == 0
    assert out.rstrip().endswith("PASS")


def test_verify_records(capsys):
    code, out, _ = run(capsys, "verify", "--p", "13", "--d", "5", "--exhaustive", "--format", "records")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["kind"] for r in lines] == ["identity_suite", "exceptional_scan"]
    assert all(r["failures"] == [] for r in lines)


def test_verify_corrupted_build(capsys, monkeypatch):
    real = kummer2.tau

    def bad(k):
        return kummer2.sigma(real(k))

    monkeypatch.setattr(kummer2, "tau", bad)
    code, out, _ = run(capsys, "verify", "--p", "13", "--d", "5", "--samples", "20")
    assert code == 1
    assert "FAIL" in out


def test_verify_default_curve(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "30")
    assert code == 0
    assert "p=2305843009213693951 d=3" in out


def test_bench_table(capsys):
    code, out, _ = run(capsys, "bench", "--bits", "32", "--samples", "2")
    header, *rows = out.splitlines()
    assert code == 0
    assert "mul_by_d" in header.split()
    per_bit = [r.split()[-5:] for r in rows if r.strip().startswith("per bit")]
    assert len(per_bit) == 2 and per_bit[0] == per_bit[1]
    step0 = next(r for r in rows if r.startswith("ladder_step[0]")).split()[1:]
    step1 = next(r for r in rows if r.startswith("ladder_step[1]")).split()[1:]
    assert step0 == step1


def test_bench_records(capsys):
    code, out, _ = run(capsys, "bench", "--bits", "16", "--samples", "1", "--format", "records")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all("mul_by_d" in r for r in recs)


def test_output_is_deterministic(capsys):
    argvs = [
        ["verify", "--samples", "50", "--seed", "9"],
        ["verify", "--p", "13", "--d", "3", "--exhaustive", "--format", "records"],
        ["mul", "--n", "0xdeadbeefcafe", "--y", "1:2a"],
        ["bench", "--bits", "24", "--samples", "2", "--seed", "4"],
    ]
    for argv in argvs:
        first = run(capsys, *argv)
        assert run(capsys, *argv) == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "splitkummer", "mul", "--p", "13", "--d", "5", "--n", "2", "--y", "1:0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "1:c\n"


def test_default_d_is_nonsquare():
    assert EdwardsCurve.with_nonsquare_d(2**61 - 1).d.value == 3
