import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from fastbern.cli import run


def out_of(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out.strip(), cap.err


def test_examples(capsys):
    assert out_of(capsys, ["compute", "--n", "12"])[:2] == (0, "-691/2730")
    assert out_of(capsys, ["gmod", "--n", "10", "--p", "5", "--s", "2"])[:2] == (0, "20")
    assert out_of(capsys, ["compute", "--n", "7"])[:2] == (0, "0")
    assert out_of(capsys, ["compute", "--n", "1"])[:2] == (0, "-1/2")
    assert out_of(capsys, ["compute", "--n", "10", "--genocchi"])[:2] == (0, "-155")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["compute"],
        ["compute", "--n", "x"],
        ["compute", "--n", "300", "--alpha", "0.2"],
        ["compute", "--n", "-4"],
        ["compute", "--n", "300", "--threads", "0"],
        ["gmod", "--n", "10", "--p", "4", "--s", "2"],
        ["plan", "--n", "100"],
        ["bogus"],
    ],
)
def test_argument_errors(capsys, argv):
    assert out_of(capsys, argv)[0] == 1


def test_integrity_failure_exit_code(capsys, monkeypatch):
    import fastbern.cli as cli

    monkeypatch.setattr(cli, "compute_genocchi", lambda n, a, t: (-154, cli.RunReport(None)))
    assert out_of(capsys, ["compute", "--n", "10"])[0] == 2


def test_verify_json(capsys):
    code, out, _ = out_of(capsys, ["compute", "--n", "300", "--alpha", "0.4", "--format", "json", "--verify"])
    assert code == 0
    rec = json.loads(out)
    assert rec["verified"] is True and rec["kind"] == "bernoulli" and rec["alpha"] == "2/5"
    assert set(rec["plan"]) == {"N", "s", "r", "batches", "M", "sufficiency_margin"}
    assert set(rec["timings_ms"]) == {"plan", "coefficients", "engine", "crt", "convert"}
    assert Fraction(rec["numerator"], rec["denominator"]).denominator == rec["denominator"]
    assert json.loads(json.dumps(rec)) == rec


def test_plan_json_matches_plan(capsys):
    from fastbern.scheduler import plan

    code, out, _ = out_of(capsys, ["plan", "--n", "5000", "--alpha", "1/2"])
    p = plan(5000, Fraction(1, 2))
    rec = json.loads(out)
    assert code == 0
    assert (rec["N"], rec["s"], rec["r"], rec["M"]) == (p.N, p.s, p.r, p.M)
    assert [tuple(b) for b in rec["batches"]] == list(p.batches)


def test_gmod_naive_agrees(capsys):
    rng = random.Random(50)
    for _ in range(50):
        p = rng.choice([3, 5, 7, 11, 13])
        n = rng.randint(2, 150)
        s = rng.randint(1, n - 1)
        args = ["gmod", "--n", str(n), "--p", str(p), "--s", str(s)]
        fast = out_of(capsys, args)
        naive = out_of(capsys, args + ["--naive"])
        assert fast[0] == naive[0] == 0 and fast[1] == naive[1]


def test_selftest(capsys):
    code, out, _ = out_of(capsys, ["selftest"])
    assert code == 0 and "FAIL" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fastbern", "compute", "--n", "12"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "-691/2730"
