import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import small_fracs
from diffseq import cli, sequence
from diffseq.diffalg import y
from diffseq.errors import ParseError, VerificationFailure
from diffseq.polyx import PolyX

import hypothesis.strategies as st


def run(*argv):
    spec = cli.spec_from_args(list(argv))
    out, err, code = cli.run_command(spec)
    return out, err, code


def random_polyx(rng):
    deg = rng.randint(-1, 6)
    cs = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) if rng.random() < 0.7 else Fraction(0)
          for _ in range(deg + 1)]
    return PolyX(cs)


def test_parse_examples():
    assert cli.parse_poly_spec("3/2*x^2-1") == PolyX((-1, 0, Fraction(3, 2)))
    assert cli.parse_poly_spec("x") == PolyX((0, 1))
    assert cli.parse_poly_spec(" - x ^ 2 + 2 x ") == PolyX((0, 2, -1))
    assert cli.parse_poly_spec("1 + x + x") == PolyX((1, 2))
    assert cli.parse_poly_spec("0") == PolyX()


@pytest.mark.parametrize("text, pos", [("2/0", 2), ("x^", 2), ("3*", 2), ("x y", 2), ("", 0), ("1+", 2), ("1/x", 2)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        cli.parse_poly_spec(text)
    assert info.value.position == pos
    assert info.value.expected


def test_round_trip_thousand_seeded():
    rng = random.Random(2024)
    for _ in range(1000):
        p = random_polyx(rng)
        assert cli.parse_poly_spec(p.to_text()) == p


@given(st.lists(small_fracs, max_size=6).map(PolyX))
def test_round_trip_property(p):
    assert cli.parse_poly_spec(p.to_text()) == p


def test_gen_text():
    out, _, code = run("gen", "--n", "2", "--format", "text")
    assert code == 0 and out == "y'' + 3*y*y' + y^3 = 0\n"


def test_gen_latex_and_json():
    out, _, _ = run("gen", "--n", "1", "--format", "latex")
    assert out.strip() == "y' + y^{2} = 0"
    out, _, _ = run("gen", "--n", "1", "--format", "json")
    obj = json.loads(out)
    assert obj["n"] == 1 and obj["adjoint"] is False
    assert obj["terms"][0] == {"coeff": "1", "x": 0, "derivs": {"1": 1}}
    out, _, _ = run("adjoint", "--range", "1..3", "--format", "json")
    assert [m["n"] for m in json.loads(out)] == [1, 2, 3]


def test_painleve_json():
    out, _, code = run("painleve", "--n", "4", "--format", "json")
    obj = json.loads(out)
    assert code == 0
    assert set(obj) >= {"n", "branches", "pattern_rule_holds", "painleve_pass"}
    assert [b["alpha"] for b in obj["branches"]] == ["1", "2", "3", "4"]
    assert sorted(obj["branches"][1]["resonances"]) == [-2, -1, 1, 2]
    assert obj["branches"][0]["compatibility"] == [{"r": 1, "pass": True}, {"r": 2, "pass": True}, {"r": 3, "pass": True}]


def test_other_commands_succeed():
    for argv in (
        ("combine", "--coeffs", "1;x", "--check-linearisation", "--p", "x^2+1"),
        ("symmetries", "--n", "3", "--nonlocal", "--format", "json"),
        ("invariants", "--n", "2", "--j", "3"),
        ("invariants", "--n", "2", "--all", "--format", "latex"),
        ("solve", "--n", "2", "--a", "1,1,1", "--x0", "0", "--format", "json"),
    ):
        out, err, code = run(*argv)
        assert code == 0, (argv, err)
        assert out


def test_solve_output():
    out, _, _ = run("solve", "--n", "2", "--a", "1,1,1", "--x0", "0", "--format", "json")
    obj = json.loads(out)
    assert obj["jet"] == ["1", "1", "-4"] and obj["residual"] == "0"


def test_usage_errors_exit_two(monkeypatch):
    assert run("gen", "--n", "13")[2] == 2
    assert run("solve", "--n", "1", "--a", "1,1", "--x0", "-1")[2] == 2
    assert run("combine", "--coeffs", "1;2/0")[2] == 2
    assert run("combine", "--coeffs", "1;0")[2] == 2
    assert run("invariants", "--n", "2", "--j", "9")[2] == 2
    assert run("verify", "--suite", "lemma1", "--max-n", "50")[2] == 2
    assert cli.main(["verify", "--suite", "nope", "--max-n", "2"]) == 2
    assert cli.main(["gen"]) == 2
    monkeypatch.setenv("DIFFSEQ_MAX_N", "20")
    assert run("gen", "--n", "13")[2] == 0


def test_verification_failure_exits_one(monkeypatch):
    def broken(n):
        raise VerificationFailure("sequence", "check_interleave", "injected", y(0) * n, stage="test")

    monkeypatch.setattr(sequence, "check_interleave", broken)
    out, err, code = run("verify", "--suite", "interleave", "--max-n", "2")
    assert code == 1 and "verification failed" in err
    report = json.loads(out)
    fail = report["failures"][0]
    assert fail["module"] == "sequence" and fail["operation"] == "check_interleave"
    assert fail["residual"] is not None


def test_verify_passes_and_is_deterministic():
    a = run("verify", "--suite", "integrals", "--max-n", "3", "--seed", "7", "--format", "json")
    b = run("verify", "--suite", "integrals", "--max-n", "3", "--seed", "7", "--format", "json")
    assert a == b and a[2] == 0
    assert json.loads(a[0])["failures"] == []


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "diffseq.cli", "gen", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "y' + y^2 = 0\n"
