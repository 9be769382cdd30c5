"""Acceptance gate: ten criteria, each with its time budget.

Every criterion prints one PASS/FAIL line (collected into the pytest
terminal summary, or printed directly when this file is run as a script).
Caches are cleared before each criterion so timings include generation.
"""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

import pytest

from diffseq import cli, diffalg, sequence
from diffseq.diffalg import ONE, reduce_mod, weight_of, y
from diffseq.errors import VerificationFailure
from diffseq.integrals import (
    CombinationSpec,
    check_linearisation,
    first_integral,
    invariant,
    random_poly,
    solution_jet,
    verify_solution_identity,
)
from diffseq.polyx import PolyX
from diffseq.sequence import check_gradient_recurrence, check_interleave, member, verify_matrix_lemmas
from diffseq.singularity import painleve_report, resonance_polynomial, closed_form_resonances, verify_painleve
from diffseq.symmetry import (
    check_exp_symmetries,
    check_eigenrelations,
    check_sl2,
    check_symmetry,
    csg_certify,
    second_member_symmetries,
)

RESULTS = []

Y, Y1, Y2, Y3, Y4, Y5 = (y(k) for k in range(6))


def _fresh():
    sequence.member.cache_clear()
    diffalg._rule.cache_clear()


@contextmanager
def criterion(number, title, budget):
    _fresh()
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS.append(f"FAIL  {number:>2}. {title} ({elapsed:.2f}s): {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title} ({elapsed:.2f}s, budget {budget}s)")
    assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


def test_c01_generation_fidelity():
    plain = [
        "y' + y^2 = 0",
        "y'' + 3*y*y' + y^3 = 0",
        "y''' + 4*y*y'' + 3*y'^2 + 6*y^2*y' + y^4 = 0",
        "y^(4) + 5*y*y''' + 10*y'*y'' + 10*y^2*y'' + 15*y*y'^2 + 10*y^3*y' + y^5 = 0",
    ]
    adjoint = [
        Y1 - Y ** 2,
        Y2 - 3 * Y * Y1 + Y ** 3,
        Y3 - 4 * Y * Y2 - 3 * Y1 ** 2 + 6 * Y ** 2 * Y1 - Y ** 4,
        Y4 - 5 * Y * Y3 - 10 * Y1 * Y2 + 10 * Y ** 2 * Y2 + 15 * Y * Y1 ** 2 - 10 * Y ** 3 * Y1 + Y ** 5,
        (Y5 - 6 * Y * Y4 - 15 * Y1 * Y3 + 15 * Y ** 2 * Y3 + 60 * Y * Y1 * Y2 - 10 * Y2 ** 2
         - 20 * Y ** 3 * Y2 + 15 * Y1 ** 3 - 45 * Y ** 2 * Y1 ** 2 + 15 * Y ** 4 * Y1 - Y ** 6),
    ]
    with criterion(1, "generation of R1-R4 and adjoint R1-R5", 1):
        out, _, code = cli.run_command(cli.spec_from_args(["gen", "--range", "1..4"]))
        assert code == 0 and out.splitlines() == plain
        out, _, code = cli.run_command(cli.spec_from_args(["adjoint", "--range", "1..5", "--format", "json"]))
        got = [diffalg.DiffPoly.from_json(m["terms"]) for m in json.loads(out)]
        assert code == 0 and got == adjoint
        assert sum(abs(c) for c in got[4].terms.values()) == 1 + 6 + 15 + 15 + 60 + 10 + 20 + 15 + 45 + 15 + 1


def test_c02_gradient_recurrence():
    with criterion(2, "gradient recurrence for n <= 12", 10):
        for n in range(1, 13):
            check_gradient_recurrence(n)
            assert member(n + 1).diff(0) == (n + 2) * member(n)
            for k in range(n + 1):
                assert member(n).diff(k) == comb(n + 1, k + 1) * member(n - k - 1)


def test_c03_interleave():
    with criterion(3, "plain/adjoint interleaving for n <= 10", 10):
        for n in range(0, 11):
            check_interleave(n)


def test_c04_matrix_lemmas():
    with criterion(4, "inverse matrices, gradient solve, Euler reconstruction for n <= 8", 30):
        for n in range(1, 9):
            assert verify_matrix_lemmas(n).passed


def test_c05_symmetries():
    with criterion(5, "symmetry suite", 60):
        for n in range(1, 11):
            check_eigenrelations(n)
            check_sl2(n)
        for f in second_member_symmetries():
            assert check_symmetry(f, 2).is_symmetry
        for n in range(1, 9):
            check_exp_symmetries(n)
            csg_certify(n)
        grad = csg_certify(4).data["gradient"]
        assert grad[::-1] == [
            -5 * Y,
            -10 * (Y1 + Y ** 2),
            -10 * (Y2 + 3 * Y * Y1 + Y ** 3),
            -5 * (Y3 + 4 * Y * Y2 + 3 * Y1 ** 2 + 6 * Y ** 2 * Y1 + Y ** 4),
        ]


def test_c06_painleve():
    first_four = {
        1: [[-1]],
        2: [[-1, 1], [-1, -2]],
        3: [[-1, 1, 2], [-1, 1, -2], [-1, -2, -3]],
        4: [[-1, 1, 2, 3], [-1, 1, 2, -2], [-1, 1, -2, -3], [-1, -2, -3, -4]],
    }
    with criterion(6, "Painleve tables, pattern rule, compatibility", 60):
        for n, rows in first_four.items():
            rep = painleve_report(n)
            assert [b.alpha for b in rep.branches] == list(range(1, n + 1))
            assert [sorted(b.resonances) for b in rep.branches] == [sorted(r) for r in rows]
        for n in range(1, 9):
            rep = painleve_report(n)
            assert rep.closed_form_holds and rep.pattern_rule_holds
            for j, b in enumerate(rep.branches, start=1):
                assert b.resonances == closed_form_resonances(n, j)
            if n <= 6:
                assert rep.painleve_pass and all(b.compatible for b in rep.branches)
                verify_painleve(n)
        assert resonance_polynomial(member(2), -1, 1) == PolyX.from_roots([1, -1])


def test_c07_solutions_and_invariants():
    with criterion(7, "solutions, invariants, first integrals", 60):
        rng = random.Random(7)
        for n in range(1, 9):
            done = 0
            while done < 100:
                A = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n + 1)]
                x0 = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
                P = PolyX(A)
                if not P or not P(x0):
                    continue
                assert member(n).evaluate(solution_jet(n, A, x0)) == 0
                done += 1
        for n in range(1, 7):
            assert verify_solution_identity(n, random_poly(rng, n)).passed
            for j in range(1, n + 2):
                assert not reduce_mod(invariant(n, j).body.total_derivative(), member(n))
        for n in range(1, 5):
            for i, j in permutations(range(1, n + 2), 2):
                assert not first_integral(n, i, j).derivative_residual()


def test_c08_linearisation():
    with criterion(8, "combination/linearisation identity on 20 random specs", 30):
        rng = random.Random(8)
        for t in range(20):
            n = rng.randint(0, 5)
            deg = 0 if t % 2 == 0 else 2
            spec = CombinationSpec(tuple(random_poly(rng, rng.randint(0, deg)) for _ in range(n + 1)))
            P = random_poly(rng, rng.randint(1, n + 3))
            assert check_linearisation(spec, P).passed


@lru_cache(maxsize=None)
def _partitions(n, largest):
    if n == 0:
        return 1
    return sum(_partitions(n - k, k) for k in range(1, min(n, largest) + 1))


def test_c09_structure():
    with criterion(9, "term counts, weights, positivity for n <= 12", 30):
        counts = []
        for n in range(0, 13):
            R = member(n)
            counts.append(len(R.terms))
            assert len(R.terms) == _partitions(n + 1, n + 1)
            assert weight_of(R) == n + 1
            assert all(c > 0 for c in R.terms.values())
        assert counts[1:6] == [2, 3, 5, 7, 11]


def test_c10_cli_contract(monkeypatch):
    with criterion(10, "CLI round trip, exit codes, verify --suite all --max-n 6", 180):
        rng = random.Random(10)
        for _ in range(1000):
            cs = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(rng.randint(0, 7))]
            p = PolyX(cs)
            assert cli.parse_poly_spec(p.to_text()) == p
        assert cli.main(["gen", "--n", "2"]) == 0
        assert cli.main(["gen", "--n", "999"]) == 2
        assert cli.main(["combine", "--coeffs", "2/0"]) == 2

        def broken(n):
            raise VerificationFailure("sequence", "check_interleave", "forced", ONE)

        with monkeypatch.context() as m:
            m.setattr(sequence, "check_interleave", broken)
            assert cli.main(["verify", "--suite", "interleave", "--max-n", "1"]) == 1
        proc = subprocess.run(
            [sys.executable, "-m", "diffseq.cli", "verify", "--suite", "all", "--max-n", "6"],
            capture_output=True, text=True, timeout=180,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr


if __name__ == "__main__":
    # the conftest summary hook prints the per-criterion lines
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
