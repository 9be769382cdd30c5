"""Command-line front end.

Exit codes: 0 when everything requested succeeded and all checks passed,
1 when a verification failed (a JSON failure report is still written to
stdout), 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import integrals, sequence, singularity, symmetry
from .diffalg import y
from .errors import DiffSeqError, ParseError, VerificationFailure
from .polyx import PolyX
from .render import FORMATS, dumps, latex_diffpoly, latex_exp, render, text_diffpoly, text_exp
from .report import failure_json

DEFAULT_MAX_N = 12
SUITES = ("lemma1", "interleave", "matrix", "symmetry", "csg", "painleve", "integrals")


class UsageError(Exception):
    pass


# --- polynomial spec parser ------------------------------------------------

class _PolyParser:
    """Recursive descent over  poly := sign? term (('+'|'-') term)*."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, *expected):
        raise ParseError(self.text, self.pos, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def uint(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            return None
        return int(self.text[start : self.pos])

    def rational(self):
        num = self.uint()
        if num is None:
            return None
        if self.take("/"):
            at = self.pos
            den = self.uint()
            if den is None:
                self.error("digit")
            if den == 0:
                self.pos = at
                self.skip()
                self.error("nonzero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def power(self):
        if not self.take("x"):
            return None
        if self.take("^"):
            e = self.uint()
            if e is None:
                self.error("digit")
            return e
        return 1

    def term(self):
        c = self.rational()
        if c is None:
            e = self.power()
            if e is None:
                self.error("digit", "x")
            return Fraction(1), e
        if self.take("*"):
            e = self.power()
            if e is None:
                self.error("x")
            return c, e
        e = self.power()
        return c, (0 if e is None else e)

    def poly(self):
        coeffs = {}
        sign = -1 if self.take("-") else 1
        if sign == 1:
            self.take("+")
        while True:
            c, e = self.term()
            coeffs[e] = coeffs.get(e, 0) + sign * c
            ch = self.peek()
            if ch == "+":
                sign = 1
            elif ch == "-":
                sign = -1
            elif ch == "":
                break
            else:
                self.error("+", "-", "end of input")
            self.pos += 1
        top = max(coeffs)
        return PolyX([coeffs.get(i, 0) for i in range(top + 1)])


def parse_poly_spec(s):
    """Parse e.g. ``"3/2*x^2-1"`` into an exact PolyX."""
    return _PolyParser(s).poly()


def parse_rational(s):
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(s, 0, ["rational"]) from None


# --- command dispatch --------------------------------------------------------

@dataclass
class CommandSpec:
    subcommand: str
    n: int | None = None
    n_range: tuple | None = None
    format: str = "text"
    depth: int | None = None
    seed: int = 0
    max_n: int | None = None
    options: dict = field(default_factory=dict)


def _guard():
    raw = os.environ.get("DIFFSEQ_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DIFFSEQ_MAX_N must be an integer, got {raw!r}") from None


def _check_n(n, lo=0):
    if n < lo:
        raise UsageError(f"n must be >= {lo}, got {n}")
    guard = _guard()
    if n > guard:
        raise UsageError(f"n = {n} exceeds the guard {guard} (set DIFFSEQ_MAX_N to raise it)")


def _members(spec, adjoint):
    if spec.n_range is not None:
        lo, hi = spec.n_range
        ns = range(lo, hi + 1)
    elif spec.n is not None:
        ns = [spec.n]
    else:
        raise UsageError("give --n or --range")
    for n in ns:
        _check_n(n)
    mems = [sequence.generate_member(n, adjoint) for n in ns]
    if spec.format == "json":
        return dumps(mems[0] if spec.n_range is None else mems)
    return "\n".join(render(m, spec.format) for m in mems)


def _cmd_combine(spec):
    raw = spec.options["coeffs"]
    coeffs = [parse_poly_spec(part) for part in raw.split(";")]
    _check_n(len(coeffs) - 1)
    cs = integrals.CombinationSpec(tuple(coeffs))
    En = integrals.combine(cs)
    out = {"n": cs.n, "spec": cs.to_json(), "E_n": En.to_json()}
    lines = [f"E_{cs.n} = {text_diffpoly(En)}"] if spec.format == "text" else [f"E_{{{cs.n}}} = {latex_diffpoly(En)}"]
    if spec.options.get("check_linearisation"):
        p_raw = spec.options.get("p")
        if not p_raw:
            raise UsageError("--check-linearisation needs --p")
        P = parse_poly_spec(p_raw)
        rep = integrals.check_linearisation(cs, P)
        val = rep.data["value"]
        out["linearisation"] = {"P": P.to_json(), "value": val.to_json(), "passed": True}
        lines.append(f"E_{cs.n}(P'/P) = {val.to_text()}  [identity holds]")
    if spec.format == "json":
        return dumps(out)
    return "\n".join(lines)


def _cmd_painleve(spec):
    _check_n(spec.n, 1)
    rep = singularity.painleve_report(spec.n, spec.depth)
    if not (rep.painleve_pass and rep.pattern_rule_holds and rep.closed_form_holds):
        singularity.verify_painleve(spec.n, spec.depth)
    return render(rep, spec.format)


def _symmetry_entry(name, field, n):
    res = symmetry.check_symmetry(field, n)
    return {
        "name": name,
        "generator": field.to_json(),
        "is_symmetry": res.is_symmetry,
        "cofactor": None if res.cofactor is None else res.cofactor.to_json(),
    }, res


def _cmd_symmetries(spec):
    n = spec.n
    _check_n(n, 1)
    if n == 2:
        fields = [(f"point_{i}", f) for i, f in enumerate(symmetry.second_member_symmetries(), start=1)]
    else:
        fields = [("translation", symmetry.translation()), ("scaling", symmetry.scaling()), ("projective", symmetry.projective(n))]
    if spec.options.get("nonlocal"):
        fields += [(f"exp_{i}", symmetry.exp_symmetry(i)) for i in range(1, n + 2)]
    entries, lines = [], [f"symmetries of R_{n}"]
    for name, f in fields:
        entry, res = _symmetry_entry(name, f, n)
        entries.append(entry)
        if not res.is_symmetry:
            raise VerificationFailure("symmetry", "check_symmetry", f"{name} is not a symmetry of R_{n}", res.reduced)
        cof = "-" if res.cofactor is None else (latex_exp if spec.format == "latex" else text_exp)(res.cofactor)
        lines.append(f"  {name}: symmetry, cofactor {cof}")
    sl2 = symmetry.check_sl2(n)
    lines.append(f"  sl(2,R) brackets: {len(sl2.checks)} relations hold")
    if spec.format == "json":
        return dumps({"n": n, "generators": entries, "sl2": sl2.checks})
    return "\n".join(lines)


def _cmd_invariants(spec):
    n = spec.n
    _check_n(n, 1)
    js = [spec.options["j"]] if spec.options.get("j") is not None else range(1, n + 2)
    invs = [integrals.invariant(n, j) for j in js]
    if spec.format == "json":
        return dumps({"n": n, "invariants": [i.to_json() for i in invs]})
    return "\n".join(render(i, spec.format) for i in invs)


def _cmd_solve(spec):
    n = spec.n
    _check_n(n, 1)
    A = [parse_rational(a) for a in spec.options["a"].split(",")]
    if not 1 <= len(A) <= n + 1:
        raise UsageError(f"--a takes between 1 and {n + 1} coefficients")
    x0 = parse_rational(spec.options["x0"])
    P = PolyX(A)
    jet = integrals.solution_jet(n, P, x0)
    residual = sequence.member(n).evaluate(jet)
    if residual:
        raise VerificationFailure("integrals", "solution_jet", f"R_{n} does not vanish on the solution", residual)
    yfun = integrals.solution_function(P)
    if spec.format == "json":
        return dumps({"n": n, "P": P.to_json(), "y": yfun.to_json(), "x0": str(x0),
                      "jet": [str(v) for v in jet.values], "residual": str(residual)})
    names = [text_diffpoly(y(k)) for k in range(n + 1)]
    lines = [f"P = {P.to_text()}", f"y = {yfun.to_text()}"]
    lines += [f"{nm}({x0}) = {v}" for nm, v in zip(names, jet.values)]
    lines.append(f"R_{n} residual = {residual}")
    return "\n".join(lines)


def _suite_tasks(suite, max_n, seed):
    """(label, thunk) pairs for one verification suite."""
    tasks = []
    if suite == "lemma1":
        tasks += [(f"gradient recurrence n={n}", lambda n=n: sequence.check_gradient_recurrence(n)) for n in range(1, max_n + 1)]
    elif suite == "interleave":
        tasks += [(f"interleave n={n}", lambda n=n: sequence.check_interleave(n)) for n in range(0, max_n + 1)]
    elif suite == "matrix":
        tasks += [(f"matrix n={n}", lambda n=n: sequence.verify_matrix_lemmas(n)) for n in range(1, max_n + 1)]
    elif suite == "symmetry":
        for n in range(1, max_n + 1):
            tasks.append((f"eigen n={n}", lambda n=n: symmetry.check_eigenrelations(n)))
            tasks.append((f"sl2 n={n}", lambda n=n: symmetry.check_sl2(n)))
            tasks.append((f"deltas n={n}", lambda n=n: symmetry.check_exp_symmetries(n)))
        if max_n >= 2:
            tasks.append(("R2 eight point symmetries", _check_r2))
    elif suite == "csg":
        tasks += [(f"csg n={n}", lambda n=n: symmetry.csg_certify(n)) for n in range(1, max_n + 1)]
    elif suite == "painleve":
        tasks += [(f"painleve n={n}", lambda n=n: singularity.verify_painleve(n)) for n in range(1, max_n + 1)]
    elif suite == "integrals":
        for n in range(1, max_n + 1):
            tasks.append((f"solutions n={n}", lambda n=n: _check_solutions(n, seed)))
            tasks.append((f"invariants n={n}", lambda n=n: _check_invariants(n)))
            if n <= 4:
                tasks.append((f"first integrals n={n}", lambda n=n: _check_first_integrals(n)))
        tasks.append(("linearisation", lambda: _check_combinations(max_n, seed)))
    return tasks


def _check_r2():
    from .report import Report

    rep = Report("symmetry", "second_member_symmetries", 2)
    for i, f in enumerate(symmetry.second_member_symmetries(), start=1):
        rep.check(f"point_{i}", symmetry.check_symmetry(f, 2).reduced, index=i)
    return rep


def _check_solutions(n, seed, samples=20):
    rng = random.Random(f"{seed}-sol-{n}")
    P = integrals.random_poly(rng, n)
    rep = integrals.verify_solution_identity(n, P, samples=samples, seed=rng.randrange(2**32))
    return rep


def _check_invariants(n):
    from .report import Report

    rep = Report("integrals", "invariant", n)
    for j in range(1, n + 2):
        integrals.invariant(n, j)
        rep.checks.append(f"D(I_{j}) = 0 mod R_{n}")
    return rep


def _check_first_integrals(n):
    from .report import Report

    rep = Report("integrals", "first_integral", n)
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            if i != j:
                fi = integrals.first_integral(n, i, j)
                rep.check(f"F_{i}{j} has net weight 0", fi.net_weight, index=(i, j))
    return rep


def _check_combinations(max_n, seed, count=10):
    from .report import Report

    rng = random.Random(f"{seed}-comb")
    rep = Report("integrals", "check_linearisation", max_n)
    for t in range(count):
        n = rng.randint(0, max_n)
        coeffs = [integrals.random_poly(rng, rng.randint(0, 2)) for _ in range(n + 1)]
        P = integrals.random_poly(rng, rng.randint(0, n + 2))
        integrals.check_linearisation(integrals.CombinationSpec(tuple(coeffs)), P)
        rep.checks.append(f"combination {t}")
    return rep


def _cmd_verify(spec):
    max_n = spec.max_n
    if max_n is None:
        raise UsageError("verify needs --max-n")
    _check_n(max_n, 1)
    suite = spec.options["suite"]
    suites = SUITES if suite == "all" else (suite,)
    results, failures = [], []
    for s in suites:
        for label, thunk in _suite_tasks(s, max_n, spec.seed):
            try:
                rep = thunk()
                results.append({"suite": s, "task": label, "passed": True, "checks": len(rep.checks)})
            except VerificationFailure as exc:
                failures.append(dict(failure_json(exc), suite=s, task=label))
                results.append({"suite": s, "task": label, "passed": False})
    summary = {"suite": suite, "max_n": max_n, "seed": spec.seed, "results": results, "failures": failures}
    if failures:
        raise _FailedRun(summary)
    if spec.format == "json":
        return dumps(summary)
    lines = [f"{r['task']}: PASS ({r['checks']} checks)" for r in results]
    lines.append(f"all {len(results)} tasks passed")
    return "\n".join(lines)


class _FailedRun(Exception):
    def __init__(self, payload):
        self.payload = payload


_COMMANDS = {
    "gen": lambda s: _members(s, False),
    "adjoint": lambda s: _members(s, True),
    "combine": _cmd_combine,
    "painleve": _cmd_painleve,
    "symmetries": _cmd_symmetries,
    "invariants": _cmd_invariants,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
}


def run_command(spec):
    """Execute a CommandSpec; returns ``(stdout_text, stderr_text, exit_code)``."""
    if spec.format not in FORMATS:
        return "", f"error: unknown format {spec.format!r}\n", 2
    try:
        return _COMMANDS[spec.subcommand](spec) + "\n", "", 0
    except VerificationFailure as exc:
        return json.dumps({"failures": [failure_json(exc)]}, indent=2) + "\n", f"verification failed: {exc}\n", 1
    except _FailedRun as exc:
        return json.dumps(exc.payload, indent=2) + "\n", "verification failed\n", 1
    except (UsageError, DiffSeqError) as exc:
        return "", f"error: {exc}\n", 2


def _parse_range(text):
    try:
        a, b = text.split("..")
        a, b = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError("range start exceeds its end")
    return a, b


def build_parser():
    parser = argparse.ArgumentParser(prog="diffseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="text")
        return p

    for name in ("gen", "adjoint"):
        p = common(sub.add_parser(name, help=f"print {'adjoint ' if name == 'adjoint' else ''}sequence members"))
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--n", type=int)
        g.add_argument("--range", type=_parse_range, dest="n_range")

    p = common(sub.add_parser("combine", help="sum f_i(x) R_i and its linearisation"))
    p.add_argument("--coeffs", required=True, help='polynomials f0;f1;... e.g. "1;x;3/2*x^2"')
    p.add_argument("--check-linearisation", action="store_true")
    p.add_argument("--p", help="polynomial P for the linearisation check")

    p = common(sub.add_parser("painleve", help="singularity analysis of R_n"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int)

    p = common(sub.add_parser("symmetries", help="verify point (and nonlocal) symmetries"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nonlocal", action="store_true")

    p = common(sub.add_parser("invariants", help="invariants I_j of R_n"))
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--j", type=int)
    g.add_argument("--all", action="store_true")

    p = common(sub.add_parser("solve", help="solution jet of R_n from P = sum A_i x^i"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help="A0,A1,...,An")
    p.add_argument("--x0", required=True)

    p = common(sub.add_parser("verify", help="run identity suites"))
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def spec_from_args(argv):
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items()
            if k not in {"subcommand", "n", "n_range", "format", "depth", "seed", "max_n"}}
    return CommandSpec(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        n_range=getattr(args, "n_range", None),
        format=args.format,
        depth=getattr(args, "depth", None),
        seed=getattr(args, "seed", 0),
        max_n=getattr(args, "max_n", None),
        options=opts,
    )


def main(argv=None):
    try:
        spec = spec_from_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out, err, code = run_command(spec)
    sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
