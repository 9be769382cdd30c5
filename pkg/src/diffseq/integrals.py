"""Closed-form solutions, invariants, first integrals and linearisable
combinations of sequence members.

Along a solution y = P'/P the exponential E = exp(int y dx) equals P up to a
constant factor; numerical checks take that factor to be 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .diffalg import ZERO, DiffPoly, E, ExpDiffPoly, Jet, X, reduce_mod
from .errors import (
    IdenticalIndices,
    IndexOutOfRange,
    InvalidCombination,
    PoleAtSamplePoint,
    VerificationFailure,
)
from .polyx import PolyX, RationalFunctionX
from .report import Report
from .sequence import member

__all__ = [
    "InvariantExpr",
    "FirstIntegralExpr",
    "CombinationSpec",
    "solution_jet",
    "solution_function",
    "substitute_solution",
    "verify_solution_identity",
    "invariant",
    "first_integral",
    "combine",
    "check_linearisation",
    "random_poly",
]


def _poly(A):
    return A if isinstance(A, PolyX) else PolyX(A)


def solution_function(P):
    """y = P'/P as a reduced rational function."""
    P = _poly(P)
    if not P:
        raise ValueError("P must be nonzero")
    return RationalFunctionX(P.derivative(), P)


def solution_jet(n, A, x0):
    """(y, y', ..., y^(n)) at x0 for y = P'/P, P = sum A_i x^i."""
    P = _poly(A)
    x0 = Fraction(x0)
    if not P or not P(x0):
        raise PoleAtSamplePoint(f"P vanishes at x0 = {x0}")
    # y^(k) = N_k / P^(k+1) with N_0 = P' and N_{k+1} = N_k' P - (k+1) N_k P'
    dP = P.derivative()
    N = dP
    p0 = P(x0)
    values = []
    for k in range(n + 1):
        values.append(N(x0) / p0 ** (k + 1))
        N = N.derivative() * P - N * dP * (k + 1)
    return Jet(x0, tuple(values))


def substitute_solution(p, P):
    """Value of a DiffPoly at y = P'/P, as a rational function of x."""
    P = _poly(P)
    order = p.order
    dP = P.derivative()
    nums = [dP]
    for k in range(order):
        N = nums[-1]
        nums.append(N.derivative() * P - N * dP * (k + 1))
    top = max((sum((k + 1) * e for k, e in enumerate(m[1:])) for m in p.terms), default=0)
    num = PolyX()
    pow_cache = {}
    for m, c in p.terms.items():
        w = sum((k + 1) * e for k, e in enumerate(m[1:]))
        term = PolyX([0] * m[0] + [c])
        for k, e in enumerate(m[1:]):
            if e:
                key = (k, e)
                if key not in pow_cache:
                    pow_cache[key] = nums[k] ** e
                term = term * pow_cache[key]
        if top - w:
            term = term * P ** (top - w)
        num = num + term
    return RationalFunctionX(num, P ** top)


def verify_solution_identity(n, P, samples=0, seed=0):
    """(D + y)^k (P'/P) = P^(k+1)/P for k = 0..n, exactly; hence R_n vanishes when deg P <= n."""
    P = _poly(P)
    if P.degree > n:
        raise ValueError(f"deg P = {P.degree} exceeds n = {n}")
    rep = Report("integrals", "verify_solution_identity", n)
    yf = solution_function(P)
    cur = yf
    for k in range(n + 1):
        want = RationalFunctionX(P.derivative(k + 1), P)
        rep.check(f"(D+y)^{k} y = P^({k + 1})/P", cur - want, stage="operator", index=k)
        cur = cur.derivative() + yf * cur
    rep.check("R_n at y = P'/P vanishes", substitute_solution(member(n), P), stage="member")
    rng = random.Random(seed)
    done = 0
    while done < samples:
        x0 = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        if not P(x0):
            continue
        jet = solution_jet(n, P, x0)
        rep.check(f"R_n at sample x0={x0}", member(n).evaluate(jet), stage="sample", index=str(x0))
        done += 1
    return rep


@dataclass(frozen=True)
class InvariantExpr:
    n: int
    j: int
    body: ExpDiffPoly

    @property
    def local(self):
        """Coefficient of E (the invariant with the exponential stripped)."""
        return self.body.level(1)

    def to_json(self):
        return {"n": self.n, "j": self.j, "terms": self.body.to_json()}

    def to_text(self):
        from .render import text_exp

        return f"I_{self.j} = {text_exp(self.body)}"

    def to_latex(self):
        from .render import latex_exp

        return f"I_{{{self.j}}} = {latex_exp(self.body)}"


def invariant(n, j, verify=True):
    """I_j = (sum_{i=1..j} (-1)^(i+1)/(j-i)! x^(j-i) R_{n-i}) E."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= j <= n + 1:
        raise IndexOutOfRange(f"j must lie in 1..{n + 1}, got {j}")
    body = ZERO
    for i in range(1, j + 1):
        term = X ** (j - i) * member(n - i) * Fraction(1, factorial(j - i))
        body = body + (term if i % 2 else -term)
    inv = InvariantExpr(n, j, E(1) * body)
    if verify:
        res = reduce_mod(inv.body.total_derivative(), member(n))
        if res:
            raise VerificationFailure(
                "integrals", "invariant", f"D(I_{j}) does not vanish on R_{n}", res, index=j
            )
    return inv


@dataclass(frozen=True)
class FirstIntegralExpr:
    num: InvariantExpr
    den: InvariantExpr

    @property
    def net_weight(self):
        return sum(self.num.body.levels) - sum(self.den.body.levels)

    @property
    def order(self):
        return max(self.num.body.order, self.den.body.order)

    def derivative_residual(self):
        """Numerator of the quotient-rule derivative, reduced modulo R_n."""
        a, b = self.num.local, self.den.local
        expr = a.total_derivative() * b - a * b.total_derivative()
        return reduce_mod(expr, member(self.num.n))

    def evaluate(self, jet):
        d = self.den.local.evaluate(jet)
        if not d:
            raise ZeroDivisionError("first integral denominator vanishes at this jet")
        return self.num.local.evaluate(jet) / d

    def to_json(self):
        return {
            "n": self.num.n,
            "i": self.den.j,
            "j": self.num.j,
            "num": self.num.local.to_json(),
            "den": self.den.local.to_json(),
        }

    def to_text(self):
        from .render import text_diffpoly

        return f"F_{self.den.j}{self.num.j} = ({text_diffpoly(self.num.local)})/({text_diffpoly(self.den.local)})"


def first_integral(n, i, j):
    """F_ij = I_j / I_i; the exponential factors cancel."""
    if i == j:
        raise IdenticalIndices(f"i and j must differ, both are {i}")
    fi = FirstIntegralExpr(invariant(n, j), invariant(n, i))
    res = fi.derivative_residual()
    if res:
        raise VerificationFailure("integrals", "first_integral", f"D(F_{i}{j}) does not vanish", res, index=(i, j))
    return fi


@dataclass(frozen=True)
class CombinationSpec:
    """Coefficients f_0..f_n (polynomials in x) of sum f_i R_i."""

    coefficients: tuple

    def __post_init__(self):
        cs = tuple(c if isinstance(c, PolyX) else PolyX.const(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", cs)
        if not cs or not cs[-1]:
            raise InvalidCombination("the top coefficient f_n must be nonzero")

    @property
    def n(self):
        return len(self.coefficients) - 1

    def to_json(self):
        return {"coeffs": [c.to_json() for c in self.coefficients]}


def _polyx_to_diffpoly(f):
    return DiffPoly({(i,): c for i, c in enumerate(f.coeffs)})


def combine(spec):
    total = ZERO
    for i, f in enumerate(spec.coefficients):
        if f:
            total = total + _polyx_to_diffpoly(f) * member(i)
    return total


def check_linearisation(spec, P, samples=0, seed=0):
    """E_n at y = P'/P equals (sum f_i P^(i+1)) / P, exactly."""
    P = _poly(P)
    rep = Report("integrals", "check_linearisation", spec.n)
    lhs = substitute_solution(combine(spec), P)
    rhs_num = PolyX()
    for i, f in enumerate(spec.coefficients):
        rhs_num = rhs_num + f * P.derivative(i + 1)
    rhs = RationalFunctionX(rhs_num, P)
    rep.check("E_n(P'/P) = sum f_i P^(i+1) / P", lhs - rhs, stage="identity")
    rng = random.Random(seed)
    for _ in range(samples):
        x0 = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        if not P(x0):
            raise PoleAtSamplePoint(f"P vanishes at sample point {x0}")
        jet = solution_jet(spec.n, P, x0)
        val = combine(spec).evaluate(jet)
        rep.check(f"sample x0={x0}", val - rhs(x0), stage="sample", index=str(x0))
    rep.data["value"] = rhs
    return rep


def random_poly(rng, degree, lo=-9, hi=9, max_den=5):
    """Random PolyX of exactly the given degree (nonzero top coefficient)."""
    cs = [Fraction(rng.randint(lo, hi), rng.randint(1, max_den)) for _ in range(degree + 1)]
    while degree >= 0 and not cs[-1]:
        cs[-1] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, max_den))
    return PolyX(cs)
