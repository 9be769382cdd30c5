"""Painleve (ARS) analysis of autonomous polynomial ODEs.

The pole is placed at chi = 0. For a monomial ``prod (y^(k))**e_k`` the
substitution y = alpha * chi**p contributes chi to the power
``sum e_k (p - k)``; the leading balance, the resonance polynomial and the
Laurent coefficients all follow from that bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CompatibilityFailure,
    InconsistentBalance,
    IrrationalLeadingCoefficient,
    NoBalance,
    NonIntegerResonance,
    RepeatedResonance,
)
from .polyx import PolyX, rational_roots
from .sequence import member

__all__ = [
    "ParamPoly",
    "Balance",
    "Branch",
    "LaurentSeries",
    "PainleveReport",
    "falling",
    "falling_poly",
    "leading_polynomial",
    "dominant_balance",
    "resonance_polynomial",
    "shares_exponent",
    "branch_resonances",
    "compatibility_test",
    "series_residual",
    "analyze_branch",
    "painleve_report",
    "verify_painleve",
    "closed_form_resonances",
    "apply_pattern_rule",
    "resonance_table",
    "general_pattern_text",
    "general_pattern_latex",
]


def falling(a, k):
    out = 1
    for i in range(k):
        out *= a - i
    return out


def falling_poly(p, k):
    """fall(p + r, k) as a polynomial in r."""
    out = PolyX.const(1)
    for i in range(k):
        out = out * PolyX((p - i, 1))
    return out


def _check_autonomous(eqn):
    if any(m[0] for m in eqn.terms):
        raise ValueError("singularity analysis requires an autonomous equation (no explicit x)")


def _chi_exponent(mono, p):
    return sum(e * (p - k) for k, e in enumerate(mono[1:]))


def _candidate_exponents(eqn):
    monos = list(eqn.terms)
    cands = set()
    for i, a in enumerate(monos):
        da, sa = sum(a[1:]), sum(k * e for k, e in enumerate(a[1:]))
        for b in monos[i + 1 :]:
            db, sb = sum(b[1:]), sum(k * e for k, e in enumerate(b[1:]))
            # da*p - sa = db*p - sb
            if da != db and (sa - sb) % (da - db) == 0:
                cands.add((sa - sb) // (da - db))
    return sorted(c for c in cands if c < 0)


def leading_polynomial(eqn, p):
    """Coefficient of the dominant chi power after y = alpha chi^p, as a PolyX in alpha."""
    _check_autonomous(eqn)
    exps = {m: _chi_exponent(m, p) for m in eqn.terms}
    low = min(exps.values())
    out = PolyX()
    for m, c in eqn.terms.items():
        if exps[m] != low:
            continue
        coeff = c
        for k, e in enumerate(m[1:]):
            coeff *= Fraction(falling(p, k)) ** e
        deg = sum(m[1:])
        out = out + PolyX([0] * deg + [coeff])
    return out, low


@dataclass(frozen=True)
class Balance:
    p: int
    alpha: Fraction
    alpha_poly: PolyX


def dominant_balance(eqn):
    """Integer leading exponents p < 0 with their nonzero rational alphas."""
    _check_autonomous(eqn)
    out = []
    saw_balance = False
    for p in _candidate_exponents(eqn):
        poly, low = leading_polynomial(eqn, p)
        dominant = [m for m in eqn.terms if _chi_exponent(m, p) == low]
        if len(dominant) < 2 or not poly:
            continue
        saw_balance = True
        roots, rest = rational_roots(poly)
        nonzero = sorted({r for r in roots if r})
        if not nonzero and rest.degree > 0:
            raise IrrationalLeadingCoefficient(f"p={p}: alpha polynomial {poly.to_text('a')} has no nonzero rational root")
        out.extend(Balance(p, a, poly) for a in nonzero)
    if not saw_balance:
        raise NoBalance("no negative integer exponent balances two or more terms")
    return out


def resonance_polynomial(eqn, p, alpha):
    """Q(r) = sum_k [d eqn / d y^(k)](alpha chi^p) * fall(p + r, k), chi power removed.

    Only the m-linear terms carrying the lowest chi power enter; for a
    weighted-homogeneous equation such as R_n every term shares that power.
    """
    _check_autonomous(eqn)
    alpha = Fraction(alpha)
    by_exp = {}
    for k in range(eqn.order + 1):
        part = eqn.diff(k)
        for m, c in part.terms.items():
            v = c
            for j, e in enumerate(m[1:]):
                v *= (alpha * falling(p, j)) ** e
            if v:
                total = _chi_exponent(m, p) + p - k
                by_exp[total] = by_exp.get(total, PolyX()) + falling_poly(p, k) * v
    by_exp = {x: q for x, q in by_exp.items() if q}
    if not by_exp:
        raise InconsistentBalance(f"no m-linear terms survive at p={p}, alpha={alpha}")
    return by_exp[min(by_exp)]


def shares_exponent(eqn, p, alpha):
    """True if all m-linear terms of the balance carry one chi power."""
    alpha = Fraction(alpha)
    seen = set()
    for k in range(eqn.order + 1):
        for m, c in eqn.diff(k).terms.items():
            v = c
            for j, e in enumerate(m[1:]):
                v *= (alpha * falling(p, j)) ** e
            if v:
                seen.add(_chi_exponent(m, p) + p - k)
    return len(seen) <= 1


def _resonances_from_poly(q):
    roots, rest = rational_roots(q)
    if rest.degree > 0:
        raise NonIntegerResonance(rest)
    bad = [r for r in roots if r.denominator != 1]
    if bad:
        raise NonIntegerResonance(PolyX.from_roots(bad))
    return sorted(int(r) for r in roots)


def branch_resonances(eqn, branch):
    """Sorted integer resonances (with multiplicity) of a (p, alpha) balance."""
    q = resonance_polynomial(eqn, branch.p, branch.alpha)
    return _resonances_from_poly(q)


class ParamPoly:
    """Sparse polynomial in the free resonance parameters c_r."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def param(cls, r):
        return cls({((r, 1),): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ParamPoly._raw(out)

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def scale(self, c):
        if not c:
            return ParamPoly()
        return ParamPoly._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                d = dict(m1)
                for r, e in m2:
                    d[r] = d.get(r, 0) + e
                m = tuple(sorted(d.items()))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ParamPoly._raw(out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        return isinstance(other, ParamPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"ParamPoly({self.to_text()})"

    def to_text(self):
        if not self.terms:
            return "0"
        out = ""
        for m, c in sorted(self.terms.items()):
            f = "*".join(f"c{r}" if e == 1 else f"c{r}^{e}" for r, e in m)
            mag = abs(c)
            body = str(mag) if not f else (f if mag == 1 else f"{mag}*{f}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self):
        return self.to_text()


_ZERO_P = ParamPoly()


def _series_mul(a, b, length):
    out = [_ZERO_P] * length
    for i, x in enumerate(a[:length]):
        if not x:
            continue
        for j, yv in enumerate(b[: length - i]):
            if yv:
                out[i + j] = out[i + j] + x * yv
    return out


def series_residual(eqn, p, coeffs, length):
    """Coefficients of eqn(sum a_k chi^(p+k)) from the dominant power upward.

    Returns ``(low, values)`` with values[i] the coefficient of chi^(low+i),
    i < length. Only the first ``len(coeffs)`` Laurent terms are used.
    """
    order = eqn.order
    derivs = []
    for k in range(order + 1):
        derivs.append([a.scale(falling(p + i, k)) for i, a in enumerate(coeffs)])
    base = {m: sum(e * (p - k) for k, e in enumerate(m[1:])) for m in eqn.terms}
    low = min(base.values())
    out = [_ZERO_P] * length
    for m, c in eqn.terms.items():
        shift = base[m] - low
        if shift >= length:
            continue
        span = length - shift
        prod = [ParamPoly.const(1)] + [_ZERO_P] * (span - 1)
        for k, e in enumerate(m[1:]):
            for _ in range(e):
                prod = _series_mul(prod, derivs[k], span)
        for i, v in enumerate(prod):
            if v:
                out[shift + i] = out[shift + i] + v.scale(c)
    return low, out


@dataclass
class LaurentSeries:
    p: int
    coefficients: list
    depth: int
    params: list = field(default_factory=list)

    def to_json(self):
        return {
            "p": self.p,
            "depth": self.depth,
            "params": [f"c{r}" for r in self.params],
            "coefficients": [a.to_text() for a in self.coefficients],
        }


@dataclass
class Branch:
    p: int
    alpha: Fraction
    resonance_poly: PolyX
    resonances: list
    compatibility: list = field(default_factory=list)
    series: LaurentSeries | None = None

    @property
    def compatible(self):
        return all(ok for _, ok in self.compatibility)

    def to_json(self):
        return {
            "alpha": str(self.alpha),
            "p": self.p,
            "resonances": list(self.resonances),
            "compatibility": [{"r": r, "pass": ok} for r, ok in self.compatibility],
        }


def compatibility_test(eqn, branch, depth=None, strict=True):
    """Solve the Laurent coefficients order by order up to ``depth``.

    At a positive resonance the forcing term must vanish identically in the
    parameters already introduced; the coefficient then becomes a new free
    parameter c_r. With ``strict`` a failure raises CompatibilityFailure,
    otherwise it is recorded and the coefficient is set to its parameter.
    Returns ``(series, [(r, passed), ...])``.
    """
    p, alpha = branch.p, Fraction(branch.alpha)
    q = resonance_polynomial(eqn, p, alpha)
    res = _resonances_from_poly(q)
    positive = [r for r in res if r > 0]
    if len(set(positive)) != len(positive):
        dup = next(r for r in positive if positive.count(r) > 1)
        raise RepeatedResonance(dup)
    if depth is None:
        depth = max(positive, default=0)
    if depth < max(positive, default=0):
        raise ValueError("depth must reach the largest positive resonance")
    coeffs = [ParamPoly.const(alpha)]
    params, record = [], []
    for k in range(1, depth + 1):
        trial = coeffs + [_ZERO_P]
        _, vals = series_residual(eqn, p, trial, k + 1)
        forcing = vals[k]
        qk = q(k)
        if qk:
            coeffs.append(forcing.scale(-1 / qk))
            continue
        ok = not forcing
        record.append((k, ok))
        if not ok and strict:
            raise CompatibilityFailure(k, forcing)
        params.append(k)
        coeffs.append(ParamPoly.param(k))
    return LaurentSeries(p, coeffs, depth, params), record


def analyze_branch(eqn, balance, depth=None):
    q = resonance_polynomial(eqn, balance.p, balance.alpha)
    res = _resonances_from_poly(q)
    series, record = compatibility_test(eqn, balance, depth, strict=False)
    return Branch(balance.p, balance.alpha, q, res, record, series)


def closed_form_resonances(n, j):
    """Closed form for the branch alpha = j of the n-th member."""
    return sorted([-1] + list(range(1, n - j + 1)) + list(range(-j, -1)))


def apply_pattern_rule(n, prev):
    """Replace the largest positive resonance r by r - (n+1)."""
    top = max(r for r in prev if r > 0)
    out = list(prev)
    out.remove(top)
    out.append(top - (n + 1))
    return sorted(out)


@dataclass
class PainleveReport:
    n: int
    branches: list
    pattern_rule_holds: bool
    closed_form_holds: bool
    painleve_pass: bool

    def to_json(self):
        return {
            "n": self.n,
            "branches": [b.to_json() for b in self.branches],
            "pattern_rule_holds": self.pattern_rule_holds,
            "closed_form_holds": self.closed_form_holds,
            "painleve_pass": self.painleve_pass,
        }

    def to_text(self):
        lines = [f"R_{self.n}"]
        for b in self.branches:
            lines.append(f"  alpha = {b.alpha}: r = {','.join(str(r) for r in _display_order(b.resonances))}")
        lines.append(f"pattern rule: {'holds' if self.pattern_rule_holds else 'FAILS'}")
        lines.append(f"Painleve test: {'pass' if self.painleve_pass else 'FAIL'}")
        return "\n".join(lines)

    def to_latex(self):
        return resonance_table_latex([self])


def _display_order(res):
    # -1 first, then positives ascending, then remaining negatives descending
    pos = sorted(r for r in res if r > 0)
    neg = sorted((r for r in res if r < -1), reverse=True)
    return [-1] * res.count(-1) + pos + neg


def painleve_report(n, depth=None, eqn=None):
    """Full analysis of R_n: every branch, resonances, compatibility and the pattern rule."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eqn = member(n) if eqn is None else eqn
    balances = dominant_balance(eqn)
    branches = [analyze_branch(eqn, b, depth) for b in balances]
    branches.sort(key=lambda b: b.alpha)
    alphas = [b.alpha for b in branches]
    expected_alphas = [Fraction(j) for j in range(1, n + 1)]
    closed = alphas == expected_alphas and all(
        b.p == -1 and b.resonances == closed_form_resonances(n, j)
        for j, b in enumerate(branches, start=1)
    )
    rule = alphas == expected_alphas and all(
        branches[j].resonances == apply_pattern_rule(n, branches[j - 1].resonances)
        for j in range(1, len(branches))
    )
    passed = bool(branches) and all(b.compatible for b in branches) and all(
        b.resonances.count(-1) >= 1 for b in branches
    )
    return PainleveReport(n, branches, rule, closed, passed)


def verify_painleve(n, depth=None):
    """Raise VerificationFailure unless the report reproduces the closed form."""
    from .report import Report

    rep = painleve_report(n, depth)
    out = Report("singularity", "painleve_report", n)
    for b in rep.branches:
        out.check(f"alpha={b.alpha} compatible", [r for r, ok in b.compatibility if not ok],
                  stage="compatibility", index=str(b.alpha))
        qb = PolyX.from_roots(b.resonances) * b.resonance_poly.lead
        out.check(f"alpha={b.alpha} factorization", (qb - b.resonance_poly).coeffs,
                  stage="factorization", index=str(b.alpha))
    out.check("closed-form resonances", not rep.closed_form_holds, stage="closed_form")
    out.check("pattern rule", not rep.pattern_rule_holds, stage="pattern")
    out.check("Painleve test passes", not rep.painleve_pass, stage="verdict")
    out.data["report"] = rep.to_json()
    return out


# --- tables -------------------------------------------------------------

def resonance_table(max_n=4):
    return [painleve_report(n) for n in range(1, max_n + 1)]


def resonance_table_latex(reports):
    lines = [
        r"\begin{array}{|c|l|l|}\hline",
        r"\mbox{Member} & \mbox{Leading-order coefficients} & \mbox{Resonances} \\ \hline",
    ]
    for rep in reports:
        for i, b in enumerate(rep.branches):
            member_cell = f"R_{{{rep.n}}}" if i == 0 else ""
            rs = ",".join(str(r) for r in _display_order(b.resonances))
            lines.append(f"{member_cell} & \\alpha = {b.alpha} & r = {rs} \\\\")
        lines.append(r"\hline")
    lines.append(r"\end{array}")
    return "\n".join(lines)


def general_pattern_text():
    return "\n".join(
        [
            "alpha = 1: r = -1,1,2,...,n-1",
            "alpha = 2: r = -1,1,...,n-2,-2",
            "...",
            "alpha = n: r = -1,-2,...,-n",
        ]
    )


def general_pattern_latex():
    return "\n".join(
        [
            r"\begin{array}{|c|l|l|}\hline",
            r"\mbox{Member} & \mbox{Leading-order coefficients} & \mbox{Resonances} \\ \hline",
            r" & \alpha = 1 & r = -1,1,2,\ldots,n-1 \\",
            r"R_n & \alpha = 2 & r = -1,1,\ldots,n-2,-2 \\",
            r" & \quad\vdots & \quad\vdots \\",
            r" & \alpha = n & r = -1,-2,\ldots,-n \\ \hline",
            r"\end{array}",
        ]
    )
