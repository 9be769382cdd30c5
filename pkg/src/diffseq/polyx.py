"""Univariate polynomials and rational functions with Fraction coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

__all__ = ["PolyX", "RationalFunctionX", "rational_roots", "divisors"]


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational required, got {type(c).__name__}")


class PolyX:
    """Dense polynomial ``sum coeffs[i] * x**i``; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots):
        p = cls.const(1)
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = PolyX.const(other)
        if not isinstance(other, PolyX):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyX({self.to_text()})"

    def _coerce(self, other):
        if isinstance(other, PolyX):
            return other
        if isinstance(other, (int, Rational)):
            return PolyX.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyX([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return PolyX([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PolyX()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyX(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative exponent")
        out = PolyX.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k=1):
        p = self
        for _ in range(k):
            p = PolyX([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return PolyX(quot), PolyX(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return PolyX([c / self.lead for c in self.coeffs])

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def integer_coeffs(self):
        """Primitive integer coefficient list proportional to self."""
        den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints] if g else ints

    def to_text(self, var="x"):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                pw = var if i == 1 else f"{var}^{i}"
                body = pw if mag == 1 else f"{mag}*{pw}"
            terms.append((c < 0, body))
        if not terms:
            return "0"
        neg, body = terms[0]
        out = ("-" if neg else "") + body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_latex(self, var="x"):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            cl = str(mag) if mag.denominator == 1 else f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            if i == 0:
                body = cl
            else:
                pw = var if i == 1 else f"{var}^{{{i}}}"
                body = pw if mag == 1 else cl + pw
            terms.append((c < 0, body))
        if not terms:
            return "0"
        neg, body = terms[0]
        out = ("-" if neg else "") + body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls([Fraction(c) for c in obj["coeffs"]])


def divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p):
    """Rational roots of p with multiplicity, and the rootless cofactor.

    Candidates come from the rational root theorem; each hit is divided out
    exactly, so repeated roots are found with their multiplicity.
    """
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    roots = []
    cs = list(p.coeffs)
    while len(cs) > 1 and not cs[0]:
        roots.append(Fraction(0))
        cs.pop(0)
    rest = PolyX(cs)
    while rest.degree >= 1:
        ints = rest.integer_coeffs()
        found = None
        for q in divisors(ints[-1]):
            for s in divisors(ints[0]):
                for cand in (Fraction(s, q), Fraction(-s, q)):
                    if not rest(cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        rest = rest // PolyX((-found, 1))
    return sorted(roots), rest


class RationalFunctionX:
    """Quotient num/den of PolyX, kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, PolyX) else PolyX.const(num)
        den = PolyX.const(1) if den is None else (den if isinstance(den, PolyX) else PolyX.const(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = PolyX(), PolyX.const(1)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.lead
        self.num = PolyX([c / lead for c in num.coeffs])
        self.den = PolyX([c / lead for c in den.coeffs])

    def _coerce(self, other):
        if isinstance(other, RationalFunctionX):
            return other
        if isinstance(other, (PolyX, int, Rational)):
            return RationalFunctionX(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunctionX(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionX(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunctionX(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunctionX(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at x = {x}")
        return self.num(x) / d

    def derivative(self):
        return RationalFunctionX(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __repr__(self):
        return f"RationalFunctionX(({self.num.to_text()}) / ({self.den.to_text()}))"

    def to_text(self):
        if self.den == 1:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}
