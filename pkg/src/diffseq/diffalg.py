"""Exact differential polynomials in x and the jet variables y, y', y'', ...

A monomial is stored as a tuple ``(x_exp, e0, e1, ..., ek)`` where ``e_j`` is
the exponent of the j-th derivative of y. Trailing zero exponents are
stripped, so the constant monomial is ``(0,)`` and ``y`` is ``(0, 1)``.

:class:`ExpDiffPoly` adjoins a formal exponential ``E = exp(int y dx)``:
``E`` is free of the jet variables (all partials vanish) and its total
derivative is ``D(E**lam) = lam * y * E**lam``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import JetTooShort, NonMonicEquation, NotHomogeneous

__all__ = [
    "DiffPoly",
    "ExpDiffPoly",
    "Jet",
    "X",
    "ONE",
    "ZERO",
    "y",
    "E",
    "partial_deriv",
    "total_derivative",
    "reduce_mod",
    "evaluate_jet",
    "weight_of",
]

CONST = (0,)


def _strip(mono):
    n = len(mono)
    while n > 1 and mono[n - 1] == 0:
        n -= 1
    return mono if n == len(mono) else mono[:n]


def _mono_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def _mono_weight(mono):
    return sum((k + 1) * e for k, e in enumerate(mono[1:])) - mono[0]


def mono_sort_key(mono):
    """Key giving the canonical (descending) term order.

    Monomials are compared lexicographically on the exponent vector read from
    the highest derivative down to y, then on the power of x. Sorting with
    ``reverse=True`` gives y'''' + 5yy''' + 10y'y'' + ... for the fourth member.
    """
    return (len(mono), mono[:0:-1], mono[0])


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


class DiffPoly:
    """Polynomial in x, y, y', ... with Fraction coefficients.

    Instances are immutable; ``terms`` maps monomial tuples to nonzero
    coefficients and must not be modified.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _as_fraction(c)
                if c:
                    key = _strip(tuple(mono))
                    c = clean.get(key, 0) + c
                    if c:
                        clean[key] = c
                    else:
                        clean.pop(key, None)
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls._wrap({CONST: c} if c else {})

    @classmethod
    def monomial(cls, coeff=1, x=0, derivs=None):
        """Single term ``coeff * x**x * prod(y^(k) ** e)`` for ``derivs = {k: e}``."""
        mono = [x]
        for k, e in (derivs or {}).items():
            if e < 0 or k < 0:
                raise ValueError("derivative orders and exponents must be non-negative")
            while len(mono) <= k + 1:
                mono.append(0)
            mono[k + 1] += e
        return cls({tuple(mono): coeff})

    # --- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, (int, Rational)):
            return DiffPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = _as_fraction(other)
            if not c:
                return ZERO
            return DiffPoly._wrap({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, DiffPoly):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DiffPoly._wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / _as_fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, ExpDiffPoly):
            return other == self
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .render import text_diffpoly

        return f"DiffPoly({text_diffpoly(self)})"

    # --- structure ------------------------------------------------------

    @property
    def order(self):
        """Highest derivative order present, or -1 if there is none."""
        return max((len(m) - 2 for m in self.terms), default=-1)

    @property
    def x_degree(self):
        return max((m[0] for m in self.terms), default=0)

    def sorted_terms(self):
        """Terms in canonical order as ``(monomial, coeff)`` pairs."""
        return sorted(self.terms.items(), key=lambda t: mono_sort_key(t[0]), reverse=True)

    def coefficient(self, k, power):
        """Coefficient of ``(y^(k))**power`` viewing self as a polynomial in y^(k)."""
        out = {}
        for m, c in self.terms.items():
            e = m[k + 1] if k + 1 < len(m) else 0
            if e == power:
                if power:
                    m = list(m)
                    m[k + 1] = 0
                    m = _strip(tuple(m))
                out[m] = c
        return DiffPoly._wrap(out)

    def degree_in(self, k):
        return max((m[k + 1] if k + 1 < len(m) else 0 for m in self.terms), default=0)

    def total_degree(self):
        """Degree in the jet variables (x does not count)."""
        return max((sum(m[1:]) for m in self.terms), default=0)

    def reflect(self):
        """Substitute y -> -y (so every y^(k) changes sign)."""
        return DiffPoly._wrap(
            {m: (-c if sum(m[1:]) % 2 else c) for m, c in self.terms.items()}
        )

    # --- calculus -------------------------------------------------------

    def diff(self, var):
        """Partial derivative by ``"x"`` or by y^(k) given as the integer k."""
        out = {}
        if var == "x":
            for m, c in self.terms.items():
                if m[0]:
                    out[(m[0] - 1,) + m[1:]] = c * m[0]
            return DiffPoly._wrap(out)
        k = int(var)
        i = k + 1
        for m, c in self.terms.items():
            if i < len(m) and m[i]:
                e = m[i]
                nm = _strip(m[:i] + (e - 1,) + m[i + 1 :])
                out[nm] = c * e
        return DiffPoly._wrap(out)

    def total_derivative(self):
        out = {}

        def acc(m, c):
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)

        for m, c in self.terms.items():
            if m[0]:
                acc((m[0] - 1,) + m[1:], c * m[0])
            n = len(m)
            for i in range(1, n):
                e = m[i]
                if not e:
                    continue
                nm = list(m)
                nm[i] -= 1
                if i + 1 < n:
                    nm[i + 1] += 1
                else:
                    nm.append(1)
                acc(_strip(tuple(nm)), c * e)
        return DiffPoly._wrap(out)

    D = total_derivative

    def substitute(self, k, value):
        """Replace y^(k) by the polynomial ``value``."""
        groups = {}
        for m, c in self.terms.items():
            e = m[k + 1] if k + 1 < len(m) else 0
            if e:
                m = list(m)
                m[k + 1] = 0
                m = _strip(tuple(m))
            groups.setdefault(e, {})[m] = c
        if set(groups) <= {0}:
            return self
        result = ZERO
        powers = {0: ONE}
        for e in sorted(groups):
            if e not in powers:
                powers[e] = value ** e
            result = result + DiffPoly._wrap(groups[e]) * powers[e]
        return result

    # --- evaluation -----------------------------------------------------

    def evaluate(self, jet):
        if self.order >= len(jet.values):
            raise JetTooShort(
                f"polynomial of order {self.order} needs {self.order + 1} jet values, "
                f"got {len(jet.values)}"
            )
        total = Fraction(0)
        x0, vals = jet.x0, jet.values
        for m, c in self.terms.items():
            t = c
            if m[0]:
                t *= x0 ** m[0]
            for i, e in enumerate(m[1:]):
                if e:
                    t *= vals[i] ** e
            total += t
        return total

    def weight(self):
        """Weighted degree with y^(k) of weight k+1 and x of weight -1."""
        found = None
        for m in self.terms:
            w = _mono_weight(m)
            if found is None:
                found = (m, w)
            elif w != found[1]:
                raise NotHomogeneous(found, (m, w))
        return 0 if found is None else found[1]

    # --- serialization --------------------------------------------------

    def to_json(self):
        return [
            {
                "coeff": str(c),
                "x": m[0],
                "derivs": {str(k): e for k, e in enumerate(m[1:]) if e},
            }
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, records):
        terms = {}
        for rec in records:
            mono = cls.monomial(1, rec.get("x", 0), {int(k): int(e) for k, e in rec.get("derivs", {}).items()})
            (m,) = mono.terms
            terms[m] = terms.get(m, 0) + Fraction(rec["coeff"])
        return cls(terms)


ZERO = DiffPoly._wrap({})
ONE = DiffPoly._wrap({CONST: Fraction(1)})
X = DiffPoly._wrap({(1,): Fraction(1)})


@lru_cache(maxsize=None)
def y(k=0):
    """The jet variable y^(k)."""
    return DiffPoly._wrap({(0,) + (0,) * k + (1,): Fraction(1)})


class ExpDiffPoly:
    """Finite sum ``sum_lam p_lam * E**lam`` with DiffPoly coefficients."""

    __slots__ = ("levels", "_hash")

    def __init__(self, levels=None):
        clean = {}
        for lam, p in (levels or {}).items():
            if not isinstance(p, DiffPoly):
                p = DiffPoly.const(p)
            lam = int(lam)
            p = clean.pop(lam, ZERO) + p
            if p:
                clean[lam] = p
        self.levels = clean
        self._hash = None

    @classmethod
    def _wrap(cls, levels):
        obj = cls.__new__(cls)
        obj.levels = levels
        obj._hash = None
        return obj

    @classmethod
    def lift(cls, p):
        if isinstance(p, ExpDiffPoly):
            return p
        if not isinstance(p, DiffPoly):
            p = DiffPoly.const(p)
        return cls._wrap({0: p} if p else {})

    def level(self, lam):
        return self.levels.get(lam, ZERO)

    @property
    def order(self):
        return max((p.order for p in self.levels.values()), default=-1)

    def to_diffpoly(self):
        """The level-0 part, provided no other level is present."""
        if set(self.levels) - {0}:
            raise ValueError("expression carries nonzero exponential weights")
        return self.level(0)

    def _map(self, fn):
        out = {}
        for lam, p in self.levels.items():
            q = fn(p)
            if q:
                out[lam] = q
        return ExpDiffPoly._wrap(out)

    def __add__(self, other):
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self.levels)
        for lam, p in other.levels.items():
            s = out[lam] + p if lam in out else p
            if s:
                out[lam] = s
            else:
                out.pop(lam, None)
        return ExpDiffPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._map(lambda p: -p)

    def __sub__(self, other):
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self._map(lambda p: p * other)
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        out = {}
        for l1, p1 in self.levels.items():
            for l2, p2 in other.levels.items():
                lam = l1 + l2
                s = out[lam] + p1 * p2 if lam in out else p1 * p2
                if s:
                    out[lam] = s
                else:
                    out.pop(lam, None)
        return ExpDiffPoly._wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / _as_fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ExpDiffPoly.lift(ONE)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = _lift_or_none(other)
        if other is None:
            return NotImplemented
        return self.levels == other.levels

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.levels.items()))
        return self._hash

    def __bool__(self):
        return bool(self.levels)

    def __repr__(self):
        from .render import text_exp

        return f"ExpDiffPoly({text_exp(self)})"

    def diff(self, var):
        return self._map(lambda p: p.diff(var))

    def total_derivative(self):
        out = {}
        for lam, p in self.levels.items():
            q = p.total_derivative()
            if lam:
                q = q + y(0) * p * lam
            if q:
                out[lam] = q
        return ExpDiffPoly._wrap(out)

    D = total_derivative

    def substitute(self, k, value):
        return self._map(lambda p: p.substitute(k, value))

    def evaluate(self, jet, e_value=1):
        e_value = _as_fraction(e_value)
        if e_value <= 0:
            raise ValueError("the value substituted for E must be positive")
        return sum(
            (p.evaluate(jet) * e_value ** lam for lam, p in self.levels.items()),
            Fraction(0),
        )

    def to_json(self):
        out = []
        for lam in sorted(self.levels, reverse=True):
            for rec in self.levels[lam].to_json():
                rec["eweight"] = lam
                out.append(rec)
        return out

    @classmethod
    def from_json(cls, records):
        by_level = {}
        for rec in records:
            by_level.setdefault(int(rec.get("eweight", 0)), []).append(rec)
        return cls({lam: DiffPoly.from_json(recs) for lam, recs in by_level.items()})


def _lift_or_none(p):
    if isinstance(p, ExpDiffPoly):
        return p
    if isinstance(p, (DiffPoly, int, Rational)):
        return ExpDiffPoly.lift(p)
    return None


def E(lam=1):
    """The formal exponential ``exp(lam * int y dx)``."""
    return ExpDiffPoly._wrap({lam: ONE})


@dataclass(frozen=True)
class Jet:
    """Values of y, y', ..., y^(m) at the point x0."""

    x0: Fraction
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "x0", _as_fraction(self.x0))
        vals = tuple(_as_fraction(v) for v in self.values)
        if not vals:
            raise ValueError("a jet needs at least the value of y")
        object.__setattr__(self, "values", vals)

    @property
    def order(self):
        return len(self.values) - 1


def partial_deriv(p, var):
    return p.diff(var)


def total_derivative(p):
    return p.total_derivative()


def evaluate_jet(p, jet, e_value=1):
    if isinstance(p, DiffPoly):
        return p.evaluate(jet)
    return p.evaluate(jet, e_value)


def weight_of(p):
    return p.weight()


def _split_monic(eqn):
    n = eqn.order
    if n < 0:
        raise NonMonicEquation("equation contains no derivative of y")
    lead = eqn.coefficient(n, 1)
    if eqn.degree_in(n) != 1 or lead != ONE:
        raise NonMonicEquation(
            f"coefficient of the order-{n} derivative must be exactly 1, got {lead!r}"
            if eqn.degree_in(n) == 1
            else f"equation is not linear in its order-{n} derivative"
        )
    return n, -(eqn - y(n))


# lru_cache guards its own table; concurrent misses recompute identical values.
@lru_cache(maxsize=4096)
def _rule(eqn, k):
    """Reduced expression for y^(k), k >= order(eqn), on solutions of eqn."""
    n, solved = _split_monic(eqn)
    if k == n:
        return solved
    return _rule(eqn, k - 1).total_derivative().substitute(n, solved)


def _reduce_poly(p, eqn, n):
    for k in range(p.order, n - 1, -1):
        p = p.substitute(k, _rule(eqn, k))
    return p


def reduce_mod(p, eqn):
    """Normal form of ``p`` modulo the differential ideal generated by ``eqn``.

    ``eqn`` must be linear in its highest derivative y^(n) with coefficient 1.
    Every y^(k) with k >= n is eliminated, highest order first.
    """
    if isinstance(eqn, ExpDiffPoly):
        eqn = eqn.to_diffpoly()
    n, _ = _split_monic(eqn)
    if isinstance(p, ExpDiffPoly):
        return p._map(lambda q: _reduce_poly(q, eqn, n))
    return _reduce_poly(p, eqn, n)
