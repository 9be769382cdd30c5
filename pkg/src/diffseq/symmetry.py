"""Point and evolutionary symmetry generators of the sequence members.

Point fields ``xi d/dx + eta d/dy`` are prolonged with the usual formula
zeta_k = D(zeta_{k-1}) - y^(k) D(xi). The exponential-nonlocal generators
exp_symmetry(i) have no d/dx part and are handled through their
characteristic q, whose prolongation is zeta_k = D^k(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .diffalg import ONE, ZERO, X, DiffPoly, E, ExpDiffPoly, reduce_mod, y
from .errors import ProlongationTooShort
from .report import Report
from .sequence import (
    GradientVector,
    build_linear_system,
    euler_reconstruct,
    matvec,
    member,
)

__all__ = [
    "PointField",
    "EvolutionaryField",
    "ProlongedField",
    "SymmetryCheck",
    "prolong",
    "apply_generator",
    "check_symmetry",
    "lie_bracket",
    "translation",
    "scaling",
    "projective",
    "second_member_symmetries",
    "exp_symmetry",
    "solve_gradient",
    "csg_certify",
    "star_identity_residual",
    "structure_constants",
    "check_sl2",
    "check_eigenrelations",
    "check_exp_symmetries",
]


@dataclass(frozen=True)
class PointField:
    xi: DiffPoly
    eta: DiffPoly

    def __post_init__(self):
        for name in ("xi", "eta"):
            p = getattr(self, name)
            if not isinstance(p, DiffPoly):
                p = DiffPoly.const(p)
                object.__setattr__(self, name, p)
            if p.order > 0:
                raise ValueError(f"{name} of a point field may depend on x and y only")

    def __call__(self, f):
        """Action on a function of (x, y)."""
        return self.xi * f.diff("x") + self.eta * f.diff(0)

    def __add__(self, other):
        return PointField(self.xi + other.xi, self.eta + other.eta)

    def __sub__(self, other):
        return PointField(self.xi - other.xi, self.eta - other.eta)

    def __mul__(self, c):
        return PointField(self.xi * c, self.eta * c)

    __rmul__ = __mul__

    def to_json(self):
        return {"type": "point", "xi": self.xi.to_json(), "eta": self.eta.to_json()}


@dataclass(frozen=True)
class EvolutionaryField:
    q: ExpDiffPoly

    def __post_init__(self):
        object.__setattr__(self, "q", ExpDiffPoly.lift(self.q))

    def to_json(self):
        return {"type": "evolutionary", "q": self.q.to_json()}


@dataclass(frozen=True)
class ProlongedField:
    base: object
    order: int
    xi: ExpDiffPoly
    zetas: tuple


def prolong(field, n):
    if n < 0:
        raise ValueError("prolongation order must be non-negative")
    if isinstance(field, PointField):
        dxi = field.xi.total_derivative()
        zetas = [ExpDiffPoly.lift(field.eta)]
        for k in range(1, n + 1):
            zetas.append(zetas[-1].total_derivative() - y(k) * dxi)
        return ProlongedField(field, n, ExpDiffPoly.lift(field.xi), tuple(zetas))
    if isinstance(field, EvolutionaryField):
        zetas = [field.q]
        for _ in range(n):
            zetas.append(zetas[-1].total_derivative())
        return ProlongedField(field, n, ExpDiffPoly.lift(ZERO), tuple(zetas))
    raise TypeError(f"not a symmetry generator: {field!r}")


def apply_generator(pf, p):
    p = ExpDiffPoly.lift(p)
    if p.order > pf.order:
        raise ProlongationTooShort(
            f"prolongation of order {pf.order} cannot act on an expression of order {p.order}"
        )
    out = pf.xi * p.diff("x") if pf.xi else ExpDiffPoly()
    for k in range(p.order + 1):
        dp = p.diff(k)
        if dp:
            out = out + pf.zetas[k] * dp
    return out


@dataclass(frozen=True)
class SymmetryCheck:
    is_symmetry: bool
    cofactor: ExpDiffPoly | None
    applied: ExpDiffPoly
    reduced: ExpDiffPoly

    def to_json(self):
        return {
            "is_symmetry": self.is_symmetry,
            "cofactor": None if self.cofactor is None else self.cofactor.to_json(),
        }


def _cofactor(applied, eqn, n):
    # eqn is monic-linear in y^(n), so an exact multiple c * eqn has c equal to
    # the coefficient of y^(n) in the applied expression.
    if applied.order > n:
        return None
    c = ExpDiffPoly({lam: p.coefficient(n, 1) for lam, p in applied.levels.items()})
    if any(p.degree_in(n) > 1 for p in c.levels.values()):
        return None
    if applied - c * eqn:
        return None
    return c


def check_symmetry(field, n, eqn=None):
    """Apply the n-th prolongation of ``field`` to R_n and reduce on shell.

    ``eqn`` overrides the target equation (it must be monic in its highest
    derivative); by default it is the n-th sequence member.
    """
    eqn = member(n) if eqn is None else eqn
    order = eqn.order
    applied = apply_generator(prolong(field, order), eqn)
    reduced = reduce_mod(applied, eqn)
    cof = _cofactor(applied, eqn, order)
    return SymmetryCheck(not reduced, cof, applied, reduced)


def lie_bracket(a, b):
    return PointField(a(b.xi) - b(a.xi), a(b.eta) - b(a.eta))


def translation():
    return PointField(ONE, ZERO)


def scaling():
    """x d/dx - y d/dy; its cofactor on R_n is the weight -(n+1)."""
    return PointField(X, -y(0))


def projective(n):
    """x^2 d/dx + (n - 2xy) d/dy."""
    return PointField(X * X, DiffPoly.const(n) - X * y(0) * 2)


def second_member_symmetries():
    """The eight point symmetries of R_2 (translation is last, scaling fourth)."""
    Y = y(0)
    xy = X * Y
    inner = 2 + xy * (xy - 2)
    return [
        PointField(X * X * Y, -Y * inner),
        PointField(Y, -(Y ** 3)),
        PointField(xy, Y * Y * (1 - xy)),
        PointField(X, -Y),
        PointField(X ** 3 * (xy - 2), -X * (xy - 2) * inner),
        PointField(-(X * X) * (xy - 2), xy * (xy - 2) * (xy - 1)),
        PointField(X * X, 2 - xy * 2),
        PointField(ONE, ZERO),
    ]


def exp_symmetry(i):
    """exp_symmetry(i) = -exp(-int y dx) (x^(i-1) y - (i-1) x^(i-2)) d/dy, i >= 1."""
    if i < 1:
        raise ValueError("i must be >= 1")
    body = X ** (i - 1) * y(0)
    if i >= 2:
        body = body - X ** (i - 2) * (i - 1)
    return EvolutionaryField(-(E(-1) * body))


def solve_gradient(system):
    """Back-substitute La = Qa F for F (Qa is unit upper-triangular up to sign)."""
    Qa, La = system.Qa, system.La
    n = Qa.n
    F = [ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = -La[i]
        for j in range(i + 1, n):
            acc = acc + Qa[i, j] * F[j]
        # diagonal entry is -1
        F[i] = acc
    return GradientVector(n, tuple(F))


def star_identity_residual(n, i):
    """Residual of the i-th member (2 <= i <= n+1) of the exponential-symmetry system for f = y^(n) - R_n."""
    R = member(n)
    lhs = R.diff(i - 2)
    for j in range(0, n - i + 1):
        lhs = lhs - member(j, True) * R.diff(i - 1 + j) * comb(i + j, j + 1)
    return lhs - member(n - i + 1, True) * comb(n + 1, n - i + 2)


def csg_certify(n):
    """Certify that the n+1 exponential symmetries determine R_n among n-th order equations."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rep = Report("symmetry", "csg_certify", n)
    system = build_linear_system(n)
    F = solve_gradient(system)
    for i in range(n):
        row = -F[i]
        for j in range(i + 1, n):
            row = row + system.Qa[i, j] * F[j]
        rep.check(f"system row {i + 1} satisfied", row - system.La[i], stage="system", index=i + 1)
    QLa = matvec(system.Q.rows, system.La.entries)
    for i in range(n):
        rep.check(f"F[{i + 1}] = (Q La)[{i + 1}]", F[i] - QLa[i], stage="solve", index=i + 1)
        rep.check(f"F[{i + 1}] = -L[{i + 1}]", F[i] + system.L[i], stage="gradient", index=i + 1)
    f = euler_reconstruct(n, F.entries)
    R = member(n)
    rep.check("f = y^(n) - R_n", f - (y(n) - R), stage="reconstruct")
    total = sum((member(j, True) * R.diff(j) for j in range(n + 1)), ZERO)
    rep.check("sum_j Ra_j dR_n/dy^(j) = R_n", total - R, stage="i=1")
    for i in range(2, n + 2):
        rep.check(f"exp_{i} relation", star_identity_residual(n, i), stage="star", index=i)
    rep.data["gradient"] = list(F.entries)
    return rep


def structure_constants(n):
    """Brackets of the three sl(2) fields for the n-th member, as a dict."""
    g1, g2, g3 = translation(), scaling(), projective(n)
    return {
        "[translation, scaling]": lie_bracket(g1, g2),
        "[translation, projective]": lie_bracket(g1, g3),
        "[scaling, projective]": lie_bracket(g2, g3),
    }


def check_sl2(n):
    rep = Report("symmetry", "check_sl2", n)
    g1, g2, g3 = translation(), scaling(), projective(n)
    for name, got, want in (
        ("[translation, scaling] = translation", lie_bracket(g1, g2), g1),
        ("[translation, projective] = 2 scaling", lie_bracket(g1, g3), g2 * 2),
        ("[scaling, projective] = projective", lie_bracket(g2, g3), g3),
    ):
        diff = got - want
        rep.check(name, diff.xi or diff.eta, stage="bracket")
    return rep


def check_eigenrelations(n):
    """The scaling and projective fields act on R_n with cofactors -(n+1) and -2x(n+1)."""
    rep = Report("symmetry", "check_eigenrelations", n)
    R = member(n)
    for name, field, cof in (
        ("scaling", scaling(), DiffPoly.const(-(n + 1))),
        ("projective", projective(n), X * Fraction(-2 * (n + 1))),
    ):
        applied = apply_generator(prolong(field, n), R)
        rep.check(f"{name} eigen-relation", applied - R * cof, stage=name)
    return rep


def check_exp_symmetries(n):
    rep = Report("symmetry", "check_exp_symmetries", n)
    for i in range(1, n + 2):
        res = check_symmetry(exp_symmetry(i), n)
        rep.check(f"exp_{i} is a symmetry", res.reduced, stage="exp_symmetry", index=i)
    pf = prolong(exp_symmetry(1), n)
    for k in range(n + 1):
        rep.check(f"exp_1 coefficient {k} = -E^-1 Ra_{k}", pf.zetas[k] + E(-1) * member(k, True),
                  stage="delta1-prolongation", index=k)
    return rep
