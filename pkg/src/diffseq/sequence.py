"""The sequence (D + y)^n y, its adjoint (D - y)^n y, and the
triangular linear system that ties the two together."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .diffalg import ONE, ZERO, DiffPoly, y
from .report import Report

__all__ = [
    "SequenceMember",
    "member",
    "generate_member",
    "check_gradient_recurrence",
    "check_interleave",
    "TriMatrix",
    "LVector",
    "GradientVector",
    "LinearSystem",
    "build_linear_system",
    "verify_matrix_lemmas",
    "euler_reconstruct",
    "matmul",
    "matvec",
]


@lru_cache(maxsize=None)
def member(n, adjoint=False):
    """Left-hand side of the n-th member; ``member(-1)`` is the constant 1."""
    if n < -1:
        raise ValueError("n must be >= -1")
    if n == -1:
        return ONE
    if n == 0:
        return y(0)
    prev = member(n - 1, adjoint)
    step = prev * y(0)
    return prev.total_derivative() + (-step if adjoint else step)


@dataclass(frozen=True)
class SequenceMember:
    n: int
    body: DiffPoly
    adjoint: bool = False

    def to_json(self):
        return {"n": self.n, "adjoint": self.adjoint, "terms": self.body.to_json()}

    def to_text(self):
        from .render import text_diffpoly

        return f"{text_diffpoly(self.body)} = 0"

    def to_latex(self):
        from .render import latex_diffpoly

        return f"{latex_diffpoly(self.body)} = 0"


def generate_member(n, adjoint=False):
    if n < 0:
        raise ValueError("n must be non-negative")
    return SequenceMember(n, member(n, adjoint), adjoint)


def check_gradient_recurrence(n):
    """dR_{n+1}/dy = (n+2) R_n and dR_n/dy^(k) = C(n+1, k+1) R_{n-k-1}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rep = Report("sequence", "check_gradient_recurrence", n)
    rep.check(
        f"d/dy R_{n + 1} = {n + 2} R_{n}",
        member(n + 1).diff(0) - member(n) * (n + 2),
        stage="recurrence",
    )
    body = member(n)
    for k in range(n + 1):
        rep.check(
            f"d/dy^({k}) R_{n} = C({n + 1},{k + 1}) R_{n - k - 1}",
            body.diff(k) - member(n - k - 1) * comb(n + 1, k + 1),
            stage="gradient",
            index=k,
        )
    return rep


def check_interleave(n):
    """R_n = Ra_n + sum_{i=1..n} C(n+1, i) Ra_{i-1} R_{n-i}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rhs = member(n, True)
    for i in range(1, n + 1):
        rhs = rhs + member(i - 1, True) * member(n - i) * comb(n + 1, i)
    rep = Report("sequence", "check_interleave", n)
    rep.check(f"interleave identity at n={n}", member(n) - rhs)
    return rep


@dataclass(frozen=True)
class TriMatrix:
    """n x n upper-triangular matrix of DiffPolys with -1 on the diagonal.

    ``rows`` is 0-based: ``rows[i][j]`` is the 1-based entry (i+1, j+1).
    """

    n: int
    rows: tuple
    adjoint: bool = False

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_json(self):
        return {"n": self.n, "adjoint": self.adjoint, "rows": [[e.to_json() for e in r] for r in self.rows]}


@dataclass(frozen=True)
class LVector:
    """Entries C(n+1, i) R_{n-i} for i = 1..n (0-based storage)."""

    n: int
    entries: tuple
    adjoint: bool = False

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        return {"n": self.n, "adjoint": self.adjoint, "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class GradientVector:
    """Entries df/dy^(i-1), i = 1..n (0-based storage)."""

    n: int
    entries: tuple

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        return {"n": self.n, "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class LinearSystem:
    Q: TriMatrix
    Qa: TriMatrix
    L: LVector
    La: LVector


def _tri(n, adjoint):
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i > j:
                row.append(ZERO)
            elif i == j:
                row.append(-ONE)
            else:
                entry = member(j - i - 1, adjoint) * comb(j, i)
                row.append(entry if adjoint else -entry)
        rows.append(tuple(row))
    return TriMatrix(n, tuple(rows), adjoint)


def _lvec(n, adjoint):
    return LVector(n, tuple(member(n - i, adjoint) * comb(n + 1, i) for i in range(1, n + 1)), adjoint)


def build_linear_system(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    return LinearSystem(_tri(n, False), _tri(n, True), _lvec(n, False), _lvec(n, True))


def matmul(a, b):
    """Product of two square matrices given as nested sequences of DiffPolys."""
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)) for i in range(n)
    )


def matvec(a, v):
    n = len(a)
    return tuple(sum((a[i][k] * v[k] for k in range(n)), ZERO) for i in range(n))


def euler_reconstruct(n, gradient):
    """Recover f of weight n+1 from its gradient (df/dy, ..., df/dy^(n-1)).

    Uses the weighted Euler identity sum (k+1) y^(k) df/dy^(k) = (n+1) f,
    valid for f free of x and weighted-homogeneous of weight n+1.
    """
    total = ZERO
    for k, g in enumerate(gradient):
        total = total + y(k) * g * (k + 1)
    return total / (n + 1)


def verify_matrix_lemmas(n):
    """Qa Q = I, Q La = -L, the solved gradient F = -L, and Euler reconstruction."""
    sys_ = build_linear_system(n)
    rep = Report("sequence", "verify_matrix_lemmas", n)
    prod = matmul(sys_.Qa.rows, sys_.Q.rows)
    for i in range(n):
        for j in range(n):
            rep.check(f"(Qa Q)[{i + 1},{j + 1}] = delta", prod[i][j] - (ONE if i == j else ZERO),
                      stage="inverse", index=(i + 1, j + 1))
    QLa = matvec(sys_.Q.rows, sys_.La.entries)
    for i in range(n):
        rep.check(f"(Q La)[{i + 1}] = -L[{i + 1}]", QLa[i] + sys_.L[i], stage="product", index=i + 1)
    F = GradientVector(n, QLa)
    for i in range(n):
        rep.check(f"F[{i + 1}] = -L[{i + 1}]", F[i] + sys_.L[i], stage="solve", index=i + 1)
    f = euler_reconstruct(n, F.entries)
    rep.check("Euler reconstruction recovers R_n", (y(n) - f) - member(n), stage="euler")
    return rep
