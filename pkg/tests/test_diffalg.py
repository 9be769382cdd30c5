from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import diffpolys, exppolys, small_fracs
from diffseq.diffalg import (
    ONE,
    X,
    ZERO,
    DiffPoly,
    E,
    ExpDiffPoly,
    Jet,
    evaluate_jet,
    partial_deriv,
    reduce_mod,
    total_derivative,
    weight_of,
    y,
)
from diffseq.errors import JetTooShort, NonMonicEquation, NotHomogeneous
from diffseq.sequence import member

R1 = y(1) + y(0) ** 2
R2 = y(2) + 3 * y(0) * y(1) + y(0) ** 3


def test_ring_examples():
    assert y(0) * y(1) == DiffPoly.monomial(1, 0, {0: 1, 1: 1})
    assert R1 * 1 == R1
    assert (E(1) * y(0)) * (E(-1) * y(0)) == ExpDiffPoly.lift(y(0) ** 2)


def test_zero_coefficients_are_dropped():
    p = y(0) - y(0)
    assert p == ZERO and not p.terms
    assert not (E(1) - E(1)).levels


def test_partial_derivative_examples():
    assert partial_deriv(y(0) ** 3, 0) == 3 * y(0) ** 2
    assert partial_deriv(3 * y(0) * y(1), 1) == 3 * y(0)
    assert partial_deriv(member(3), 0) == 4 * member(2)
    assert partial_deriv(X ** 2 * y(0), "x") == 2 * X * y(0)


def test_exponential_is_constant_under_partials():
    assert partial_deriv(E(1) * y(0), 0) == E(1)
    assert partial_deriv(E(2), "x") == ExpDiffPoly()


def test_total_derivative_examples():
    assert total_derivative(y(0)) == y(1)
    assert total_derivative(y(0) ** 2) == 2 * y(0) * y(1)
    assert total_derivative(E(1) * y(0)) == E(1) * R1
    assert total_derivative(X) == ONE


def test_reduce_mod_examples():
    assert reduce_mod(R2, R2) == ZERO
    assert reduce_mod(y(2), R2) == -3 * y(0) * y(1) - y(0) ** 3
    assert reduce_mod(y(3), R2) == -3 * y(1) ** 2 + 6 * y(0) ** 2 * y(1) + 3 * y(0) ** 4


def test_reduce_mod_rejects_non_monic():
    with pytest.raises(NonMonicEquation):
        reduce_mod(y(3), 2 * y(2) + y(0))
    with pytest.raises(NonMonicEquation):
        reduce_mod(y(3), y(0) * y(2))


def test_evaluate_examples():
    assert evaluate_jet(R2, Jet(0, (1, 2, 3))) == 10
    assert evaluate_jet(y(0), Jet(0, (5,))) == 5
    assert evaluate_jet(R1, Jet(0, (2, -4))) == 0
    assert evaluate_jet(E(2) * y(0), Jet(0, (3,)), e_value=Fraction(1, 2)) == Fraction(3, 4)


def test_evaluate_short_jet():
    with pytest.raises(JetTooShort):
        evaluate_jet(R2, Jet(0, (1, 2)))


def test_weight_examples():
    assert weight_of(y(0)) == 1
    assert weight_of(15 * y(0) * y(1) ** 2) == 5
    assert weight_of(ZERO) == 0
    assert weight_of(X * y(1)) == 1
    with pytest.raises(NotHomogeneous):
        weight_of(y(0) + y(1))


def test_order_and_degree():
    assert R2.order == 2
    assert ONE.order == -1
    assert (X ** 3 * y(1)).x_degree == 3
    assert R2.coefficient(1, 1) == 3 * y(0)


def test_json_round_trip_fixed():
    p = Fraction(-3, 2) * X * y(0) * y(2) ** 2 + 7
    rec = p.to_json()
    assert {"coeff": "-3/2", "x": 1, "derivs": {"0": 1, "2": 2}} in rec
    assert list(rec[0]) == ["coeff", "x", "derivs"]
    assert DiffPoly.from_json(rec) == p
    q = E(-1) * p + E(2) * y(1)
    assert all("eweight" in r for r in q.to_json())
    assert ExpDiffPoly.from_json(q.to_json()) == q


# --- properties ----------------------------------------------------------

@given(diffpolys(), diffpolys(), diffpolys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(exppolys(), exppolys(), exppolys())
def test_ring_laws_with_exponentials(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(exppolys(), exppolys())
def test_leibniz(a, b):
    D = total_derivative
    assert D(a * b) == D(a) * b + a * D(b)


@given(diffpolys(), st.integers(1, 4))
def test_partial_commutes_with_total_derivative(p, k):
    lhs = partial_deriv(total_derivative(p), k)
    rhs = total_derivative(partial_deriv(p, k)) + partial_deriv(p, k - 1)
    assert lhs == rhs


@given(diffpolys(), diffpolys(), st.lists(small_fracs, min_size=4, max_size=4), small_fracs)
def test_evaluation_is_a_homomorphism(a, b, vals, x0):
    jet = Jet(x0, tuple(vals))
    assert evaluate_jet(a * b, jet) == evaluate_jet(a, jet) * evaluate_jet(b, jet)
    assert evaluate_jet(a + b, jet) == evaluate_jet(a, jet) + evaluate_jet(b, jet)


@given(diffpolys(max_order=5), st.integers(1, 3))
def test_reduce_mod_idempotent(p, n):
    r = reduce_mod(p, member(n))
    assert r.order < n
    assert reduce_mod(r, member(n)) == r


@given(diffpolys(max_order=4), st.integers(1, 3))
def test_reduce_mod_respects_the_ideal(p, n):
    # p + q*D^j(R_n) reduces to the same thing as p
    q = y(0) + X
    Rn = member(n)
    lifted = p + q * total_derivative(total_derivative(Rn))
    assert reduce_mod(lifted, Rn) == reduce_mod(p, Rn)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.lists(st.integers(0, 3), min_size=1, max_size=4),
       st.integers(0, 2), st.integers(0, 2))
def test_weight_additivity(ea, eb, xa, xb):
    a = DiffPoly({(xa, *ea): 2})
    b = DiffPoly({(xb, *eb): -1})
    assert weight_of(a * b) == weight_of(a) + weight_of(b)


@given(exppolys())
def test_json_round_trip(p):
    assert ExpDiffPoly.from_json(p.to_json()) == p


@given(diffpolys())
def test_hash_agrees_with_equality(p):
    q = DiffPoly(dict(reversed(list(p.terms.items()))))
    assert p == q and hash(p) == hash(q)
