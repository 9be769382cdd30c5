import pytest

from diffseq.diffalg import ONE, ZERO, X, E, ExpDiffPoly, reduce_mod, y
from diffseq.errors import ProlongationTooShort
from diffseq.sequence import member
from diffseq.symmetry import (
    EvolutionaryField,
    PointField,
    apply_generator,
    check_exp_symmetries,
    check_eigenrelations,
    check_sl2,
    check_symmetry,
    csg_certify,
    exp_symmetry,
    translation,
    scaling,
    projective,
    lie_bracket,
    prolong,
    second_member_symmetries,
    star_identity_residual,
)

Y, Y1, Y2, Y3 = (y(k) for k in range(4))


def test_point_field_rejects_derivatives():
    with pytest.raises(ValueError):
        PointField(Y1, ZERO)


def test_prolongation_examples():
    pf = prolong(translation(), 3)
    assert all(not z for z in pf.zetas)
    g2 = prolong(scaling(), 4)
    for k, z in enumerate(g2.zetas):
        assert z == ExpDiffPoly.lift(-(k + 1) * y(k))
    g7 = PointField(X * X, 2 - 2 * X * Y)
    assert prolong(g7, 1).zetas[1] == ExpDiffPoly.lift(-2 * Y - 4 * X * Y1)


def test_first_exp_symmetry_prolongation():
    pf = prolong(exp_symmetry(1), 4)
    assert pf.zetas[1] == -(E(-1) * (Y1 - Y ** 2))
    for k in range(5):
        assert pf.zetas[k] == -(E(-1) * member(k, True))


def test_apply_generator_examples():
    assert apply_generator(prolong(scaling(), 2), member(2)) == ExpDiffPoly.lift(-3 * member(2))
    assert apply_generator(prolong(projective(3), 3), member(3)) == ExpDiffPoly.lift(-8 * X * member(3))
    assert not apply_generator(prolong(translation(), 5), member(5))


def test_prolongation_too_short():
    with pytest.raises(ProlongationTooShort):
        apply_generator(prolong(scaling(), 1), member(2))


def test_check_symmetry_cofactors():
    res = check_symmetry(scaling(), 2)
    assert res.is_symmetry and res.cofactor == ExpDiffPoly.lift(-3 * ONE)
    res = check_symmetry(exp_symmetry(1), 1)
    assert res.is_symmetry
    assert res.applied == -(E(-1) * member(1))
    assert res.cofactor == -E(-1)


def test_non_symmetry_is_reported_not_raised():
    res = check_symmetry(PointField(ZERO, Y), 2)
    assert not res.is_symmetry
    assert res.reduced == reduce_mod(res.applied, member(2))
    assert check_symmetry(PointField(ZERO, X), 3).is_symmetry is False


def test_r2_has_eight_symmetries():
    fields = second_member_symmetries()
    assert len(fields) == 8
    assert fields[3] == PointField(X, -Y)
    for f in fields:
        assert check_symmetry(f, 2).is_symmetry


def test_r3_loses_the_extra_r2_symmetries():
    assert not check_symmetry(second_member_symmetries()[1], 3).is_symmetry


def test_bracket_examples():
    g1, g2, g3 = translation(), scaling(), projective(4)
    assert lie_bracket(g1, g2) == g1
    assert lie_bracket(g1, g3) == 2 * g2
    assert lie_bracket(g2, g2) == PointField(ZERO, ZERO)
    assert lie_bracket(g3, g2) == -1 * g3


@pytest.mark.parametrize("n", range(1, 11))
def test_eigenrelations_and_sl2(n):
    assert check_eigenrelations(n).passed
    assert check_sl2(n).passed


@pytest.mark.parametrize("n", range(1, 9))
def test_exp_symmetries(n):
    check_exp_symmetries(n)
    for i in range(1, n + 2):
        assert check_symmetry(exp_symmetry(i), n).is_symmetry


@pytest.mark.parametrize("n", range(1, 9))
def test_star_family(n):
    for i in range(2, n + 2):
        assert star_identity_residual(n, i) == ZERO


@pytest.mark.parametrize("n", range(1, 9))
def test_csg(n):
    assert csg_certify(n).passed


def test_csg_gradient_for_fourth_member():
    grad = csg_certify(4).data["gradient"]
    want = [
        -5 * (y(3) + 4 * Y * Y2 + 3 * Y1 ** 2 + 6 * Y ** 2 * Y1 + Y ** 4),
        -10 * (Y2 + 3 * Y * Y1 + Y ** 3),
        -10 * (Y1 + Y ** 2),
        -5 * Y,
    ]
    assert grad == want
    assert csg_certify(1).data["gradient"] == [-2 * Y]


def test_evolutionary_field_json():
    js = exp_symmetry(2).to_json()
    assert js["type"] == "evolutionary"
    assert {r["eweight"] for r in js["q"]} == {-1}
    assert scaling().to_json()["type"] == "point"


def test_exp_symmetry_index_checked():
    with pytest.raises(ValueError):
        exp_symmetry(0)
    assert isinstance(exp_symmetry(3), EvolutionaryField)
