import pytest
from hypothesis import given, strategies as st

from hwdegen.curvebackend import (
    RamifiedP1Cover,
    cech_matrix,
    default_positions,
    eigenspace_gamma_by_p_steps,
    frobenius_twist_invariance,
    gamma,
    gamma_bound_check,
    gamma_by_linear_power,
    hasse_polynomial_value,
    lambda_example,
    legendre_supersingular_by_counting,
    mobius,
    theta_exists,
)
from hwdegen.errors import InputError
from hwdegen.fields import gf
from hwdegen.padic import DigitContext


def cover(p, t, exps, r=None):
    F, pts = default_positions(p, len(exps))
    if r is not None:
        F = gf(p, r)
    return RamifiedP1Cover(DigitContext(p, t), F, pts, exps)


def test_s_equal_one_gives_empty_operator():
    c = cover(2, 2, [1, 2])
    assert c.s == 1
    assert cech_matrix(c).dim == 0
    assert gamma(c) == 0
    assert theta_exists(c)


def test_lambda_matrix_entry_is_minus_one_minus_lambda():
    F = gf(3, 2)
    for lam in F.elements():
        if lam in (0, 1):
            continue
        op = cech_matrix(lambda_example(3, lam, F))
        assert op.dim == 1
        assert op.matrix[0][0] == F.neg(F.add(1, lam))


def test_three_point_entry_from_expansion():
    # x^3 (x - 1)^3 has x^4 coefficient 3
    c = RamifiedP1Cover(DigitContext(5, 1), gf(5), [0, 1, None], [3, 3, 2])
    assert cech_matrix(c).matrix == ((3,),)
    assert gamma(c) == 1


def test_supersingular_lambda_over_prime_field():
    F = gf(3)
    c = lambda_example(3, 2, F)
    assert gamma(c) == 0
    assert not theta_exists(c)


def test_ordinary_lambda_over_f9():
    F = gf(3, 2)
    lam = next(a for a in F.elements() if F.mul(a, a) == F.neg(1))
    c = lambda_example(3, lam, F)
    assert gamma(c) == 1
    assert theta_exists(c)


def test_hasse_polynomial_matches_counting():
    for p in (3, 5, 7):
        F = gf(p, 2) if p < 7 else gf(p)
        for lam in F.elements():
            if lam in (0, 1):
                continue
            assert (hasse_polynomial_value(F, lam) == 0) == legendre_supersingular_by_counting(F, lam)


def test_rejects_bad_covers():
    F = gf(2, 2)
    with pytest.raises(InputError):
        RamifiedP1Cover(DigitContext(2, 2), F, [0, 1], [1, 1])
    with pytest.raises(InputError):
        RamifiedP1Cover(DigitContext(2, 2), F, [0, 0], [1, 2])
    with pytest.raises(InputError):
        gamma(cover(2, 2, [0, 0, 0]))


@pytest.mark.parametrize("p, t, exps, shifted", [(2, 2, [1, 1, 1], [2, 2, 2]), (3, 2, [5, 3, 0], [7, 1, 0])])
def test_shift_invariance_examples(p, t, exps, shifted):
    c = cover(p, t, exps)
    assert frobenius_twist_invariance(c, 1)
    assert gamma(c) == gamma(RamifiedP1Cover(c.ctx, c.field, c.points, shifted))


def test_three_point_maximum_at_t_three():
    assert gamma(cover(2, 3, [3, 5, 6])) == 1


def test_mobius_preserves_gamma():
    c = cover(3, 2, [2, 4, 6, 4])
    F = c.field
    moved = mobius(c, 0, 1, 1, 0)
    assert gamma(moved) == gamma(c)
    assert gamma(mobius(c, 1, F.generator_power(1), 0, 1)) == gamma(c)


@st.composite
def covers(draw):
    p, t = draw(st.sampled_from([(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4)]))
    ctx = DigitContext(p, t)
    k = draw(st.integers(3, 5))
    head = draw(st.lists(st.integers(0, ctx.n - 1), min_size=k - 1, max_size=k - 1))
    last = (-sum(head)) % ctx.n
    exps = [*head, last]
    if not any(exps):
        exps = [1, ctx.n - 1] + [0] * (k - 2)
    F, pts = default_positions(p, k)
    return RamifiedP1Cover(ctx, F, pts, exps)


@given(covers())
def test_three_routes_agree(c):
    value = gamma(c)
    assert value == gamma_by_linear_power(c)
    assert value == eigenspace_gamma_by_p_steps(c)
    assert gamma_bound_check(c)


@given(covers(), st.data())
def test_digit_shift_invariance(c, data):
    assert frobenius_twist_invariance(c, data.draw(st.integers(0, c.ctx.t - 1)))
