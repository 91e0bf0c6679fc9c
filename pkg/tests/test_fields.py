import itertools

import pytest
from hypothesis import given, strategies as st

from hwdegen.errors import InputError
from hwdegen.fields import gf, rank_over_field

FIELDS = [gf(2, 1), gf(3, 1), gf(2, 3), gf(3, 2), gf(5, 2), gf(7, 1)]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_multiplicative_group_is_cyclic(F):
    powers = {F.generator_power(k) for k in range(F.q - 1)}
    assert powers == set(range(1, F.q))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_frobenius_is_additive_and_has_order_r(F):
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert all(F.frob(a, F.r) == a for a in F.elements())


def test_prime_field_matches_integers():
    F = gf(7)
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.sub(2, 6) == 3


def test_point_names_round_trip():
    F = gf(3, 2)
    for a in [None, *F.elements()]:
        assert F.parse_point(F.format_point(a)) == a
    with pytest.raises(InputError):
        F.parse_point("seven")


def test_squares():
    F = gf(5, 2)
    squares = {F.mul(y, y) for y in F.elements()}
    assert all(F.is_square(a) == (a in squares) for a in F.elements())


def test_rank_examples():
    F = gf(3)
    assert rank_over_field(F, [[1, 2], [2, 1]]) == 1
    assert rank_over_field(F, [[1, 0], [0, 1]]) == 2
    assert rank_over_field(F, []) == 0


field_st = st.sampled_from(FIELDS)


@given(field_st, st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, F.q) == a


@given(field_st, st.data())
def test_polynomial_product_evaluates_pointwise(F, data):
    f = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=4))
    g = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=4))
    h = F.poly_to_elements(F.poly_mul(F.poly_from_elements(f), F.poly_from_elements(g)))

    def ev(coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    for x in F.elements():
        assert ev(h, x) == F.mul(ev(f, x), ev(g, x))
