import pytest
from hypothesis import given, strategies as st

from hwdegen.errors import InputError
from hwdegen.padic import (
    DigitBlock,
    DigitContext,
    MarkedDivisor,
    cut_split,
    digit_condition_witness,
    digit_shift,
    divisor_shift,
    interleave,
    interleave_coefficients,
    necessary_condition,
    s_of,
    shift_degrees_nondecreasing,
    shift_degrees_preserved,
    split_blocks,
    twist,
)


def divisor(p, t, *coeffs):
    return MarkedDivisor(DigitContext(p, t), {f"x{i + 1}": c for i, c in enumerate(coeffs)})


def test_context_modulus():
    assert DigitContext(2, 4).n == 15
    assert DigitContext(3, 2).digits(5) == [2, 1]
    with pytest.raises(InputError):
        DigitContext(6, 1)


@pytest.mark.parametrize("p, t, u, i, expected", [(2, 2, 2, 1, 1), (3, 2, 5, 1, 7), (5, 3, 77, 0, 77)])
def test_digit_shift_examples(p, t, u, i, expected):
    assert digit_shift(DigitContext(p, t), u, i) == expected


def test_shift_of_n_is_n():
    ctx = DigitContext(3, 3)
    assert all(digit_shift(ctx, ctx.n, i) == ctx.n for i in range(3))


def test_divisor_shift_examples():
    assert divisor_shift(divisor(3, 2, 5, 3), 1) == {"x1": 7, "x2": 1}
    assert divisor_shift(divisor(2, 2, 1, 2), 1) == {"x1": 2, "x2": 1}
    assert divisor_shift(divisor(2, 3, 0, 0), 2) == {"x1": 0, "x2": 0}


def test_s_examples():
    assert s_of(divisor(5, 1, 3, 3, 2)) == 2
    assert s_of(divisor(3, 1, 1, 1)) == 1
    assert s_of(divisor(2, 2, 0, 0)) == 0


@pytest.mark.parametrize(
    "p, t, coeffs",
    [(5, 1, (3, 3, 2)), (3, 2, (5, 3)), (2, 3, (3, 5, 6))],
)
def test_digit_condition_examples_hold(p, t, coeffs):
    D = divisor(p, t, *coeffs)
    report = necessary_condition(D, len(coeffs))
    assert report.holds
    assert shift_degrees_preserved(D)


def test_coefficient_equal_to_n_is_outside_the_range():
    with pytest.raises(InputError, match="outside"):
        divisor(3, 1, 1, 1, 2)
    assert DigitBlock(DigitContext(3, 1), {"x1": 1, "x2": 1, "x3": 2}).degree == 4


def test_digit_condition_failure_example():
    # 2 = digits (0,1): column sums (0, 3) against target 2
    D = divisor(2, 2, 2, 2, 2)
    report = necessary_condition(D, 3)
    assert not report.holds
    assert report.column_sums == (0, 3)
    assert not shift_degrees_preserved(D)
    assert not shift_degrees_nondecreasing(D)


def test_two_points_always_pass():
    # the second coefficient is n minus the first, so its digits are complementary
    ctx = DigitContext(3, 2)
    assert all(necessary_condition(divisor(3, 2, u, ctx.n - u), 2).holds for u in range(1, ctx.n))


def test_twist_examples():
    assert twist(divisor(5, 1, 3, 3, 2), 2).vector() == (2, 2, 0)
    D = divisor(3, 2, 5, 3)
    assert twist(D, 3).coeffs == divisor_shift(D, 1)
    assert twist(D, 1) == D


def test_cut_split_three_points():
    report = cut_split(divisor(5, 1, 3, 3, 2), ["x1", "x2", "x3"])
    assert report.a[2] == 2 and report.b[2] == 2
    assert report.passed


def test_cut_split_guards():
    with pytest.raises(InputError):
        cut_split(divisor(3, 1, 1, 1, 1, 1), ["x1", "x2", "x3", "x4"])
    with pytest.raises(InputError):
        divisor(7, 1, 6, 6, 0)


def test_interleave_single_part_unchanged():
    D = divisor(2, 2, 1, 2, 0)
    assert interleave([D]) == D


def test_interleave_reaching_n_is_rejected():
    ctx = DigitContext(2, 1)
    parts = [DigitBlock(ctx, {"x1": 1, "x2": 1, "x3": 0}), DigitBlock(ctx, {"x1": 0, "x2": 1, "x3": 1})]
    joined_ctx, coeffs = interleave_coefficients(parts)
    assert joined_ctx.n == 3 and coeffs == {"x1": 1, "x2": 3, "x3": 2}
    with pytest.raises(InputError, match="reaches n"):
        interleave(parts)
    ctx3 = DigitContext(3, 1)
    with pytest.raises(InputError, match="reaches n"):
        interleave([DigitBlock(ctx3, {"x1": 2, "x2": 1, "x3": 1}), DigitBlock(ctx3, {"x1": 2, "x2": 2, "x3": 0})])


def test_split_blocks_inverts_interleave():
    ctx = DigitContext(3, 1)
    parts = [DigitBlock(ctx, {"a": 2, "b": 2, "c": 0}), DigitBlock(ctx, {"a": 0, "b": 2, "c": 2})]
    joined, coeffs = interleave_coefficients(parts)
    assert split_blocks(joined, coeffs, [1, 1]) == [p.coeffs for p in parts]


@pytest.mark.parametrize("p, t, n_x", [(2, 3, 3), (2, 4, 4), (3, 2, 4), (5, 1, 3)])
def test_witness_passes_the_test(p, t, n_x):
    D = digit_condition_witness(DigitContext(p, t), [f"x{i}" for i in range(n_x)])
    assert D is not None
    assert necessary_condition(D, n_x).holds


def test_witness_missing_when_columns_cannot_fill():
    # p = 2, t = 2, three points: each column needs two ones but no point may be all ones
    assert digit_condition_witness(DigitContext(2, 2), ["a", "b", "c"]) is None
    assert digit_condition_witness(DigitContext(2, 1), ["a", "b", "c"]) is None


contexts = st.sampled_from([DigitContext(2, 3), DigitContext(3, 2), DigitContext(5, 2), DigitContext(2, 5)])


@given(contexts, st.data())
def test_shift_is_a_cyclic_action(ctx, data):
    u = data.draw(st.integers(0, ctx.n))
    i = data.draw(st.integers(0, ctx.t - 1))
    j = data.draw(st.integers(0, ctx.t - 1))
    assert digit_shift(ctx, digit_shift(ctx, u, i), j) == digit_shift(ctx, u, i + j)
    assert digit_shift(ctx, u, ctx.t) == u


@given(contexts, st.data())
def test_shift_matches_twist_by_power_of_p(ctx, data):
    u = data.draw(st.integers(0, ctx.n - 1))
    i = data.draw(st.integers(0, ctx.t - 1))
    assert digit_shift(ctx, u, i) == (u * ctx.p ** ((ctx.t - i) % ctx.t)) % ctx.n


@given(contexts, st.data())
def test_digit_test_agrees_with_shift_invariance(ctx, data):
    n_x = data.draw(st.integers(2, 4))
    head = data.draw(st.lists(st.integers(0, ctx.n - 1), min_size=n_x - 1, max_size=n_x - 1))
    last = (n_x - 1) * ctx.n - sum(head)
    if not 0 <= last < ctx.n:
        return
    D = MarkedDivisor(ctx, {f"x{k}": c for k, c in enumerate([*head, last])})
    assert necessary_condition(D, n_x).holds == shift_degrees_preserved(D)
