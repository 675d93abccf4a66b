"""Exact root/radical helper tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumprod.exactmath import (
    ceil_log2,
    compare_fourth_root_sums,
    compare_rational_powers,
    floor_log2,
    fourth_power_free_part,
    fourth_root_sum_dominates,
    integer_fourth_root,
    integer_nth_root,
)


def test_logs():
    assert floor_log2(1) == 0 and floor_log2(5) == 2 and floor_log2(8) == 3
    assert ceil_log2(1) == 0 and ceil_log2(5) == 3 and ceil_log2(8) == 3
    with pytest.raises(ValueError):
        floor_log2(0)


@given(st.integers(min_value=0, max_value=10**24))
def test_integer_fourth_root(n):
    r = integer_fourth_root(n)
    assert r**4 <= n < (r + 1) ** 4


@given(st.integers(min_value=0, max_value=10**18), st.integers(min_value=1, max_value=7))
def test_integer_nth_root(n, k):
    r = integer_nth_root(n, k)
    assert r**k <= n
    assert (r + 1) ** k > n


@given(st.integers(min_value=1, max_value=10**9))
def test_fourth_power_free_part(n):
    c, k = fourth_power_free_part(n)
    assert c**4 * k == n
    # k has no fourth-power divisor > 1
    d = 2
    while d**4 <= k:
        assert k % d**4 != 0
        d += 1


def test_compare_fourth_root_sums_strict():
    # 3^{1/4} < 1 + 1: left=[3], right=[1,1]
    assert compare_fourth_root_sums([3], [1, 1]) == -1
    # 17^{1/4} > 2 = 16^{1/4}
    assert compare_fourth_root_sums([17], [16]) == 1


def test_compare_fourth_root_sums_exact_equalities():
    # trivial equality
    assert compare_fourth_root_sums([7], [7]) == 0
    # 2^{1/4} + 2^{1/4} = 2 * 2^{1/4} = 32^{1/4}: equality of irrationals
    assert compare_fourth_root_sums([32], [2, 2]) == 0
    # 16^{1/4} + 81^{1/4} = 2 + 3 = 5 = 625^{1/4}
    assert compare_fourth_root_sums([625], [16, 81]) == 0
    # and a hair above/below
    assert compare_fourth_root_sums([626], [16, 81]) == 1
    assert compare_fourth_root_sums([624], [16, 81]) == -1


def test_fourth_root_dominance_helper():
    assert fourth_root_sum_dominates(96, [6, 6])  # 96 = (2 * 6^{1/4})^4 exactly
    assert not fourth_root_sum_dominates(97, [6, 6])


@given(
    st.lists(st.integers(min_value=0, max_value=5000), min_size=1, max_size=5),
    st.lists(st.integers(min_value=0, max_value=5000), min_size=1, max_size=5),
)
@settings(max_examples=80)
def test_compare_fourth_root_sums_matches_floats(left, right):
    sign = compare_fourth_root_sums(left, right)
    approx = sum(x**0.25 for x in left) - sum(x**0.25 for x in right)
    if abs(approx) > 1e-6:
        assert sign == (1 if approx > 0 else -1)


def test_compare_rational_powers():
    # 8^{2/3} = 4 == 4^{1}
    assert compare_rational_powers(Fraction(8), 2, 3, Fraction(4), 1, 1) == 0
    # 2^{3/2} vs 3: 8 vs 9 -> less
    assert compare_rational_powers(Fraction(2), 3, 2, Fraction(3), 1, 1) == -1
    assert compare_rational_powers(Fraction(5, 2), 2, 1, Fraction(6), 1, 1) == 1
