"""Energy tests, oracle first.

The naive quadruple loop below is the independent oracle for both
energies; representation multisets are enumerated directly where spec
values were derived.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumprod.core import RatSet, dilate, translate
from sumprod.energy import (
    additive_energy,
    additive_third_moment,
    energy_via_slices,
    multiplicative_energy,
    quotient_slice_profile,
    rep_counts,
    sigma_count,
    sigma_sup,
    sigma_sup_with_witness,
    subadditivity_check,
    third_moment,
)
from sumprod.errors import BudgetError, DomainError

scalars = st.fractions(min_value=-1000, max_value=1000, max_denominator=100)
small_sets = st.lists(scalars, min_size=1, max_size=8).map(RatSet)
nonzero_sets = st.lists(
    scalars.filter(lambda f: f != 0), min_size=1, max_size=8
).map(RatSet)


# -- oracles ----------------------------------------------------------------------


def naive_additive_energy(a, b):
    return sum(
        1
        for a1 in a
        for b1 in b
        for a2 in a
        for b2 in b
        if a1 + b1 == a2 + b2
    )


def naive_multiplicative_energy(a, b):
    return sum(
        1
        for a1 in a
        for b1 in b
        for a2 in a
        for b2 in b
        if a1 * b1 == a2 * b2
    )


def naive_sigma(alphas, sets):
    a1, a2, a3 = (Fraction(x) for x in alphas)
    s1, s2, s3 = sets
    return sum(
        1
        for x in s1
        for y in s2
        for z in s3
        if a1 * x + a2 * y + a3 * z == 0
    )


# -- representation function --------------------------------------------------------


def test_rep_counts_totals_and_support():
    a, b = RatSet([1, 2, 3]), RatSet([1, 2])
    for op in "+-*/":
        counts = rep_counts(a, b, op)
        assert sum(counts.values()) == len(a) * len(b)
    assert rep_counts(a, b, "+") == {
        Fraction(2): 1,
        Fraction(3): 2,
        Fraction(4): 2,
        Fraction(5): 1,
    }


# -- energies ------------------------------------------------------------------------


def test_additive_energy_examples():
    # DERIVED: enumerate all 16 quadruples of {1,2}
    assert naive_additive_energy(RatSet([1, 2]), RatSet([1, 2])) == 6
    assert additive_energy(RatSet([1, 2])) == 6
    # DERIVED: r+ over {2..6} is (1,2,3,2,1)
    assert sum(k * k for k in (1, 2, 3, 2, 1)) == 19
    assert additive_energy(RatSet([1, 2, 3])) == 19
    assert additive_energy(RatSet([1])) == 1


def test_multiplicative_energy_examples():
    # DERIVED: product multiset of {1,2,3} is {1,2,2,3,3,4,6,6,9}
    assert naive_multiplicative_energy(RatSet([1, 2, 3]), RatSet([1, 2, 3])) == 15
    assert multiplicative_energy(RatSet([1, 2, 3])) == 15
    # DERIVED: {1,2,4} is log-isomorphic to the AP {0,1,2}
    assert multiplicative_energy(RatSet([1, 2, 4])) == additive_energy(RatSet([0, 1, 2]))
    assert multiplicative_energy(RatSet([1, 2, 4])) == 19
    # DERIVED: products 2,4,4,8
    assert multiplicative_energy(RatSet([2, 4]), RatSet([1, 2])) == 6
    with pytest.raises(DomainError):
        multiplicative_energy(RatSet([0, 1]))


def test_energy_via_slices_examples():
    a = RatSet([1, 2, 3])
    profile = quotient_slice_profile(a)
    assert sorted(profile.values(), reverse=True) == [3, 1, 1, 1, 1, 1, 1]
    assert energy_via_slices(a) == 15
    assert energy_via_slices(RatSet([1])) == 1
    b = RatSet([1, 2])
    assert sorted(quotient_slice_profile(b).values(), reverse=True) == [2, 1, 1]
    assert energy_via_slices(b) == 6 == multiplicative_energy(b)


def test_third_moment_examples():
    assert third_moment(RatSet([1, 2])) == 10  # 1 + 8 + 1
    assert third_moment(RatSet([1, 2, 3])) == 33  # 27 + 6
    assert third_moment(RatSet([1])) == 1


@given(nonzero_sets)
@settings(max_examples=40)
def test_slice_identity_property(a):
    assert energy_via_slices(a) == multiplicative_energy(a)


@given(small_sets, small_sets)
@settings(max_examples=30, deadline=None)
def test_additive_energy_matches_oracle(a, b):
    assert additive_energy(a, b) == naive_additive_energy(a, b)


@given(nonzero_sets, nonzero_sets)
@settings(max_examples=30, deadline=None)
def test_multiplicative_energy_matches_oracle(a, b):
    assert multiplicative_energy(a, b) == naive_multiplicative_energy(a, b)


@given(nonzero_sets, scalars.filter(lambda f: f != 0), scalars)
@settings(max_examples=30, deadline=None)
def test_energy_invariances(a, c, t):
    assert additive_energy(dilate(a, c)) == additive_energy(a)
    assert additive_energy(translate(a, t)) == additive_energy(a)
    assert multiplicative_energy(dilate(a, c)) == multiplicative_energy(a)


@given(small_sets, small_sets)
@settings(max_examples=30, deadline=None)
def test_cross_energy_bounds(a, b):
    e = additive_energy(a, b)
    assert len(a) * len(b) <= e <= len(a) * len(b) * min(len(a), len(b))


@given(nonzero_sets)
@settings(max_examples=40)
def test_cauchy_schwarz_bounds(a):
    from sumprod.core import productset, quotientset

    e = multiplicative_energy(a)
    n = len(a)
    assert n * n <= e <= n**3
    assert e * len(quotientset(a, a)) >= n**4
    assert e * len(productset(a, a)) >= n**4


# -- sigma ---------------------------------------------------------------------------


def test_sigma_count_examples():
    a = RatSet([1, 2, 3])
    assert naive_sigma((1, 1, -1), (a, a, a)) == 3
    assert sigma_count((1, 1, -1), (a, a, a)) == 3
    b = RatSet([1, 2])
    assert sigma_count((1, 1, -2), (b, b, b)) == 2  # (1,1,1), (2,2,2)
    s = RatSet([1])
    assert sigma_count((1, 1, 1), (s, s, s)) == 0
    with pytest.raises(DomainError):
        sigma_count((0, 1, 1), (a, a, a))


@given(small_sets, small_sets, small_sets)
@settings(max_examples=25, deadline=None)
def test_sigma_count_matches_oracle(s1, s2, s3):
    alphas = (Fraction(2), Fraction(-3), Fraction(5, 2))
    assert sigma_count(alphas, (s1, s2, s3)) == naive_sigma(alphas, (s1, s2, s3))


def test_sigma_sup_examples():
    b = RatSet([1, 2])
    assert sigma_sup(b, b, b) == 2
    s = RatSet([1])
    value, witness = sigma_sup_with_witness(s, s, s)
    assert value == 1
    assert witness is not None and all(w != 0 for w in witness)
    # AP of length n: alpha = (1,-2,1) already captures a full diagonal
    ap = RatSet([1, 2, 3, 4, 5])
    baseline = sigma_count((1, -2, 1), (ap, ap, ap))
    assert sigma_sup(ap, ap, ap) >= baseline >= len(ap)


def test_sigma_sup_budget():
    big = RatSet(range(1, 30))
    with pytest.raises(BudgetError):
        sigma_sup(big, big, big, budget=1000)


def test_sigma_sup_witness_attains_value():
    rng_sets = [RatSet([1, 3, 4]), RatSet([2, 5]), RatSet([1, 7, 9])]
    value, witness = sigma_sup_with_witness(*rng_sets)
    assert witness is not None
    got = sigma_count((1, witness[0], witness[1]), tuple(rng_sets))
    assert got == value


@given(nonzero_sets, nonzero_sets, nonzero_sets, scalars, scalars)
@settings(max_examples=25, deadline=None)
def test_sigma_sup_dominates_probes(s1, s2, s3, a2, a3):
    sup = sigma_sup(s1, s2, s3)
    assert sup <= len(s1) * len(s2)
    if a2 != 0 and a3 != 0:
        assert sigma_count((1, a2, a3), (s1, s2, s3)) <= sup


# -- subadditivity -------------------------------------------------------------------


def test_subadditivity_examples():
    rec = subadditivity_check([RatSet([1, 2]), RatSet([2, 3])], "additive")
    assert rec["union_energy"] == 19 and rec["part_energies"] == [6, 6]
    assert rec["holds"]  # 19 <= (6^{1/4} + 6^{1/4})^4 = 96
    single = subadditivity_check([RatSet([1, 2, 5])], "additive")
    assert single["holds"]  # equality case
    parts = [RatSet([1]), RatSet([2]), RatSet([3])]
    rec3 = subadditivity_check(parts, "additive")
    assert rec3["union_energy"] == 19 and rec3["part_energies"] == [1, 1, 1]
    assert rec3["holds"]  # 19 <= 3^4


@given(st.lists(st.lists(scalars.filter(lambda f: f != 0), min_size=1, max_size=5).map(RatSet), min_size=1, max_size=4))
@settings(max_examples=25, deadline=None)
def test_subadditivity_property(parts):
    assert subadditivity_check(parts, "additive")["holds"]
    assert subadditivity_check(parts, "multiplicative")["holds"]


def test_additive_third_moment_mirror():
    a = RatSet([0, 1, 2])
    # shifts of the AP {0,1,2}: intersection sizes (1,2,3,2,1)
    assert additive_third_moment(a) == 1 + 8 + 27 + 8 + 1
