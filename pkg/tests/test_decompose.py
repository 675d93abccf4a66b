"""Decomposition pipeline tests.

The dyadic-class oracle below re-derives every pigeonhole selection by
direct enumeration before trusting the library's argmax.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumprod.core import RatSet
from sumprod.decompose import (
    PigeonholeSlice,
    dyadic_classes,
    find_low_energy_subset,
    greedy_energy_accumulate,
    low_energy_decomposition,
    pigeonhole_uniform_subset,
)
from sumprod.energy import (
    additive_energy,
    multiplicative_energy,
    quotient_slice_profile,
    third_moment,
)
from sumprod.errors import DomainError
from sumprod.exactmath import floor_log2

pos_scalars = st.fractions(min_value="1/6", max_value=40, max_denominator=6)
pos_sets = st.lists(pos_scalars, min_size=1, max_size=10).map(RatSet)


# -- oracles -----------------------------------------------------------------------


def oracle_sigma_star(a, p, mode):
    if mode == "mult":
        return sum(sum(1 for x in a if x / y in a) for y in p)
    return sum(sum(1 for x in a if x - y in a) for y in p)


def oracle_best_moment_class(a):
    """Enumerate all dyadic classes of the slice profile and return the
    (delta, members) pair maximizing delta^3 |P|, ties to larger delta."""
    profile = quotient_slice_profile(a)
    classes = {}
    for lam, c in profile.items():
        level = 1 << floor_log2(c)
        classes.setdefault(level, []).append(lam)
    return max(classes.items(), key=lambda kv: (kv[0] ** 3 * len(kv[1]), kv[0]))


# -- dyadic classes -----------------------------------------------------------------


def test_dyadic_classes_structure():
    counts = {Fraction(1): 1, Fraction(2): 3, Fraction(3): 5, Fraction(4): 8}
    classes = dyadic_classes(counts, "test")
    by_level = {s.level: s for s in classes}
    assert set(by_level) == {1, 2, 4, 8}
    assert by_level[2].members == RatSet([2])  # count 3 lives in [2, 4)
    assert by_level[2].mass == 3
    for s in classes:
        assert isinstance(s, PigeonholeSlice)
        for key, c in counts.items():
            if key in s.members:
                assert s.level <= c < 2 * s.level


# -- the uniform-count extractor ------------------------------------------------------


def test_extractor_examples():
    a = RatSet([1, 2, 3])
    a_prime, q, diag = pigeonhole_uniform_subset(a, RatSet([1]), "mult")
    assert a_prime == a and q == 1
    assert diag["sigma_star"] == 3 == oracle_sigma_star(a, RatSet([1]), "mult")
    single, q1, diag1 = pigeonhole_uniform_subset(RatSet([1]), RatSet([1]), "mult")
    assert single == RatSet([1]) and q1 == 1 and diag1["sigma_star"] == 1


def test_extractor_sigma_star_zero():
    with pytest.raises(DomainError):
        pigeonhole_uniform_subset(RatSet([1, 2]), RatSet([Fraction(1, 7)]), "mult")


@given(pos_sets, pos_sets)
@settings(max_examples=40, deadline=None)
def test_extractor_guarantee(a, p):
    sigma = oracle_sigma_star(a, p, "mult")
    if sigma == 0:
        return
    a_prime, q, diag = pigeonhole_uniform_subset(a, p, "mult")
    assert a_prime.issubset(a)
    assert diag["sigma_star"] == sigma
    # the realized dyadic-pigeonhole guarantee, exact
    assert 2 * (floor_log2(len(a)) + 1) * len(a_prime) * q >= sigma
    # every member's count sits in [q, 2q)
    for x in a_prime:
        c = sum(1 for y in p if x / y in a)
        assert q <= c < 2 * q


def test_extractor_additive_mode():
    a = RatSet([0, 1, 2, 3])
    p = RatSet([1])
    a_prime, q, diag = pigeonhole_uniform_subset(a, p, "add")
    assert diag["sigma_star"] == oracle_sigma_star(a, p, "add")
    assert q >= 1 and len(a_prime) >= 1


# -- the low-energy subset finder ------------------------------------------------------


def test_find_low_energy_subset_trivial():
    a1, diag = find_low_energy_subset(RatSet([1]), "mult")
    assert a1 == RatSet([1]) and diag["degenerate"]


def test_find_low_energy_subset_example():
    a = RatSet([1, 2, 3])
    assert third_moment(a) == 33
    delta, members = oracle_best_moment_class(a)
    assert (delta, [str(x) for x in members]) == (2, ["1"])
    a1, diag = find_low_energy_subset(a, "mult")
    assert (diag["delta"], diag["p_size"]) == (2, 1)
    assert diag["third_moment"] == 33
    assert a1 == a  # every element has one incidence with P = {1}


def test_find_low_energy_subset_gp():
    n = 16
    gp = RatSet([Fraction(2) ** k for k in range(n)])
    a1, diag = find_low_energy_subset(gp, "mult")
    # multiplicatively structured: the subset is large
    assert len(a1) * 2 * (floor_log2(n) + 1) ** 2 * n**2 >= diag["main_energy"]
    assert diag["target_bound_ok"]
    assert len(a1) >= diag["main_energy"] // (16 * (floor_log2(n) + 1) ** 2 * n**2)
    # the opposite-side energy report row is exact
    assert diag["power72_lhs"] == (diag["opposite_energy"] * diag["main_energy"]) ** 2
    assert diag["power72_rhs"] == len(a1) ** 7 * n**4


@given(pos_sets)
@settings(max_examples=40, deadline=None)
def test_find_low_energy_subset_realized_bound(a):
    a1, diag = find_low_energy_subset(a, "mult")
    n = len(a)
    assert a1.issubset(a) and len(a1) >= 1
    assert 16 * (floor_log2(n) + 1) ** 2 * n**2 * len(a1) >= multiplicative_energy(a)
    # oracle: the chosen class really is the argmax over dyadic classes
    if not diag["degenerate"]:
        delta, members = oracle_best_moment_class(a)
        assert diag["delta"] == delta and diag["p_size"] == len(members)


def test_find_low_energy_subset_add_flavor():
    a = RatSet([1, 2, 3, 4, 5])
    a2, diag = find_low_energy_subset(a, "add")
    assert a2.issubset(a)
    assert 16 * (floor_log2(5) + 1) ** 2 * 25 * len(a2) >= additive_energy(a)


# -- the threshold decomposition --------------------------------------------------------


def test_decomposition_immediate_stop_example():
    # E_x({1,2}) = 6; auto threshold compares 6^5 * 2 <= 2^15: stops at once
    res = low_energy_decomposition(RatSet([1, 2]), "auto")
    assert 6**5 * 2 <= 2**15
    assert len(res.b_set) == 0 and res.c_set == RatSet([1, 2])
    assert res.stop_reason == "threshold" and not res.steps


def test_decomposition_singleton():
    res = low_energy_decomposition(RatSet([5]), "auto")
    assert len(res.b_set) == 0 and res.stop_reason == "threshold"


def test_decomposition_explicit_m_peels():
    n = 16
    a = RatSet([Fraction(2) ** k for k in range(n)])  # GP: high mult energy
    e = multiplicative_energy(a)
    m = Fraction(8)
    assert e * m > n**3  # forces at least one extraction
    res = low_energy_decomposition(a, m)
    assert res.steps
    assert res.b_set.union(res.c_set) == a
    assert len(res.b_set.intersection(res.c_set)) == 0
    e_c = multiplicative_energy(res.c_set) if len(res.c_set) else 0
    assert e_c * m <= n**3  # exit condition exact
    # step sets are pairwise disjoint and union to B
    seen = RatSet()
    for s in res.steps:
        assert len(seen.intersection(s.d_set)) == 0
        seen = seen.union(s.d_set)
    assert seen == res.b_set


def test_decomposition_energy_decreases():
    a = RatSet([Fraction(2) ** k for k in range(12)])
    res = low_energy_decomposition(a, Fraction(6))
    energies = [s.energy_c_before for s in res.steps]
    assert energies == sorted(energies, reverse=True)
    assert all(e1 > e2 for e1, e2 in zip(energies, energies[1:])) or len(energies) <= 1


def test_decomposition_rejects_bad_m():
    with pytest.raises(DomainError):
        low_energy_decomposition(RatSet([1, 2]), Fraction(1, 2))
    with pytest.raises(DomainError):
        low_energy_decomposition(RatSet([0, 1]), "auto")


def test_decomposition_serialization_round_trip():
    a = RatSet([Fraction(2) ** k for k in range(8)])
    res = low_energy_decomposition(a, Fraction(4))
    payload = res.to_json_dict()
    assert payload["stop_reason"] == res.stop_reason
    assert RatSet(payload["b"]) == res.b_set and RatSet(payload["c"]) == res.c_set
    rows = res.to_csv_rows()
    assert len(rows) == len(res.steps)


# -- the size-stop accumulator -----------------------------------------------------------


def test_accumulate_singleton_example():
    # stop test 8 * 0^3 > 1 is false, so one extraction happens
    a1, diag = greedy_energy_accumulate(RatSet([1]), "mult")
    assert a1 == RatSet([1])
    assert len(diag["steps"]) == 1
    assert diag["stop_reason"] in ("size", "exhausted")


def test_accumulate_small_example():
    a = RatSet([1, 2, 3])
    e = multiplicative_energy(a)
    assert e == 15  # stop once 8 |B|^3 > 15, i.e. |B| >= 2
    a1, diag = greedy_energy_accumulate(a, "mult")
    if diag["stop_reason"] == "size":
        assert 8 * len(a1) ** 3 > e
    assert len(a1) >= 2 or diag["stop_reason"] == "exhausted"
    # exact 11/2-power report row
    assert diag["power112_lhs"] == (diag["opposite_energy_a1"] * e) ** 2
    assert diag["power112_rhs"] == len(a) ** 11


@given(pos_sets)
@settings(max_examples=30, deadline=None)
def test_accumulate_exit_bound(a):
    e = multiplicative_energy(a)
    a1, diag = greedy_energy_accumulate(a, "mult")
    assert a1.issubset(a)
    if diag["stop_reason"] == "size":
        assert 8 * len(a1) ** 3 > e
    else:
        assert a1 == a
