"""Incidence counting and level-set scan tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumprod.core import RatSet, translate
from sumprod.errors import DomainError
from sumprod.szt import (
    Line,
    Point,
    additive_level_set,
    empirical_szt_scan,
    incidence_report,
    incidences,
    linear_equation_report,
    mult_level_set,
    sumset_growth_report,
)

scalars = st.fractions(min_value=-60, max_value=60, max_denominator=6)
small_sets = st.lists(scalars, min_size=1, max_size=8).map(RatSet)
pos_sets = st.lists(scalars.filter(lambda f: f > 0), min_size=1, max_size=8).map(RatSet)


# -- oracle ------------------------------------------------------------------------


def naive_level_set(a, b, tau, mult=False):
    out = []
    if mult:
        shifts = {x / y for x in a for y in b}
        for s in shifts:
            if sum(1 for x in a if x / s in b) >= tau:
                out.append(s)
    else:
        shifts = {x - y for x in a for y in b}
        for s in shifts:
            if len(a.intersection(translate(b, s))) >= tau:
                out.append(s)
    return RatSet(out)


# -- incidences ----------------------------------------------------------------------


def test_incidences_single():
    assert incidences([Point(Fraction(0), Fraction(0))], [Line.from_slope_intercept(1, 0)]) == 1


def test_incidences_grid_horizontal():
    points = [Point(Fraction(x), Fraction(y)) for x in range(3) for y in range(3)]
    lines = [Line.from_slope_intercept(0, b) for b in range(3)]
    assert incidences(points, lines) == 9


def test_incidences_grid_construction_matches_naive():
    # n x n^2 grid with the n^3 lines y = mx + b
    n = 3
    points = [Point(Fraction(x), Fraction(y)) for x in range(n) for y in range(n * n)]
    lines = [
        Line.from_slope_intercept(m, b) for m in range(n) for b in range(n * n)
    ]
    naive = sum(
        1
        for l in lines
        for p in points
        if l.a * p.x + l.b * p.y == l.c
    )
    assert incidences(points, lines) == naive
    # each line y = mx + b with 0 <= b < n^2 - mn keeps all n points inside
    assert naive >= n * (n * n - n * (n - 1))


def test_duplicate_rejection():
    p = Point(Fraction(0), Fraction(0))
    with pytest.raises(DomainError):
        incidences([p, p], [Line.from_slope_intercept(1, 0)])
    with pytest.raises(DomainError):
        # same plane line in two different parameterizations
        incidences([p], [Line.from_slope_intercept(1, 0), Line.make(-2, 2, 0)])


def test_line_forms_agree():
    # r y - x = s and y + r = s x against the general form
    l1 = Line.from_shifted_ratio(2, 3)  # 2y - x = 3
    assert l1.contains(Point(Fraction(1), Fraction(2)))
    l2 = Line.from_dual(1, 2)  # y + 1 = 2x
    assert l2.contains(Point(Fraction(1), Fraction(1)))


def test_incidence_report_benchmark():
    points = [Point(Fraction(x), Fraction(0)) for x in range(4)]
    lines = [Line.from_slope_intercept(0, 0)]
    rep = incidence_report(points, lines)
    assert rep["incidences"] == 4
    assert rep["benchmark"] > 0 and rep["ratio"] > 0


# -- level sets ------------------------------------------------------------------------


def test_additive_level_set_examples():
    a = RatSet([1, 2, 3])
    assert additive_level_set(a, RatSet([0]), 1) == a
    assert additive_level_set(a, a, 3) == RatSet([0])
    assert additive_level_set(a, a, 2) == RatSet([-1, 0, 1])


def test_mult_level_set_examples():
    a = RatSet([1, 2, 4])
    assert mult_level_set(a, RatSet([1]), 1) == a
    assert mult_level_set(a, a, 2) == RatSet([Fraction(1, 2), 1, 2])
    assert len(mult_level_set(a, a, 4)) == 0  # tau > |B|
    with pytest.raises(DomainError):
        mult_level_set(RatSet([0, 1]), a, 1)


@given(small_sets, small_sets, st.integers(min_value=1, max_value=5))
@settings(max_examples=30, deadline=None)
def test_additive_level_set_matches_naive(a, b, tau):
    assert additive_level_set(a, b, tau) == naive_level_set(a, b, tau)
    # antitone in tau, and S_1 is the full difference set
    assert additive_level_set(a, b, tau + 1).issubset(additive_level_set(a, b, tau))
    from sumprod.core import difference_set

    assert additive_level_set(a, b, 1) == difference_set(a, b)


@given(pos_sets, pos_sets, st.integers(min_value=1, max_value=5))
@settings(max_examples=30, deadline=None)
def test_mult_level_set_matches_naive(a, b, tau):
    assert mult_level_set(a, b, tau) == naive_level_set(a, b, tau, mult=True)


@given(small_sets, small_sets)
@settings(max_examples=30, deadline=None)
def test_shift_pair_count_identity(a, b):
    # sum over shifts of |A ∩ (B+s)| counts all pairs
    from sumprod.energy import rep_counts

    assert sum(rep_counts(a, b, "-").values()) == len(a) * len(b)


# -- scans ---------------------------------------------------------------------------


def test_scan_singleton_family():
    a = RatSet([1, 5, 9])
    result = empirical_szt_scan(a, [RatSet([0])], kind="add")
    assert result.max_bound == 1  # |A| * 1 / (|A| * 1)
    assert result.witness == (0, 1)


def test_scan_matches_direct_enumeration():
    a = RatSet([1, 2, 3, 4])
    result = empirical_szt_scan(a, [a], kind="add")
    for cell in result.cells:
        level = additive_level_set(a, a, cell.tau)
        assert cell.level_count == len(level)
        assert cell.bound == Fraction(len(level) * cell.tau**3, len(a) ** 3)


def test_scan_anomaly_flag():
    a = RatSet([1, 2, 3, 4])
    tight = empirical_szt_scan(a, [a], kind="add", upper_value=Fraction(1, 1000), c_abs=1)
    assert any(c.anomaly for c in tight.cells)
    loose = empirical_szt_scan(a, [a], kind="add", upper_value=Fraction(10**6), c_abs=4)
    assert not any(c.anomaly for c in loose.cells)


def test_mult_scan_mirror():
    a = RatSet([1, 2, 4, 8])
    result = empirical_szt_scan(a, [a], kind="mult")
    for cell in result.cells:
        level = mult_level_set(a, a, cell.tau)
        assert cell.level_count == len(level)


def test_scan_explicit_tau_grid():
    a = RatSet([1, 2, 3, 4])
    result = empirical_szt_scan(a, [a], kind="add", tau_values=[1, 3, 9])
    taus = sorted({c.tau for c in result.cells})
    assert taus == [1, 3, 9]
    beyond = [c for c in result.cells if c.tau == 9]
    assert beyond and all(c.level_count == 0 for c in beyond)
    with pytest.raises(DomainError):
        empirical_szt_scan(a, [a], kind="add", tau_values=[0])


def test_scan_csv_rows_shape():
    from sumprod.report import scan_result_rows

    a = RatSet([1, 2, 3])
    result = empirical_szt_scan(a, [a], kind="add", upper_value=Fraction(3))
    fields, rows = scan_result_rows(result)
    assert fields == [
        "family_index",
        "tau",
        "level_count",
        "bound_num",
        "bound_den",
        "ratio",
        "anomaly",
    ]
    assert rows and set(rows[0]) == set(fields)
    summary = result.to_json_dict()
    assert summary["schema"] == "sumprod.szt-scan/1"
    assert summary["cells"] == len(rows)


# -- report-only bound rows --------------------------------------------------------------


def test_linear_equation_report_singletons():
    s = RatSet([1])
    rep = linear_equation_report((s, s, s), (1, 1, 1), Fraction(1))
    assert rep["sigma"] == 0
    rep2 = linear_equation_report((RatSet([2]), s, s), (1, 1, -3), Fraction(1))
    assert rep2["sigma"] == 1
    assert rep2["sigma_ratio_power6"] == 1


def test_linear_equation_report_exact_powers():
    a = RatSet([1, 2, 3])
    rep = linear_equation_report((a, a, a), (1, 1, -1), Fraction(3))
    assert rep["sigma"] == 3
    # sigma^6 vs D^2 |A1|^2 |A2|^4 |A3|^4 = 9 * 9 * 81 * 81
    assert rep["sigma_rhs_power6"] == Fraction(9 * 9 * 81 * 81)
    assert rep["sigma_ratio_power6"] == Fraction(3**6, 9 * 9 * 81 * 81)


def test_sumset_growth_report():
    one = RatSet([7])
    rep = sumset_growth_report(one, Fraction(1))
    assert rep["sumset_size"] == 1 and rep["meets_bound"]
    ap = RatSet(range(1, 33))
    rep_ap = sumset_growth_report(ap, Fraction(32))  # trivial certificate value
    assert rep_ap["sumset_size"] == 63
    assert rep_ap["lhs_power37"] == Fraction(63) ** 37 * Fraction(32) ** 21
    assert rep_ap["meets_bound"]
    gp = RatSet([Fraction(2) ** k for k in range(32)])
    d_gp = Fraction(63 * 63, 32 * 32)  # C = A witness for a GP
    rep_gp = sumset_growth_report(gp, d_gp)
    assert rep_gp["meets_bound"]
