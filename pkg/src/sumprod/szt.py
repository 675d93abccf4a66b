"""Incidence counting and shifted-intersection level-set scans.

The incidence counter is deliberately the naive exact O(|P||L|) membership
test; any faster path would have to reproduce it bit for bit, so it *is*
the implementation.  Level sets use the representation-function identity
|A ∩ (B+s)| = r_{A-B}(s) (and |A ∩ sB| = r_{A/B}(s)), which the tests
cross-check against direct shift enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import RatSet, make_scalar
from .energy import additive_energy, rep_counts, sigma_count
from .errors import DomainError

# -- exact plane geometry ---------------------------------------------------------


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class Line:
    """Affine line a*x + b*y = c with canonically normalized coefficients.

    Normalization divides by the first nonzero of (a, b), so two Line
    values are equal exactly when they are the same plane line; distinct
    affine lines share at most one point, which makes any duplicate-free
    family a pseudo-line system.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    @staticmethod
    def make(a, b, c) -> "Line":
        a, b, c = make_scalar(a), make_scalar(b), make_scalar(c)
        if a == 0 and b == 0:
            raise DomainError("degenerate line: a = b = 0")
        lead = a if a != 0 else b
        return Line(a / lead, b / lead, c / lead)

    @staticmethod
    def from_slope_intercept(m, b) -> "Line":
        """y = m x + b."""
        m, b = make_scalar(m), make_scalar(b)
        return Line.make(-m, 1, b)

    @staticmethod
    def from_shifted_ratio(r, s) -> "Line":
        """r y - x = s."""
        return Line.make(-1, make_scalar(r), make_scalar(s))

    @staticmethod
    def from_dual(r, s) -> "Line":
        """y + r = s x."""
        return Line.make(-make_scalar(s), 1, -make_scalar(r))

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y == self.c


def incidences(points: list[Point], lines: list[Line]) -> int:
    """Exact |{(p, l) : p on l}| with duplicate inputs rejected."""
    if len(set(points)) != len(points):
        raise DomainError("duplicate point in family")
    if len(set(lines)) != len(lines):
        raise DomainError("duplicate line in family")
    return sum(1 for l in lines for p in points if l.contains(p))


def incidence_report(points: list[Point], lines: list[Line]) -> dict:
    """Incidence count next to the classical benchmark value (report-only)."""
    j = incidences(points, lines)
    np, nl = len(points), len(lines)
    benchmark = (np * nl) ** (2.0 / 3.0) + np + nl
    return {
        "incidences": j,
        "points": np,
        "lines": nl,
        "benchmark": benchmark,
        "ratio": j / benchmark if benchmark else 0.0,
    }


# -- level sets -------------------------------------------------------------------


def additive_level_set(a: RatSet, b: RatSet, tau: int) -> RatSet:
    """{s in A - B : |A ∩ (B + s)| >= tau}."""
    if tau < 1:
        raise DomainError("tau must be a positive integer")
    profile = rep_counts(a, b, "-")
    return RatSet(s for s, m in profile.items() if m >= tau)


def mult_level_set(a: RatSet, b: RatSet, tau: int) -> RatSet:
    """{s in AB^{-1} : |A ∩ sB| >= tau}; requires 0 absent from A and B."""
    if tau < 1:
        raise DomainError("tau must be a positive integer")
    a.require_zero_free("A")
    b.require_zero_free("B")
    profile = rep_counts(a, b, "/")
    return RatSet(s for s, m in profile.items() if m >= tau)


# -- empirical scans --------------------------------------------------------------


@dataclass(frozen=True)
class ScanCell:
    family_index: int
    tau: int
    level_count: int
    bound: Fraction  # |S_tau| * tau^3 / (|A| |B|^2), exact
    ratio: Fraction  # bound / upper_value when an upper bound is given
    anomaly: bool


@dataclass(frozen=True)
class SztScanResult:
    kind: str
    cells: tuple[ScanCell, ...]
    max_bound: Fraction
    witness: tuple[int, int]  # (family index, tau) attaining the max
    upper_value: Fraction | None
    c_abs: int

    def to_rows(self) -> list[dict]:
        return [
            {
                "family_index": c.family_index,
                "tau": c.tau,
                "level_count": c.level_count,
                "bound_num": c.bound.numerator,
                "bound_den": c.bound.denominator,
                "ratio": f"{c.ratio.numerator}/{c.ratio.denominator}",
                "anomaly": c.anomaly,
            }
            for c in self.cells
        ]

    def to_json_dict(self) -> dict:
        return {
            "schema": "sumprod.szt-scan/1",
            "kind": self.kind,
            "max_bound": f"{self.max_bound.numerator}/{self.max_bound.denominator}",
            "witness_family_index": self.witness[0],
            "witness_tau": self.witness[1],
            "upper_value": None
            if self.upper_value is None
            else f"{self.upper_value.numerator}/{self.upper_value.denominator}",
            "c_abs": self.c_abs,
            "anomalies": sum(1 for c in self.cells if c.anomaly),
            "cells": len(self.cells),
        }


def default_additive_family(a: RatSet) -> list[RatSet]:
    from .core import negate, sumset

    return [a, negate(a), sumset(a, a), RatSet([0, 1, 2, 3]), RatSet([0])]


def default_mult_family(a: RatSet) -> list[RatSet]:
    from .core import inverse_set, productset

    return [a, inverse_set(a), productset(a, a), RatSet([1, 2, 4, 8]), RatSet([1])]


def empirical_szt_scan(
    a: RatSet,
    b_family: list[RatSet] | None = None,
    kind: str = "add",
    upper_value: Fraction | None = None,
    c_abs: int = 4,
    tau_values: list[int] | None = None,
) -> SztScanResult:
    """Lower-bound witnesses |S_tau| tau^3 / (|A||B|^2) over a (B, tau) grid.

    The scan maximum is an exact LOWER witness for the shifted-intersection
    decay parameter of A; upper_value, when provided, is an independently
    obtained certificate value upper-bounding the same parameter up to an
    absorbed constant.  Cells exceeding c_abs * upper_value are flagged as
    anomalies (they bound the hidden constant from below), never asserted
    against.  The two numbers are reported side by side and never conflated.
    """
    if kind not in ("add", "mult"):
        raise DomainError(f"unknown scan kind {kind!r}")
    a.require_nonempty("A")
    if b_family is None:
        b_family = default_additive_family(a) if kind == "add" else default_mult_family(a)
    if not b_family:
        raise DomainError("empty B family")

    cells: list[ScanCell] = []
    best: tuple[Fraction, tuple[int, int]] | None = None
    for idx, b in enumerate(b_family):
        profile = rep_counts(a, b, "-" if kind == "add" else "/")
        max_count = max(profile.values())
        histogram = [0] * (max_count + 2)
        for m in profile.values():
            histogram[m] += 1
        # level_at[tau] = #{s : count(s) >= tau} via suffix sums
        level_at = [0] * (max_count + 2)
        for tau in range(max_count, 0, -1):
            level_at[tau] = level_at[tau + 1] + histogram[tau]
        grid = tau_values if tau_values is not None else range(1, max_count + 1)
        for tau in grid:
            if tau < 1:
                raise DomainError("tau values must be positive integers")
            level = level_at[tau] if tau <= max_count else 0
            bound = Fraction(level * tau**3, len(a) * len(b) ** 2)
            ratio = bound / upper_value if upper_value else bound
            anomaly = upper_value is not None and bound > c_abs * upper_value
            cells.append(ScanCell(idx, tau, level, bound, ratio, anomaly))
            if best is None or bound > best[0]:
                best = (bound, (idx, tau))
    assert best is not None
    return SztScanResult(
        kind=kind,
        cells=tuple(cells),
        max_bound=best[0],
        witness=best[1],
        upper_value=upper_value,
        c_abs=c_abs,
    )


# -- report-only bound comparisons -------------------------------------------------


def linear_equation_report(
    sets: tuple[RatSet, RatSet, RatSet],
    alphas: tuple,
    d_upper: Fraction,
) -> dict:
    """Exact sigma and additive-energy values against the decay-parameter
    bound expressions (report-only; the absorbed constant is unknown).

    The fractional powers are compared by raising both sides to the least
    common integer power: sigma^6 against D^2 |A1|^2 |A2|^4 |A3|^4 and
    E+(A1,A2)^2 against D |A1|^2 |A2|^3.
    """
    if d_upper <= 0:
        raise DomainError("d_upper must be positive")
    s1, s2, s3 = sets
    sigma = sigma_count(alphas, sets)
    energy = additive_energy(s1, s2)
    sigma_rhs6 = d_upper**2 * Fraction(len(s1) ** 2 * len(s2) ** 4 * len(s3) ** 4)
    energy_rhs2 = d_upper * Fraction(len(s1) ** 2 * len(s2) ** 3)
    return {
        "sigma": sigma,
        "sigma_rhs_power6": sigma_rhs6,
        "sigma_ratio_power6": Fraction(sigma**6) / sigma_rhs6 if sigma else Fraction(0),
        "energy": energy,
        "energy_rhs_power2": energy_rhs2,
        "energy_ratio_power2": Fraction(energy**2) / energy_rhs2,
    }


def sumset_growth_report(a: RatSet, d_upper: Fraction) -> dict:
    """|A+A| against |A|^{58/37} d^{-21/37}, compared exactly via 37th powers."""
    if d_upper <= 0:
        raise DomainError("d_upper must be positive")
    from .core import sumset

    a.require_nonempty("A")
    s = len(sumset(a, a))
    n = len(a)
    lhs = Fraction(s) ** 37 * d_upper**21
    rhs = Fraction(n) ** 58
    return {
        "sumset_size": s,
        "lhs_power37": lhs,
        "rhs_power37": rhs,
        "meets_bound": lhs >= rhs,
        "ratio_power37": lhs / rhs,
    }
