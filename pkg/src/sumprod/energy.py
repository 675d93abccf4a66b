"""Representation functions, additive/multiplicative energies, and the
exact supremum of trilinear solution counts over coefficient choices.

Energies use the representation-function fast path: build the multiset of
pairwise sums (or products) keyed by canonical scalar, then sum squared
multiplicities.  The naive quadruple loop lives in the test suite as the
independent oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .core import RatSet, Scalar, fast_fraction, make_scalar
from .errors import BudgetError, DomainError
from .exactmath import compare_fourth_root_sums

DEFAULT_SIGMA_BUDGET = 10_000


# -- representation functions -------------------------------------------------


def rep_counts(a: RatSet, b: RatSet, op: str) -> dict[Fraction, int]:
    """Multiplicity map r(s) = #{(x, y) in A x B : x op y = s}.

    op is one of "+", "-", "*", "/".  Support equals the corresponding
    sumset / difference set / product set / quotient set, and the
    multiplicities always total |A||B| (for "/" only if 0 is absent in B).
    """
    a.require_nonempty("A")
    b.require_nonempty("B")
    # Key the hot loop by normalized (num, den) pairs: integer-tuple
    # hashing beats Fraction.__hash__ by an order of magnitude.
    raw: dict[tuple[int, int], int] = {}
    if op == "+":
        for x in a:
            for y in b:
                s = x + y
                k = (s.numerator, s.denominator)
                raw[k] = raw.get(k, 0) + 1
    elif op == "-":
        for x in a:
            for y in b:
                s = x - y
                k = (s.numerator, s.denominator)
                raw[k] = raw.get(k, 0) + 1
    elif op == "*":
        for x in a:
            for y in b:
                s = x * y
                k = (s.numerator, s.denominator)
                raw[k] = raw.get(k, 0) + 1
    elif op == "/":
        b.require_zero_free("B (divisor set)")
        for x in a:
            for y in b:
                s = x / y
                k = (s.numerator, s.denominator)
                raw[k] = raw.get(k, 0) + 1
    else:
        raise ValueError(f"unknown op {op!r}")
    return {fast_fraction(n, d): c for (n, d), c in raw.items()}


def quotient_slice_profile(a: RatSet) -> dict[Fraction, int]:
    """|A ∩ λA| for every λ in A/A, via the quotient representation map.

    |A ∩ λA| equals the number of ordered pairs (x, y) with x/y = λ,
    so one O(|A|^2) pass yields every slice size at once.
    """
    a.require_zero_free("A")
    return rep_counts(a, a, "/")


def shift_slice_profile(a: RatSet) -> dict[Fraction, int]:
    """|A ∩ (x + A)| for every x in A - A (additive analogue)."""
    return rep_counts(a, a, "-")


# -- energies -------------------------------------------------------------------


def additive_energy(a: RatSet, b: RatSet | None = None) -> int:
    """Number of quadruples a1 + b1 = a2 + b2 with a_i in A, b_i in B."""
    b = a if b is None else b
    return sum(m * m for m in rep_counts(a, b, "+").values())


def multiplicative_energy(a: RatSet, b: RatSet | None = None) -> int:
    """Number of quadruples a1 b1 = a2 b2; requires 0 absent from both sets."""
    b = a if b is None else b
    a.require_zero_free("A")
    b.require_zero_free("B")
    return sum(m * m for m in rep_counts(a, b, "*").values())


def energy_via_slices(a: RatSet) -> int:
    """Multiplicative energy as the sum of squared slice sizes over A/A.

    Must agree exactly with multiplicative_energy(A); the identity is one
    of the asserted rows of the verification suite.
    """
    return sum(m * m for m in quotient_slice_profile(a).values())


def third_moment(a: RatSet) -> int:
    """Sum of cubed slice sizes |A ∩ xA|^3 over x in A/A."""
    return sum(m**3 for m in quotient_slice_profile(a).values())


def additive_third_moment(a: RatSet) -> int:
    """Sum of cubed shift-intersection sizes |A ∩ (x+A)|^3 over x in A-A."""
    return sum(m**3 for m in shift_slice_profile(a).values())


# -- trilinear solution counts --------------------------------------------------


def sigma_count(
    alphas: tuple[Scalar | int | str, Scalar | int | str, Scalar | int | str],
    sets: tuple[RatSet, RatSet, RatSet],
) -> int:
    """Exact count of (a1, a2, a3) with α1 a1 + α2 a2 + α3 a3 = 0."""
    a1, a2, a3 = (make_scalar(x) for x in alphas)
    s1, s2, s3 = sets
    for coeff in (a1, a2, a3):
        if coeff == 0:
            raise DomainError("sigma coefficients must be nonzero")
    for s in sets:
        s.require_nonempty("sigma operand")
    total = 0
    for x in s2:
        lhs = a2 * x
        for y in s3:
            if -(lhs + a3 * y) / a1 in s1:
                total += 1
    return total


def _line_key(a1: Fraction, a2: Fraction, a3: Fraction):
    """Canonical form of the line a2*X + a3*Y + a1 = 0 in the (X, Y) plane."""
    if a2 != 0:
        return (Fraction(1), a3 / a2, a1 / a2)
    return (Fraction(0), Fraction(1), a1 / a3)


def _line_point(a1: Fraction, a2: Fraction, a3: Fraction) -> tuple[Fraction, Fraction]:
    """Deterministic point on the line with both coordinates nonzero."""
    if a3 == 0:  # vertical line X = -a1/a2, never the axis here
        return (-a1 / a2, Fraction(1))
    if a2 == 0:  # horizontal line Y = -a1/a3
        return (Fraction(1), -a1 / a3)
    for x in (Fraction(1), Fraction(2)):
        y = -(a1 + a2 * x) / a3
        if y != 0:
            return (x, y)
    raise AssertionError("a non-degenerate line meets X in {1,2} off the axis")


def sigma_sup_with_witness(
    s1: RatSet,
    s2: RatSet,
    s3: RatSet,
    budget: int = DEFAULT_SIGMA_BUDGET,
) -> tuple[int, tuple[Fraction, Fraction] | None]:
    """Exact maximum of sigma_count over all nonzero coefficient triples.

    By scaling invariance α1 is normalized to 1, and each solution triple
    (a1, a2, a3) becomes the line a2*X + a3*Y + a1 = 0 in the (α2, α3)
    plane.  The supremum is the largest number of triple-lines through a
    single admissible point (both coordinates nonzero), which is attained
    either at an intersection of two distinct lines or on a single
    (possibly repeated) line.  Ties resolve to the lexicographically
    smallest (α2, α3).

    Returns (value, witness) where witness is an admissible (α2, α3), or
    None when no admissible coefficients produce a solution.
    """
    for s in (s1, s2, s3):
        s.require_nonempty("sigma_sup operand")
    work = len(s1) * len(s2) * len(s3)
    if work > budget:
        raise BudgetError(
            f"sigma_sup needs |A1||A2||A3| = {work} <= budget {budget}"
        )

    base = 1 if (0 in s1 and 0 in s2 and 0 in s3) else 0

    lines: dict[tuple, tuple[int, tuple[Fraction, Fraction, Fraction]]] = {}
    for a2 in s2:
        for a3 in s3:
            for a1 in s1:
                if a2 == 0 and a3 == 0:
                    continue  # constant equation; (0,0,0) handled via base
                if a1 == 0 and (a2 == 0 or a3 == 0):
                    continue  # the line is a coordinate axis: inadmissible
                key = _line_key(a1, a2, a3)
                mult, rep = lines.get(key, (0, (a1, a2, a3)))
                lines[key] = (mult + 1, rep)

    if not lines:
        return base, None

    best_value = 0
    best_witness: tuple[Fraction, Fraction] | None = None

    def consider(value: int, witness: tuple[Fraction, Fraction]) -> None:
        nonlocal best_value, best_witness
        if value > best_value or (
            value == best_value
            and (best_witness is None or witness < best_witness)
        ):
            best_value = value
            best_witness = witness

    for mult, rep in lines.values():
        consider(mult, _line_point(*rep))

    # Intersections of distinct lines; a point's value is the multiplicity
    # sum over every line through it.
    keys = sorted(lines.keys())
    incident: dict[tuple[Fraction, Fraction], set[tuple]] = {}
    for i in range(len(keys)):
        ai, bi, ci = keys[i]  # ai*X + bi*Y + ci = 0 in normalized form
        for j in range(i + 1, len(keys)):
            aj, bj, cj = keys[j]
            det = ai * bj - aj * bi
            if det == 0:
                continue  # parallel, distinct
            x = (bi * cj - bj * ci) / det
            y = (aj * ci - ai * cj) / det
            if x == 0 or y == 0:
                continue  # inadmissible coefficients
            incident.setdefault((x, y), set()).update((keys[i], keys[j]))
    for point, through in incident.items():
        consider(sum(lines[k][0] for k in through), point)

    return base + best_value, best_witness


def sigma_sup(
    s1: RatSet,
    s2: RatSet,
    s3: RatSet,
    budget: int = DEFAULT_SIGMA_BUDGET,
) -> int:
    value, _ = sigma_sup_with_witness(s1, s2, s3, budget=budget)
    return value


# -- energy subadditivity -------------------------------------------------------


def subadditivity_check(parts: Iterable[RatSet], kind: str) -> dict:
    """Exact check that E(union)^{1/4} <= sum of E(part)^{1/4}.

    kind is "additive" or "multiplicative".  The comparison is decided in
    exact arithmetic through the fourth-root comparator; the returned
    record carries both sides and the boolean, which must always be True.
    """
    parts = list(parts)
    if not parts:
        raise DomainError("need at least one part")
    if kind == "additive":
        energy = additive_energy
    elif kind == "multiplicative":
        energy = multiplicative_energy
        for p in parts:
            p.require_zero_free("part")
    else:
        raise ValueError(f"unknown kind {kind!r}")

    union = parts[0]
    for p in parts[1:]:
        union = union.union(p)
    union_energy = energy(union)
    part_energies = [energy(p) for p in parts]
    sign = compare_fourth_root_sums([union_energy], part_energies)
    return {
        "kind": kind,
        "union_energy": union_energy,
        "part_energies": part_energies,
        "holds": sign <= 0,
    }
