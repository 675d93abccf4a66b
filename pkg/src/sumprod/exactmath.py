"""Exact integer/rational helpers: logs, roots, and radical comparisons.

The delicate piece is deciding inequalities of the form

    x^{1/4}  <=  y_1^{1/4} + ... + y_n^{1/4}        (all nonneg integers)

without floating point.  Strategy: write each term as c * k^{1/4} with k
free of fourth powers.  Fourth roots of distinct fourth-power-free integers
are linearly independent over the rationals, so the two sides are equal
exactly when their kernel coefficient maps coincide; otherwise the
difference is nonzero and a rational interval refinement terminates.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvariantError

# -- logarithms ---------------------------------------------------------------


def floor_log2(n: int) -> int:
    if n < 1:
        raise ValueError("floor_log2 needs n >= 1")
    return n.bit_length() - 1


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


def ceil_log2_of_fraction(x: Fraction) -> int:
    """Smallest k with 2^k >= x, for x > 0."""
    if x <= 0:
        raise ValueError("need x > 0")
    k = 0
    while Fraction(2) ** k < x:
        k += 1
    while k > 0 and Fraction(2) ** (k - 1) >= x:
        k -= 1
    return k


# -- integer roots ------------------------------------------------------------


def integer_fourth_root(n: int) -> int:
    """floor(n^{1/4}) for n >= 0; two nested isqrt calls are exact."""
    if n < 0:
        raise ValueError("negative argument")
    return math.isqrt(math.isqrt(n))


def integer_nth_root(n: int, k: int) -> int:
    """floor(n^{1/k}) by bisection on exact integers."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n in (0, 1) or k == 1:
        return n
    hi = 1 << (n.bit_length() // k + 1)
    lo = 0
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def is_perfect_power(n: int, k: int) -> bool:
    r = integer_nth_root(n, k)
    return r**k == n


# -- fourth-root arithmetic ---------------------------------------------------


def fourth_power_free_part(n: int) -> tuple[int, int]:
    """Return (c, k) with n = c^4 * k and k free of fourth powers (n >= 1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    c = 1
    k = n
    p = 2
    # Trial division; arguments here are quadruple counts, so they stay small.
    while p * p <= k:
        if k % p == 0:
            exp = 0
            while k % p == 0:
                k //= p
                exp += 1
            c *= p ** (exp // 4)
            k *= p ** (exp % 4)
            # restart scan above p is unnecessary: k's remaining p-exponent < 4
        p += 1 if p == 2 else 2
    return c, n // c**4


def _kernel_map(terms: list[int]) -> dict[int, int]:
    """Canonical form of sum(t^{1/4}) as {fourth-power-free kernel: coeff}."""
    out: dict[int, int] = {}
    for t in terms:
        if t == 0:
            continue
        c, k = fourth_power_free_part(t)
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def _fourth_root_interval(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Enclosure [lo, hi] of n^{1/4} with hi - lo <= 2^-bits."""
    scaled = n << (4 * bits)
    r = integer_fourth_root(scaled)
    lo = Fraction(r, 1 << bits)
    hi = Fraction(r + 1, 1 << bits)
    return lo, hi


def compare_fourth_root_sums(left: list[int], right: list[int]) -> int:
    """Sign of sum(l^{1/4} for left) - sum(r^{1/4} for right), exactly.

    Both lists hold nonnegative integers.  Equality is decided through the
    kernel canonical form; strict inequalities through interval refinement,
    which terminates because a nonzero difference of these radicals is
    bounded away from zero.
    """
    if _kernel_map(left) == _kernel_map(right):
        return 0
    bits = 8
    while bits <= 4096:
        llo = sum((_fourth_root_interval(t, bits)[0] for t in left), Fraction(0))
        lhi = sum((_fourth_root_interval(t, bits)[1] for t in left), Fraction(0))
        rlo = sum((_fourth_root_interval(t, bits)[0] for t in right), Fraction(0))
        rhi = sum((_fourth_root_interval(t, bits)[1] for t in right), Fraction(0))
        if lhi < rlo:
            return -1
        if llo > rhi:
            return 1
        bits *= 2
    raise InvariantError("fourth-root comparison did not separate at 4096 bits")


def fourth_root_sum_dominates(total: int, parts: list[int]) -> bool:
    """Exact check of total^{1/4} <= sum(p^{1/4} for parts)."""
    return compare_fourth_root_sums([total], parts) <= 0


# -- rational-power comparisons ----------------------------------------------


def pow_fraction(base: Fraction, exp: int) -> Fraction:
    """base**exp for integer exp (negative allowed, base != 0 then)."""
    if exp >= 0:
        return base**exp
    if base == 0:
        raise ZeroDivisionError("0 cannot be raised to a negative power")
    return (Fraction(1) / base) ** (-exp)


def compare_rational_powers(
    x: Fraction, p: int, q: int, y: Fraction, r: int, s: int
) -> int:
    """Sign of x^{p/q} - y^{r/s} for positive rationals x, y, exactly.

    Raises both sides to the lcm of the exponent denominators so only
    integer powers of rationals are compared.
    """
    if x <= 0 or y <= 0:
        raise ValueError("bases must be positive")
    if q < 1 or s < 1:
        raise ValueError("exponent denominators must be positive")
    m = q * s // math.gcd(q, s)
    lhs = pow_fraction(x, p * (m // q))
    rhs = pow_fraction(y, r * (m // s))
    return (lhs > rhs) - (lhs < rhs)
