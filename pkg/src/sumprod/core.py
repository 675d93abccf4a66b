"""Exact rational scalars and finite-set arithmetic.

Everything downstream (energies, certificates, decompositions) is built on
two ground types:

* ``Scalar`` -- an arbitrary-precision rational, ``fractions.Fraction``.
  Always in lowest terms with positive denominator, so equality, ordering
  and hashing are exact.  There is no floating point anywhere in the core.
* ``RatSet`` -- an immutable, deduplicated, ascending-sorted set of scalars.

Set operations (sumset, product set, quotient set, dilates, translates,
dilate-intersections) are pure functions returning new ``RatSet`` values.
Multiplicative operations that require ``0 `` absent fail loudly instead of
silently dropping the element.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError, ParseError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def make_scalar(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ParseError(f"cannot interpret {value!r} as an exact rational")


def parse_scalar(text: str) -> Fraction:
    """Parse "p/q" or "p" (optionally signed, arbitrary precision)."""
    body = text.strip()
    if not body:
        raise ParseError("empty scalar literal")
    num_s, sep, den_s = body.partition("/")
    try:
        num = int(num_s)
        den = int(den_s) if sep else 1
    except ValueError as exc:
        raise ParseError(f"bad scalar literal {text!r}") from exc
    if sep and den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(value: Fraction) -> str:
    """Canonical text form: "p/q" in lowest terms, or "p" for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fast_fraction(num: int, den: int) -> Fraction:
    """Wrap an ALREADY-normalized (num, den) pair without re-running gcd.

    Results of Fraction arithmetic are always normalized, so rebuilding
    them through the checking constructor would only repeat work; this is
    the hot-path constructor for representation-function keys.
    """
    f = Fraction.__new__(Fraction)
    f._numerator = num
    f._denominator = den
    return f


def _sorted_scalars(values) -> list[Fraction]:
    """Exact ascending sort, float-decorated for speed.

    float() is monotone on rationals, so (float(x), x) sorts correctly:
    the exact Fraction comparison only runs inside float-collision ties.
    Falls back to plain exact sorting when magnitudes overflow floats.
    """
    try:
        return sorted(values, key=lambda f: (f.numerator / f.denominator, f))
    except OverflowError:
        return sorted(values)


class RatSet:
    """Finite set of exact rationals in strictly increasing canonical order.

    Immutable; all pigeonhole tie-breaks downstream refer to this order,
    which makes every algorithm in the package deterministic.
    """

    __slots__ = ("_elems", "_keys")

    def __init__(self, elements: Iterable[int | str | Fraction] = ()):
        # Dedup through (num, den) integer pairs: far cheaper to hash than
        # Fraction values, and exact since Fractions store lowest terms.
        uniq: dict[tuple[int, int], Fraction] = {}
        for x in elements:
            f = x if type(x) is Fraction else make_scalar(x)
            uniq.setdefault((f.numerator, f.denominator), f)
        self._elems: tuple[Fraction, ...] = tuple(_sorted_scalars(uniq.values()))
        self._keys: frozenset[tuple[int, int]] = frozenset(uniq)

    # -- container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._elems)

    def __contains__(self, value: object) -> bool:
        if type(value) is Fraction:
            return (value.numerator, value.denominator) in self._keys
        if isinstance(value, int):
            return (value, 1) in self._keys
        if isinstance(value, Fraction):
            return (value.numerator, value.denominator) in self._keys
        return False

    def __getitem__(self, index: int) -> Fraction:
        return self._elems[index]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatSet):
            return self._elems == other._elems
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        inner = ", ".join(format_scalar(x) for x in self._elems[:8])
        if len(self._elems) > 8:
            inner += f", ... ({len(self._elems)} elements)"
        return f"RatSet({{{inner}}})"

    # -- basic predicates ---------------------------------------------------

    @property
    def elements(self) -> tuple[Fraction, ...]:
        return self._elems

    @property
    def excludes_zero(self) -> bool:
        """True when 0 is not an element; multiplicative ops require it."""
        return (0, 1) not in self._keys

    def require_nonempty(self, name: str = "set") -> None:
        if not self._elems:
            raise DomainError(f"{name} must be nonempty")

    def require_zero_free(self, name: str = "set") -> None:
        if (0, 1) in self._keys:
            raise DomainError(f"{name} must not contain 0")

    # -- exact set algebra --------------------------------------------------

    def union(self, other: "RatSet") -> "RatSet":
        return RatSet(list(self._elems) + list(other._elems))

    def intersection(self, other: "RatSet") -> "RatSet":
        return RatSet(x for x in self._elems if x in other)

    def difference(self, other: "RatSet") -> "RatSet":
        return RatSet(x for x in self._elems if x not in other)

    def issubset(self, other: "RatSet") -> bool:
        return self._keys <= other._keys

    # -- text round trip ----------------------------------------------------

    def to_text(self) -> str:
        """One canonical "p/q" literal per line, trailing newline."""
        return "".join(format_scalar(x) + "\n" for x in self._elems)

    def to_json_list(self) -> list[str]:
        return [format_scalar(x) for x in self._elems]

    @classmethod
    def from_text(cls, text: str) -> "RatSet":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        return cls(parse_scalar(ln) for ln in lines)

    @classmethod
    def from_json_list(cls, values: list) -> "RatSet":
        if not isinstance(values, list):
            raise ParseError("JSON set literal must be an array of strings")
        return cls(make_scalar(v) for v in values)

    @classmethod
    def parse(cls, text: str) -> "RatSet":
        """Accept either the line format or a JSON array of strings."""
        stripped = text.lstrip()
        if stripped.startswith("["):
            try:
                payload = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON set literal: {exc}") from exc
            return cls.from_json_list(payload)
        return cls.from_text(text)

    def digest(self) -> str:
        """SHA-256 of the canonical text form; used in serialized reports."""
        return hashlib.sha256(self.to_text().encode("ascii")).hexdigest()


# -- elementwise set operations ----------------------------------------------


def sumset(a: RatSet, b: RatSet) -> RatSet:
    """A + B = {x + y : x in A, y in B}."""
    a.require_nonempty("A")
    b.require_nonempty("B")
    return RatSet({x + y for x in a for y in b})


def difference_set(a: RatSet, b: RatSet) -> RatSet:
    """A - B = {x - y : x in A, y in B}."""
    a.require_nonempty("A")
    b.require_nonempty("B")
    return RatSet({x - y for x in a for y in b})


def productset(a: RatSet, b: RatSet) -> RatSet:
    """AB = {xy : x in A, y in B}."""
    a.require_nonempty("A")
    b.require_nonempty("B")
    return RatSet({x * y for x in a for y in b})


def quotientset(a: RatSet, b: RatSet) -> RatSet:
    """A/B = {x/y : x in A, y in B, y != 0}.

    Zero elements of B are skipped per the definition; B = {0} is a
    domain error because the quotient set would be empty.
    """
    a.require_nonempty("A")
    b.require_nonempty("B")
    divisors = [y for y in b if y != ZERO]
    if not divisors:
        raise DomainError("B must contain a nonzero element")
    return RatSet({x / y for x in a for y in divisors})


def slice_set(a: RatSet, lam: Fraction | int | str) -> RatSet:
    """The slice A ∩ λA; nonempty exactly when λ is a quotient of A (0 ∉ A)."""
    lam = make_scalar(lam)
    if lam == ZERO:
        raise DomainError("slice parameter must be nonzero")
    return RatSet(x for x in a if x / lam in a)


def dilate(a: RatSet, c: Fraction | int | str) -> RatSet:
    """cA = {cx : x in A}; bijection, so the size is preserved."""
    c = make_scalar(c)
    if c == ZERO:
        raise DomainError("dilation by 0 is not allowed")
    return RatSet(c * x for x in a)


def translate(a: RatSet, c: Fraction | int | str) -> RatSet:
    """c + A = {c + x : x in A}."""
    c = make_scalar(c)
    return RatSet(c + x for x in a)


def negate(a: RatSet) -> RatSet:
    """-A; kept separate from dilate for readability at call sites."""
    return RatSet(-x for x in a)


def inverse_set(a: RatSet) -> RatSet:
    """A^{-1} = {1/x : x in A}; requires 0 ∉ A."""
    a.require_zero_free("A")
    a.require_nonempty("A")
    return RatSet(ONE / x for x in a)
