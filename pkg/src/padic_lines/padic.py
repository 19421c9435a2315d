"""Exact p-adic valuations and absolute values on the rationals.

Everything here is exact: rationals are `fractions.Fraction` (arbitrary
precision, always in lowest terms with positive denominator), and a p-adic
absolute value is stored as its exponent, never as a floating-point power.
The absolute value of a nonzero rational x is |x|_p = p**(-v_p(x)) where
v_p is the p-adic valuation; |0|_p = 0.  The resulting value set
{0} union {p**e : e integer} is totally ordered and closed under
multiplication, division by nonzero, and max, which is all the downstream
bound arithmetic needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import ClassVar

__all__ = [
    "Prime",
    "PadicAbs",
    "valuation",
    "abs_p",
    "abs_max",
    "parse_rational",
    "render_rational",
    "parse_abs",
    "render_abs",
    "padic_expansion",
]

_MAX_PRIME = 2**64

# Deterministic Miller-Rabin witnesses for n < 2**64 (Sinclair's set).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime_u64(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Prime:
    """A prime number, validated at construction.

    The primality test is deterministic for values below 2**64; larger
    candidates are rejected outright rather than tested probabilistically.
    """

    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise ValueError(f"prime must be an integer, got {self.value!r}")
        if self.value >= _MAX_PRIME:
            raise ValueError(f"unsupported prime size: {self.value} >= 2**64")
        if not _is_prime_u64(self.value):
            raise ValueError(f"not a prime: {self.value}")

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, order=False)
class PadicAbs:
    """An attained value of |.|_p: either 0 or p**exponent.

    `exponent is None` encodes the value 0.  Ordering puts 0 below every
    power and compares powers by exponent; multiplication adds exponents
    with 0 absorbing.  The prime itself is not stored: all comparisons and
    arithmetic are exponent-only, and rendering takes p as an argument.
    """

    exponent: int | None

    # singleton for the value 0, attached right after the class definition
    ZERO: ClassVar["PadicAbs"]

    @staticmethod
    def pow_of(e: int) -> "PadicAbs":
        return PadicAbs(e)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __mul__(self, other: "PadicAbs") -> "PadicAbs":
        if self.is_zero or other.is_zero:
            return PadicAbs.ZERO
        return PadicAbs(self.exponent + other.exponent)

    def __truediv__(self, other: "PadicAbs") -> "PadicAbs":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero absolute value")
        if self.is_zero:
            return PadicAbs.ZERO
        return PadicAbs(self.exponent - other.exponent)

    def square(self) -> "PadicAbs":
        return self * self

    def __lt__(self, other: "PadicAbs") -> bool:
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        return self.exponent < other.exponent

    def __le__(self, other: "PadicAbs") -> bool:
        return self < other or self == other

    def __gt__(self, other: "PadicAbs") -> bool:
        return other < self

    def __ge__(self, other: "PadicAbs") -> bool:
        return other <= self

    def __repr__(self) -> str:
        return "PadicAbs.ZERO" if self.is_zero else f"PadicAbs({self.exponent})"


PadicAbs.ZERO = PadicAbs(None)


def valuation(x: Fraction | int, p: Prime) -> int | float:
    """p-adic valuation of a rational; +infinity for zero.

    v_p(num/den) is the multiplicity of p in the numerator minus its
    multiplicity in the denominator.
    """
    x = Fraction(x)
    if x == 0:
        return inf
    pv = p.value
    v = 0
    num = x.numerator
    while num % pv == 0:
        num //= pv
        v += 1
    den = x.denominator
    while den % pv == 0:
        den //= pv
        v -= 1
    return v


def abs_p(x: Fraction | int, p: Prime) -> PadicAbs:
    """Exact p-adic absolute value |x|_p = p**(-v_p(x)), with |0|_p = 0."""
    v = valuation(x, p)
    if v is inf:
        return PadicAbs.ZERO
    return PadicAbs(-v)


def abs_max(xs: list[PadicAbs] | tuple[PadicAbs, ...]) -> PadicAbs:
    """Maximum of a non-empty collection of absolute values."""
    xs = list(xs)
    if not xs:
        raise ValueError("empty-max: abs_max requires at least one value")
    best = xs[0]
    for x in xs[1:]:
        if best < x:
            best = x
    return best


_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse the strict "num/den" text form (integer shorthand allowed).

    Only base-10 digits with an optional leading minus on the numerator are
    accepted; anything else (floats, exponents, spaces) is rejected.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational: {text!r} (expected 'num/den' or 'num')")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"malformed rational: {text!r} (zero denominator)")
    return Fraction(text)


def render_rational(x: Fraction) -> str:
    return str(Fraction(x))


_ABS_RE = re.compile(r"^(\d+)\^(-?\d+)$")


def parse_abs(text: str, p: Prime) -> PadicAbs:
    """Parse "0" or "p^e"; the base must equal the ambient prime."""
    if text == "0":
        return PadicAbs.ZERO
    m = _ABS_RE.match(text) if isinstance(text, str) else None
    if not m:
        raise ValueError(f"malformed absolute value: {text!r} (expected '0' or 'p^e')")
    base, exp = int(m.group(1)), int(m.group(2))
    if base != p.value:
        raise ValueError(f"absolute value base {base} does not match prime {p.value}")
    return PadicAbs(exp)


def render_abs(a: PadicAbs, p: Prime) -> str:
    if a.is_zero:
        return "0"
    return f"{p.value}^{a.exponent}"


def padic_expansion(x: Fraction | int, p: Prime, digits: int = 12) -> str:
    """Display-only truncated p-adic digit expansion of a rational.

    Writes x as a sum of terms a_k * p**k starting at k = v_p(x), followed
    by an O(p**K) tail marker.  Exact arithmetic everywhere else in the
    package works on the rational itself; this is purely for reports.
    """
    x = Fraction(x)
    if digits < 1:
        raise ValueError("digits must be positive")
    if x == 0:
        return "0"
    pv = p.value
    v = valuation(x, p)
    unit = x / Fraction(pv) ** v
    modulus = pv**digits
    residue = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    terms = []
    for k in range(v, v + digits):
        residue, digit = divmod(residue, pv)
        if digit == 0:
            continue
        if k == 0:
            terms.append(str(digit))
        elif k == 1:
            terms.append(f"{digit}*{pv}" if digit != 1 else str(pv))
        else:
            terms.append(f"{digit}*{pv}^{k}" if digit != 1 else f"{pv}^{k}")
    tail = f"O({pv}^{v + digits})"
    return " + ".join(terms + [tail])
