"""Exact arithmetic in Q(sqrt(N)).

Rotated sets need ``floor(alpha)`` for numbers of the form ``A + B*sqrt(N)``
with rational A, B.  :func:`floor_quadratic` brackets sqrt(N) between
rational bounds of increasing precision until the floor is pinned down;
:func:`sign_quadratic` decides signs by squaring, with no approximation.
The two are deliberately independent so one can audit the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class PrecisionError(ArithmeticError):
    pass


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadraticNumber:
    """``rat + irr * sqrt(radicand)`` with rational coefficients."""

    rat: Fraction
    irr: Fraction
    radicand: int

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError("radicand must be non-negative")
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "irr", Fraction(self.irr))

    def __add__(self, other):
        if isinstance(other, QuadraticNumber):
            self._same(other)
            return QuadraticNumber(self.rat + other.rat, self.irr + other.irr, self.radicand)
        return QuadraticNumber(self.rat + Fraction(other), self.irr, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.rat, -self.irr, self.radicand)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadraticNumber):
            self._same(other)
            n = self.radicand
            return QuadraticNumber(
                self.rat * other.rat + self.irr * other.irr * n,
                self.rat * other.irr + self.irr * other.rat,
                n,
            )
        f = Fraction(other)
        return QuadraticNumber(self.rat * f, self.irr * f, self.radicand)

    __rmul__ = __mul__

    def _same(self, other):
        if other.radicand != self.radicand:
            raise ValueError("mixed radicands")

    def sign(self) -> int:
        return sign_quadratic(self.rat, self.irr, self.radicand)

    def floor(self, max_bits: int = 4096) -> int:
        return floor_quadratic(self.rat, self.irr, self.radicand, max_bits=max_bits)

    def __float__(self):
        return float(self.rat) + float(self.irr) * math.sqrt(self.radicand)


def sqrt_power(e: int, n: int) -> QuadraticNumber:
    """``sqrt(n) ** e`` for any integer exponent, as an element of Q(sqrt(n))."""
    if n <= 0:
        raise ValueError("sqrt_power needs a positive radicand")
    if e % 2 == 0:
        return QuadraticNumber(Fraction(n) ** (e // 2), 0, n)
    # sqrt(n)^e = sqrt(n) * n^((e-1)/2)
    return QuadraticNumber(0, Fraction(n) ** ((e - 1) // 2), n)


def sign_quadratic(a: Fraction, b: Fraction, n: int) -> int:
    """Sign of ``a + b*sqrt(n)``, exactly."""
    a, b = Fraction(a), Fraction(b)
    if b == 0 or n == 0:
        return (a > 0) - (a < 0)
    if is_square(n):
        v = a + b * math.isqrt(n)
        return (v > 0) - (v < 0)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa >= 0 and sb >= 0:
        return 1 if (sa or sb) else 0
    if sa <= 0 and sb <= 0:
        return -1
    # opposite signs: compare a^2 with b^2 n
    lhs, rhs = a * a, b * b * n
    if lhs == rhs:
        return 0  # impossible for irrational sqrt(n); kept for completeness
    return sa if lhs > rhs else sb


def floor_quadratic(a: Fraction, b: Fraction, n: int, *, max_bits: int = 4096) -> int:
    """``floor(a + b*sqrt(n))`` by interval refinement.

    sqrt(n) is enclosed in ``[r/2^p, (r+1)/2^p]`` with ``r = isqrt(n*4^p)``;
    the precision p doubles until both interval ends share a floor.  A perfect
    square radicand is handled exactly.  Raises :class:`PrecisionError` once
    ``p`` exceeds ``max_bits``.
    """
    a, b = Fraction(a), Fraction(b)
    if b == 0 or n == 0:
        return math.floor(a)
    if is_square(n):
        return math.floor(a + b * math.isqrt(n))
    p = 16
    while p <= max_bits:
        r = math.isqrt(n << (2 * p))
        lo_s = Fraction(r, 1 << p)
        hi_s = Fraction(r + 1, 1 << p)
        if b > 0:
            lo, hi = a + b * lo_s, a + b * hi_s
        else:
            lo, hi = a + b * hi_s, a + b * lo_s
        fl = math.floor(lo)
        if fl == math.floor(hi):
            return fl
        p *= 2
    raise PrecisionError(f"could not resolve floor of {a} + {b}*sqrt({n}) within {max_bits} bits")
