"""Rational interval and rectangular complex-box arithmetic.

Endpoints are Fractions, so every bound is exact; no floating point is
involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x):
        x = Fraction(x)
        return cls(x, x)

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def __add__(self, other):
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    def scaled(self, c):
        c = Fraction(c)
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def square(self):
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        m = max(-self.lo, self.hi)
        return Interval(0, m * m)

    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        return self.lo <= x <= self.hi

    def overlaps(self, other):
        return not (self.hi < other.lo or other.hi < self.lo)


def sqrt_lower(x: Fraction, bits=64) -> Fraction:
    """Rational lower bound on sqrt(x) for x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    scale = 1 << bits
    n = x.numerator * scale * scale
    return Fraction(isqrt(n // x.denominator), scale)


def sqrt_upper(x: Fraction, bits=64) -> Fraction:
    """Rational upper bound on sqrt(x) for x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    scale = 1 << bits
    n = -(-x.numerator * scale * scale // x.denominator)
    r = isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, scale)


def interval_sqrt(iv: Interval, bits=64) -> Interval:
    lo = max(iv.lo, Fraction(0))
    return Interval(sqrt_lower(lo, bits), sqrt_upper(iv.hi, bits))


class Box:
    """Axis-aligned rectangle in the complex plane."""

    __slots__ = ("re", "im")

    def __init__(self, re: Interval, im: Interval):
        self.re = re
        self.im = im

    @classmethod
    def point(cls, x, y=0):
        return cls(Interval.point(x), Interval.point(y))

    @classmethod
    def real(cls, iv: Interval):
        return cls(iv, Interval.point(0))

    def __repr__(self):
        return f"Box({self.re!r}, {self.im!r})"

    def __add__(self, other):
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Box(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return Box(-self.re, -self.im)

    def __mul__(self, other):
        return Box(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scaled(self, c):
        return Box(self.re.scaled(c), self.im.scaled(c))

    def abs2(self) -> Interval:
        """Interval enclosure of |z|^2."""
        r = self.re.square()
        i = self.im.square()
        return Interval(r.lo + i.lo, r.hi + i.hi)

    def abs_upper(self, bits=64) -> Fraction:
        return sqrt_upper(self.abs2().hi, bits)

    def abs_lower(self, bits=64) -> Fraction:
        return sqrt_lower(self.abs2().lo, bits)

    def width(self):
        return max(self.re.width(), self.im.width())

    def half_width(self):
        return self.width() / 2

    def contains_point(self, x, y=0):
        return self.re.contains(Fraction(x)) and self.im.contains(Fraction(y))

    def overlaps(self, other):
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def center(self):
        return (self.re.mid(), self.im.mid())
