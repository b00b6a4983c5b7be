"""Exact integer polynomials: ring operations, height, evaluation, content.

Polynomials are immutable tuples of arbitrary-precision integer coefficients
in ascending order; the zero polynomial is the empty tuple with degree -inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bigreal import (
    DEFAULT_PREC_CAP,
    Interval,
    PrecisionExhausted,
    RealConstant,
    floor_shift,
)

NEG_INF = float("-inf")


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple

    @staticmethod
    def make(seq) -> "IntPoly":
        """Canonicalize: strip trailing (leading-power) zeros."""
        c = list(int(x) for x in seq)
        while c and c[-1] == 0:
            c.pop()
        return IntPoly(tuple(c))

    @staticmethod
    def zero() -> "IntPoly":
        return IntPoly(())

    @staticmethod
    def const(a: int) -> "IntPoly":
        return IntPoly.make([a])

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def add(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.make([self[i] + other[i] for i in range(n)])

    def sub(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.make([self[i] - other[i] for i in range(n)])

    def neg(self) -> "IntPoly":
        return IntPoly(tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "IntPoly":
        if k == 0:
            return IntPoly.zero()
        return IntPoly(tuple(k * a for a in self.coeffs))

    def shift_power(self, k: int) -> "IntPoly":
        """Multiply by X^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly.make([i * a for i, a in enumerate(self.coeffs)][1:])

    def reflect(self) -> "IntPoly":
        """(-1)^deg * f(-X): same leading coefficient, roots negated."""
        if self.is_zero:
            return self
        d = len(self.coeffs) - 1
        return IntPoly(tuple(a if (d - i) % 2 == 0 else -a
                             for i, a in enumerate(self.coeffs)))

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_int(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __str__(self):
        return poly_format(self)


def poly_parse(text: str, normalize: bool = False) -> IntPoly:
    """Comma-separated ascending integer coefficients -> IntPoly.

    Leading (highest-power) zero coefficients are rejected as non-canonical
    unless normalize is set.
    """
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        raise ValueError("empty polynomial text")
    try:
        coeffs = [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"non-integer coefficient in {text!r}") from exc
    if not normalize and len(coeffs) > 1 and coeffs[-1] == 0:
        raise ValueError(f"non-canonical leading zero in {text!r} (use normalize)")
    return IntPoly.make(coeffs)


def poly_format(f: IntPoly) -> str:
    if f.is_zero:
        return "0"
    return ",".join(str(a) for a in f.coeffs)


def cauchy_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    """Ordinary polynomial product."""
    if f.is_zero or g.is_zero:
        return IntPoly.zero()
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    return IntPoly.make(out)


def height(f: IntPoly) -> int:
    """Max absolute value of the coefficients."""
    if f.is_zero:
        raise ValueError("height of the zero polynomial")
    return max(abs(a) for a in f.coeffs)


def content_primitive(f: IntPoly) -> tuple[int, IntPoly]:
    """f = c * f0 with content(f0) = 1 and lead(f0) > 0.

    This is the canonical representative of f modulo nonzero integer
    scaling; the sign lives in c.
    """
    if f.is_zero:
        raise ValueError("content of the zero polynomial")
    c = 0
    for a in f.coeffs:
        c = math.gcd(c, a)
    if f.lead < 0:
        c = -c
    return c, IntPoly(tuple(a // c for a in f.coeffs))


@dataclass(frozen=True)
class ZCheckTag:
    """Membership in the monoid of degree >= 1 polynomials together with 1."""

    member: bool


def z_check(f: IntPoly) -> ZCheckTag:
    return ZCheckTag(member=(not f.is_zero and f.degree >= 1) or f.coeffs == (1,))


def horner_interval(f: IntPoly, x: Interval, prec: int) -> Interval:
    """Evaluate f over an interval argument, outward-rounded."""
    acc = Interval.point(0)
    for a in reversed(f.coeffs):
        acc = acc.mul(x, prec).add(Interval.from_exact(a, prec), prec)
    return acc


def fraction_interval(v: Fraction, P: int) -> Interval:
    """Enclosure of an exact rational with absolute width <= 2^-P."""
    if v == 0:
        return Interval.point(0)
    mag = max(0, v.numerator.bit_length() - v.denominator.bit_length() + 1)
    return Interval.from_exact(v, P + mag + 8)


def eval_interval(f: IntPoly, c: RealConstant, P: int,
                  cap: int = DEFAULT_PREC_CAP) -> Interval:
    """Certified enclosure of f(theta) with absolute width <= 2^-P.

    Rational constants take the exact path (a point interval when the value
    is dyadic, e.g. [0, 0] at an exact root).
    """
    fr = c.exact_fraction()
    if fr is not None:
        return fraction_interval(f.eval_fraction(fr), P)
    if f.is_zero:
        return Interval.point(0)
    t = P + 16 + sum(a.bit_length() for a in f.coeffs) // max(1, len(f.coeffs))
    target = Fraction(1, 2**P)
    while True:
        x = c.enclose(min(t, cap - 8), cap)
        out = horner_interval(f, x, t)
        if out.width(64) <= target:
            return out
        t *= 2
        if t > cap:
            raise PrecisionExhausted(f"eval of {poly_format(f)} at {c.spec} stalled")


@dataclass(frozen=True)
class LinearApprox:
    """Denominator n with the nearest-integer numerator n_perp to n*theta."""

    n: int
    n_perp: int
    theta: RealConstant

    def poly(self) -> IntPoly:
        return IntPoly.make([-self.n_perp, self.n])


def nearest_int_fraction(v: Fraction) -> int:
    """Nearest integer, ties rounded half away from zero."""
    q, r = divmod(abs(v.numerator), v.denominator)
    if 2 * r >= v.denominator:
        q += 1
    return q if v >= 0 else -q


def embed_linear(n: int, theta: RealConstant,
                 cap: int = DEFAULT_PREC_CAP) -> LinearApprox:
    """The degree-1 approximation n*X - n_perp with |n*theta - n_perp| <= 1/2."""
    if n == 0:
        raise ValueError("denominator n must be nonzero")
    fr = theta.exact_fraction()
    if fr is not None:
        return LinearApprox(n, nearest_int_fraction(n * fr), theta)
    t = 64
    while True:
        x = theta.enclose(min(t, cap - 8), cap)
        v = x.mul(Interval.from_exact(n, t), t)
        # floor(v + 1/2) certified equal on both endpoints
        lo_n = _nearest_from_endpoint(v.lo)
        hi_n = _nearest_from_endpoint(v.hi)
        if lo_n == hi_n:
            return LinearApprox(n, lo_n, theta)
        t *= 2
        if t > cap:
            raise PrecisionExhausted(f"nearest integer to {n}*{theta.spec} unresolved (near tie)")


def _nearest_from_endpoint(x) -> int:
    # floor(x + 1/2) = floor((2x + 1) / 2), computed exactly on the dyadic x
    return (floor_shift(x, 1) + 1) >> 1


def divides(g: IntPoly, f: IntPoly) -> bool:
    """Exact divisibility of f by g over the rationals."""
    if g.is_zero:
        return f.is_zero
    if f.is_zero:
        return True
    if f.degree < g.degree:
        return False
    rem = [Fraction(a) for a in f.coeffs]
    gc = [Fraction(a) for a in g.coeffs]
    dg = len(gc) - 1
    for top in range(len(rem) - 1, dg - 1, -1):
        q = rem[top] / gc[-1]
        if q:
            for j in range(dg + 1):
                rem[top - dg + j] -= q * gc[j]
    return all(x == 0 for x in rem[:dg])


def reduce_mod_quadratic(f: IntPoly, a: int, b: int, c: int) -> tuple[Fraction, Fraction]:
    """Exact (u, v) with f(theta) = u*theta + v for any root theta of
    a*X^2 + b*X + c (reduction X^2 -> (-b*X - c)/a)."""
    u, v = Fraction(0), Fraction(0)
    for coef in reversed(f.coeffs):
        # multiply (u*X + v) by X, then add coef
        u, v = v + u * Fraction(-b, a), u * Fraction(-c, a)
        v += coef
    return u, v
