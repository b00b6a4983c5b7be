"""Arbitrary-precision interval arithmetic and certified real constants.

Endpoints are exact dyadic rationals (arbitrary-precision binary floats via
gmpy2/MPFR).  Every operation is outward-rounded: the true result of the
underlying real operation is contained in the output interval.  Real
constants produce certified enclosures of any requested width, nested as
the requested precision grows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq, mpz

DEFAULT_PREC_CAP = 1 << 20  # bits


class PrecisionExhausted(Exception):
    """Raised when a certified answer would need more bits than the cap."""


_CTX = {}


def _dn(prec):
    key = (prec, "d")
    ctx = _CTX.get(key)
    if ctx is None:
        ctx = _CTX[key] = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    return ctx


def _up(prec):
    key = (prec, "u")
    ctx = _CTX.get(key)
    if ctx is None:
        ctx = _CTX[key] = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    return ctx


def _neg(x):
    """Exact negation of an mpfr (bare -x would round at thread precision)."""
    return _dn(max(x.precision, 2)).minus(x)


def _to_mpfr_pair(x, prec):
    """Exact value x (int, Fraction, mpq, mpz, mpfr) -> (lo, hi) rounding both ways."""
    if isinstance(x, Fraction):
        x = mpq(x.numerator, x.denominator)
    z = mpfr(0)
    return _dn(prec).add(z, x), _up(prec).add(z, x)


def dyadic_decimal(x) -> str:
    """Exact decimal representation of a dyadic mpfr endpoint."""
    if gmpy2.is_zero(x):
        return "0"
    m, e = x.as_mantissa_exp()
    m, e = int(m), int(e)
    sign = "-" if m < 0 else ""
    m = abs(m)
    if e >= 0:
        return sign + str(m << e)
    k = -e
    digits = str(m * 5**k).rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:]
    frac = frac.rstrip("0")
    return sign + whole + ("." + frac if frac else "")


def floor_shift(x, shift: int) -> int:
    """floor(x * 2^shift) computed exactly from the dyadic endpoint x."""
    if gmpy2.is_zero(x):
        return 0
    m, e = x.as_mantissa_exp()
    s = int(e) + shift
    m = int(m)
    return m << s if s >= 0 else m >> (-s)


def ceil_shift(x, shift: int) -> int:
    return -floor_shift(_neg(x), shift)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact dyadic endpoints, lo <= hi."""

    lo: object
    hi: object

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors -------------------------------------------------

    @staticmethod
    def point(x) -> "Interval":
        """Exact point interval from an int or dyadic mpfr."""
        if isinstance(x, int):
            x = mpfr(x, max(x.bit_length(), 2))
        return Interval(x, x)

    @staticmethod
    def from_exact(x, prec) -> "Interval":
        """Tight enclosure of an exact int/Fraction/mpq at the given precision."""
        lo, hi = _to_mpfr_pair(x, prec)
        return Interval(lo, hi)

    @staticmethod
    def hull(a: "Interval", b: "Interval") -> "Interval":
        return Interval(min(a.lo, b.lo), max(a.hi, b.hi))

    # -- predicates ----------------------------------------------------

    def contains(self, x) -> bool:
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def width(self, prec=64):
        return _up(prec).sub(self.hi, self.lo)

    def width_below(self, P: int) -> bool:
        """True if the interval width is certified <= 2^-P."""
        return self.width(64) <= gmpy2.mul_2exp(mpfr(1), -P) if P >= 0 else True

    def mid(self, prec=64):
        return gmpy2.context(precision=prec).div(
            gmpy2.context(precision=prec).add(self.lo, self.hi), 2
        )

    def intersect(self, other: "Interval") -> "Interval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint intervals have no intersection")
        return Interval(lo, hi)

    # -- arithmetic (all outward-rounded at precision prec) ------------

    def add(self, other: "Interval", prec) -> "Interval":
        return Interval(_dn(prec).add(self.lo, other.lo), _up(prec).add(self.hi, other.hi))

    def sub(self, other: "Interval", prec) -> "Interval":
        return Interval(_dn(prec).sub(self.lo, other.hi), _up(prec).sub(self.hi, other.lo))

    def neg(self) -> "Interval":
        return Interval(_neg(self.hi), _neg(self.lo))

    def mul(self, other: "Interval", prec) -> "Interval":
        dn, up = _dn(prec), _up(prec)
        pairs = ((self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi))
        return Interval(min(dn.mul(a, b) for a, b in pairs),
                        max(up.mul(a, b) for a, b in pairs))

    def mul_exact(self, k: int) -> "Interval":
        """Scale by an exact int small enough to need no rounding check."""
        prec = max(self.lo.precision, self.hi.precision) + max(k.bit_length(), 1)
        return self.mul(Interval.from_exact(k, prec), prec)

    def div(self, other: "Interval", prec) -> "Interval":
        if other.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        dn, up = _dn(prec), _up(prec)
        pairs = ((self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi))
        return Interval(min(dn.div(a, b) for a, b in pairs),
                        max(up.div(a, b) for a, b in pairs))

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return self.neg()
        return Interval(mpfr(0), max(_neg(self.lo), self.hi))

    def pow_int(self, k: int, prec) -> "Interval":
        if k < 0:
            raise ValueError("negative powers go through div")
        out = Interval.point(1)
        base = self
        while k:
            if k & 1:
                out = out.mul(base, prec)
            k >>= 1
            if k:
                base = base.mul(base, prec)
        return out

    def sqrt(self, prec) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative endpoint")
        return Interval(_dn(prec).sqrt(self.lo), _up(prec).sqrt(self.hi))

    def rootn(self, n: int, prec) -> "Interval":
        if self.lo < 0:
            raise ValueError("rootn of interval with negative endpoint")
        return Interval(_dn(prec).rootn(self.lo, n), _up(prec).rootn(self.hi, n))

    def log(self, prec) -> "Interval":
        if self.lo <= 0:
            raise ValueError("log of interval touching zero")
        return Interval(_dn(prec).log(self.lo), _up(prec).log(self.hi))

    def exp(self, prec) -> "Interval":
        return Interval(_dn(prec).exp(self.lo), _up(prec).exp(self.hi))

    def max1(self) -> "Interval":
        """max(1, .) applied endpoint-wise (exact)."""
        one = mpfr(1)
        return Interval(max(self.lo, one), max(self.hi, one))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"

    def as_decimal_pair(self):
        return dyadic_decimal(self.lo), dyadic_decimal(self.hi)


_SPEC_RE_RAT = re.compile(r"^rat:(-?\d+)/(-?\d+)$")
_SPEC_RE_QUAD = re.compile(r"^quad:(-?\d+),(-?\d+),(-?\d+),([+-])$")
_SPEC_RE_BASE = re.compile(r"^(liouville|champernowne):(\d+)$")
_SPEC_RE_DEC = re.compile(r"^dec:(-?)(\d+)(?:\.(\d+))?$")


@dataclass
class RealConstant:
    """A computable real with an on-demand certified enclosure generator.

    `kind` is one of rational | quadratic | e | pi | liouville |
    champernowne; `params` holds the exact integers defining the constant.
    Enclosures returned by `enclose` are nested as P grows (each constant
    remembers the tightest enclosure it has produced).
    """

    kind: str
    params: tuple
    spec: str
    _best: Interval | None = field(default=None, repr=False, compare=False)

    def exact_fraction(self) -> Fraction | None:
        """The exact value, when the constant is rational."""
        if self.kind == "rational":
            return Fraction(self.params[0], self.params[1])
        if self.kind == "quadratic":
            a, b, c, s = self.params
            d = b * b - 4 * a * c
            r = _isqrt_exact(d)
            if r is not None:  # rational root of the quadratic
                return Fraction(-b + s * r, 2 * a)
        return None

    def minimal_poly_coeffs(self) -> list[int] | None:
        """Ascending coefficients of an integer polynomial vanishing at the
        constant (the defining polynomial), when one is known exactly."""
        fr = self.exact_fraction()
        if fr is not None:
            return [-fr.numerator, fr.denominator]
        if self.kind == "quadratic":
            a, b, c, _ = self.params
            return [c, b, a]
        return None

    def enclose(self, P: int, cap: int = DEFAULT_PREC_CAP) -> Interval:
        """Certified enclosure of width <= 2^-P; nested for increasing P."""
        if P < 8:
            raise ValueError("precision request below 8 bits")
        target = gmpy2.mul_2exp(mpfr(1), -P)
        t = P + 16
        while True:
            iv = self._compute(t)
            if self._best is not None:
                iv = iv.intersect(self._best)
            self._best = iv
            if iv.width(64) <= target:
                return iv
            t *= 2
            if t > cap:
                raise PrecisionExhausted(
                    f"cannot enclose {self.spec} to width 2^-{P} within {cap} bits")

    # enclosures at working precision t; each is certified but its width
    # is only checked by the caller

    def _compute(self, t: int) -> Interval:
        kind = self.kind
        if kind == "rational":
            p, q = self.params
            return Interval.from_exact(mpq(p, q), t)
        if kind == "quadratic":
            a, b, c, s = self.params
            d = b * b - 4 * a * c
            sq = Interval.from_exact(d, t).sqrt(t)
            num = Interval.from_exact(-b, t).add(sq.mul(Interval.point(s), t), t)
            return num.div(Interval.from_exact(2 * a, t), t)
        if kind == "e":
            one = mpfr(1)
            return Interval(_dn(t).exp(one), _up(t).exp(one))
        if kind == "pi":
            return Interval(_dn(t).const_pi(), _up(t).const_pi())
        if kind == "liouville":
            (b,) = self.params
            return self._series_enclosure(t, b, _liouville_partial)
        if kind == "champernowne":
            (b,) = self.params
            return self._series_enclosure(t, b, _champernowne_partial)
        raise AssertionError(f"unknown kind {kind}")

    @staticmethod
    def _series_enclosure(t, b, partial) -> Interval:
        # partial(b, bits) -> (exact mpq lower part, exponent e with tail < 2^e)
        s, e = partial(b, t + 2)
        lo, _ = _to_mpfr_pair(s, t)
        _, s_hi = _to_mpfr_pair(s, t)
        hi = _up(t).add(s_hi, gmpy2.mul_2exp(mpfr(1), e))
        return Interval(lo, hi)


def _isqrt_exact(d: int) -> int | None:
    if d < 0:
        return None
    r = gmpy2.isqrt(d)
    return int(r) if r * r == d else None


def _liouville_partial(b: int, bits: int):
    """Exact partial sum of sum_k b^-k! with tail certified < 2^-bits."""
    lg = b.bit_length() - 1  # b >= 2^lg so b^m >= 2^(m*lg)
    fact, n = 1, 1
    while True:
        nxt = fact * (n + 1)
        if nxt * lg >= bits + 1:  # tail < 2*b^-(n+1)! <= 2^(1 - nxt*lg)
            break
        fact, n = nxt, n + 1
    den = b**fact
    num = sum(b ** (fact - _factorial_upto(k)) for k in range(1, n + 1))
    return mpq(num, den), 1 - nxt * lg


def _factorial_upto(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _champernowne_partial(b: int, bits: int):
    """Exact truncation of 0.(1)(2)(3)... in base b with tail < 2^-bits."""
    lg = b.bit_length() - 1
    need = bits // lg + 1  # digits so that b^-digits <= 2^-bits
    num, digits, k = 0, 0, 0
    while digits < need:
        k += 1
        w = 1
        kk = k
        while kk >= b:
            kk //= b
            w += 1
        num = num * b**w + k
        digits += w
    return mpq(num, b**digits), -digits * lg


def const_parse(spec: str) -> RealConstant:
    """Parse the constant mini-language.

    Forms: rat:p/q | quad:a,b,c,sign | e | pi | liouville:b |
    champernowne:b | dec:<digits>.
    """
    spec = spec.strip()
    if spec == "e":
        return RealConstant("e", (), spec)
    if spec == "pi":
        return RealConstant("pi", (), spec)
    m = _SPEC_RE_RAT.match(spec)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if q == 0:
            raise ValueError(f"zero denominator in {spec!r}")
        fr = Fraction(p, q)
        return RealConstant("rational", (fr.numerator, fr.denominator), spec)
    m = _SPEC_RE_QUAD.match(spec)
    if m:
        a, b, c = int(m.group(1)), int(m.group(2)), int(m.group(3))
        s = 1 if m.group(4) == "+" else -1
        if a == 0:
            raise ValueError(f"leading coefficient zero in {spec!r}")
        if b * b - 4 * a * c < 0:
            raise ValueError(f"selected root of {spec!r} is not real")
        return RealConstant("quadratic", (a, b, c, s), spec)
    m = _SPEC_RE_BASE.match(spec)
    if m:
        b = int(m.group(2))
        if b < 2:
            raise ValueError(f"base must be >= 2 in {spec!r}")
        return RealConstant(m.group(1), (b,), spec)
    m = _SPEC_RE_DEC.match(spec)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        whole, frac = m.group(2), m.group(3) or ""
        num = sign * int(whole + frac)
        fr = Fraction(num, 10 ** len(frac))
        return RealConstant("rational", (fr.numerator, fr.denominator), spec)
    raise ValueError(f"malformed constant spec {spec!r}")


def cf_convergents(c: RealConstant, n: int, cap: int = DEFAULT_PREC_CAP) -> list[tuple[int, int]]:
    """First n continued-fraction convergents (p_k, q_k) in lowest terms.

    For a rational constant the expansion terminates and fewer pairs may be
    returned.  Each partial quotient is certified by enclosure refinement;
    unresolvable quotients raise PrecisionExhausted.
    """
    if n < 1:
        return []
    fr = c.exact_fraction()
    if fr is not None:
        return _cf_rational(fr, n)
    t = 128
    while True:
        out = _cf_attempt(c, n, t, cap)
        if out is not None:
            return out
        t *= 2
        if t > cap:
            raise PrecisionExhausted(f"continued fraction of {c.spec} stalled at {cap} bits")


def _cf_rational(fr: Fraction, n: int) -> list[tuple[int, int]]:
    p, q = fr.numerator, fr.denominator
    out = []
    pm1, pm2, qm1, qm2 = 1, 0, 0, 1
    while q and len(out) < n:
        a, r = divmod(p, q)
        pk, qk = a * pm1 + pm2, a * qm1 + qm2
        out.append((pk, qk))
        pm2, pm1, qm2, qm1 = pm1, pk, qm1, qk
        p, q = q, r
    return out

def _cf_attempt(c, n, t, cap):
    x = c.enclose(min(t, cap - 16), cap)
    out = []
    pm1, pm2, qm1, qm2 = 1, 0, 0, 1
    for _ in range(n):
        a_lo = floor_shift(x.lo, 0)
        a_hi = floor_shift(x.hi, 0)
        if a_lo != a_hi:
            return None
        a = a_lo
        pk, qk = a * pm1 + pm2, a * qm1 + qm2
        out.append((pk, qk))
        pm2, pm1, qm2, qm1 = pm1, pk, qm1, qk
        frac = x.sub(Interval.from_exact(a, t), t)
        if frac.contains_zero():
            return None
        x = Interval.point(1).div(frac, t)
    return out
