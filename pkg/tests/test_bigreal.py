"""Tests for the interval layer and certified constants."""

import random
from fractions import Fraction

import pytest

from resultantlab.bigreal import (
    DEFAULT_PREC_CAP,
    Interval,
    PrecisionExhausted,
    cf_convergents,
    const_parse,
    dyadic_decimal,
)


def bisect_root(coeffs, lo, hi, bits):
    """Independent oracle: bisection bracket of a root of an integer
    polynomial (ascending coeffs) over exact Fractions."""
    def ev(x):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc
    lo, hi = Fraction(lo), Fraction(hi)
    assert ev(lo) * ev(hi) < 0
    for _ in range(bits):
        mid = (lo + hi) / 2
        if ev(lo) * ev(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def iv_contains_fraction(iv, fr):
    return iv.contains(fr)


def test_const_parse_rational():
    c = const_parse("rat:1/3")
    iv = c.enclose(64)
    assert iv.contains(Fraction(1, 3))
    assert not iv.contains(Fraction(1, 3) + Fraction(1, 2**40))


def test_const_parse_golden_ratio_against_bisection():
    c = const_parse("quad:1,-1,-1,+")
    iv = c.enclose(64)
    lo, hi = bisect_root([-1, -1, 1], 1, 2, 80)
    assert iv.lo <= hi and lo <= iv.hi  # brackets overlap
    # frozen leading digits of (1+sqrt(5))/2
    assert dyadic_decimal(iv.lo).startswith("1.618033988749894848")


def test_const_parse_liouville_partial_sum_oracle():
    c = const_parse("liouville:10")
    iv = c.enclose(64)
    s3 = Fraction(1, 10) + Fraction(1, 100) + Fraction(1, 10**6)
    s4 = s3 + Fraction(1, 10**24)
    # true value lies in (s4, s4 + 2*10^-120); the enclosure must overlap
    # that bracket and have the requested width
    assert iv.lo <= s4 + 2 * Fraction(1, 10**120)
    assert iv.hi >= s4
    assert iv.lo >= s3
    assert iv.width(64) <= 2.0 ** -64


def test_enclose_exact_dyadic():
    c = const_parse("rat:1/2")
    iv = c.enclose(16)
    assert iv.lo == iv.hi == 0.5


def test_enclose_sqrt2_width():
    c = const_parse("quad:1,0,-2,+")
    iv = c.enclose(64)
    assert iv.width(64) <= 2.0 ** -64
    lo, hi = bisect_root([-2, 0, 1], 1, 2, 80)
    assert lo <= iv.hi and iv.lo <= hi


def test_enclose_liouville_width():
    c = const_parse("liouville:10")
    iv = c.enclose(64)
    assert iv.width(64) <= 2.0 ** -64


@pytest.mark.parametrize("spec", ["rat:7/11", "quad:1,0,-2,+", "e", "pi",
                                  "liouville:10", "champernowne:10", "dec:2.75"])
def test_nesting(spec):
    c = const_parse(spec)
    a = c.enclose(32)
    b = c.enclose(96)
    d = c.enclose(160)
    assert a.contains_interval(b)
    assert b.contains_interval(d)


def test_rational_exactness_all_precisions():
    c = const_parse("rat:-22/7")
    for P in (8, 32, 128, 512):
        assert c.enclose(P).contains(Fraction(-22, 7))


def test_cf_phi():
    c = const_parse("quad:1,-1,-1,+")
    assert cf_convergents(c, 5) == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]


def test_cf_sqrt2():
    c = const_parse("quad:1,0,-2,+")
    assert cf_convergents(c, 4) == [(1, 1), (3, 2), (7, 5), (17, 12)]


def test_cf_rational_terminates():
    c = const_parse("rat:1/3")
    assert cf_convergents(c, 2) == [(0, 1), (1, 3)]
    assert cf_convergents(c, 10) == [(0, 1), (1, 3)]


def test_cf_e_known_quotients():
    # e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]
    c = const_parse("e")
    conv = cf_convergents(c, 6)
    assert conv[0] == (2, 1)
    assert conv[1] == (3, 1)
    assert conv[2] == (8, 3)
    assert conv[3] == (11, 4)
    assert conv[4] == (19, 7)
    assert conv[5] == (87, 32)


@pytest.mark.parametrize("spec", ["quad:1,-1,-1,+", "e", "liouville:10"])
def test_convergent_law(spec):
    # |q_k theta - p_k| < 1/q_{k+1}, checked in interval arithmetic
    c = const_parse(spec)
    conv = cf_convergents(c, 8)
    theta = c.enclose(512)
    for (p, q), (_, q1) in zip(conv, conv[1:]):
        err = theta.mul(Interval.point(q), 512).sub(Interval.point(p), 512).abs()
        assert err.hi < Fraction(1, q1)


def test_cf_denominators_increase():
    conv = cf_convergents(const_parse("pi"), 8)
    qs = [q for _, q in conv]
    assert qs == sorted(qs) and len(set(qs)) >= len(qs) - 1
    for i in range(1, len(qs)):
        assert qs[i] > qs[i - 1] or i == 1


@pytest.mark.parametrize("bad", ["rat:1/0", "quad:0,1,1,+", "quad:1,0,2,+",
                                 "liouville:1", "champernowne:0", "rat:x/3",
                                 "dec:1.2.3", "nonsense", ""])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        const_parse(bad)


def test_enclose_precision_floor():
    with pytest.raises(ValueError):
        const_parse("e").enclose(4)


def test_precision_cap_exhaustion():
    c = const_parse("liouville:10")
    with pytest.raises(PrecisionExhausted):
        cf_convergents(c, 16, cap=512)


def test_interval_outward_arithmetic():
    rng = random.Random(7)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        ia = Interval.from_exact(a, 64)
        ib = Interval.from_exact(b, 64)
        assert ia.add(ib, 64).contains(a + b)
        assert ia.sub(ib, 64).contains(a - b)
        assert ia.mul(ib, 64).contains(a * b)
        if b != 0 and not ib.contains_zero():
            assert ia.div(ib, 64).contains(Fraction(a, b))
        assert ia.abs().contains(abs(a))
        assert ia.pow_int(3, 64).contains(a**3)


def test_interval_log_exp_roundtrip():
    iv = Interval.from_exact(Fraction(7, 3), 128)
    back = iv.log(128).exp(128)
    assert back.contains(Fraction(7, 3))


def test_dyadic_decimal_exact():
    assert dyadic_decimal(Interval.point(5).lo) == "5"
    half = const_parse("rat:1/2").enclose(16)
    assert dyadic_decimal(half.lo) == "0.5"
    c = const_parse("rat:3/4").enclose(16)
    assert dyadic_decimal(c.lo) == "0.75"
