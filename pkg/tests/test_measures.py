import random
from fractions import Fraction

import pytest

from resultantlab.bigreal import Interval, const_parse
from resultantlab.measures import (
    decay_factorization_check,
    mahler_measure,
    roots_certified,
    squarefree_decomposition,
    theta_measures,
    wirsing_bounds,
)
from resultantlab.polycore import IntPoly, cauchy_mul, poly_parse

from oracles import rand_monoid_poly
from test_bigreal import bisect_root


def P(text):
    return poly_parse(text, normalize=True)


def test_squarefree_decomposition():
    f = cauchy_mul(cauchy_mul(P("-1,1"), P("-1,1")), P("-2,1"))
    c, parts = squarefree_decomposition(f)
    assert c == 1
    assert sorted((p.coeffs, k) for p, k in parts) == [((-2, 1), 1), ((-1, 1), 2)]

    c2, parts2 = squarefree_decomposition(P("-2,0,1"))
    assert c2 == 1 and parts2 == [(P("-2,0,1"), 1)]

    f3 = cauchy_mul(P("-2,2"), P("-2,2"))  # 4(X-1)^2
    c3, parts3 = squarefree_decomposition(f3)
    assert c3 == 4 and parts3 == [(P("-1,1"), 2)]


def test_roots_sqrt2_vs_bisection():
    rs = roots_certified(P("-2,0,1"), 64)
    lo, hi = bisect_root([-2, 0, 1], 1, 2, 80)
    pos = [r for r in rs if r.box.re.lo > 0]
    neg = [r for r in rs if r.box.re.hi < 0]
    assert len(pos) == len(neg) == 1
    b = pos[0].box
    assert b.re.lo <= hi and lo <= b.re.hi
    assert b.im.abs().hi <= 2.0 ** -64
    assert b.diam() <= 2.0 ** -64


def test_roots_double_root_multiplicity():
    f = cauchy_mul(P("-1,1"), P("-1,1"))
    rs = roots_certified(f, 48)
    assert len(rs.roots) == 1
    assert rs.roots[0].multiplicity == 2
    assert rs.roots[0].box.re.contains(1)
    assert rs.total_multiplicity() == 2


def test_roots_of_x2_plus_1():
    rs = roots_certified(P("1,0,1"), 64)
    ims = sorted(float(r.box.im.mid()) for r in rs)
    assert abs(ims[0] + 1) < 1e-15 and abs(ims[1] - 1) < 1e-15
    for r in rs:
        assert r.box.re.abs().hi <= 2.0 ** -64


def test_roots_random_count_invariant():
    rng = random.Random(71)
    for _ in range(20):
        f = rand_monoid_poly(rng, max_deg=5)
        rs = roots_certified(f, 48)
        assert rs.total_multiplicity() == f.degree


def test_mahler_examples():
    m = mahler_measure(P("-1,1"), 64)
    assert m.contains(1) and m.width(64) <= 2.0 ** -60

    m2 = mahler_measure(P("-2,0,1"), 64)
    assert m2.contains(2) and m2.width(64) <= 2.0 ** -60

    m3 = mahler_measure(P("-1,2"), 64)
    assert m3.contains(2) and m3.width(64) <= 2.0 ** -60


def test_mahler_constant_and_scaling():
    assert mahler_measure(P("-7"), 32).contains(7)
    # measure of 3X-1: root inside the unit circle, so exactly |lead|
    m = mahler_measure(P("-1,3"), 64)
    assert m.contains(3) and m.width(64) <= 2.0 ** -60


def test_mahler_multiplicative_consistency():
    rng = random.Random(73)
    for _ in range(15):
        f = rand_monoid_poly(rng, max_deg=3)
        g = rand_monoid_poly(rng, max_deg=3)
        mf = mahler_measure(f, 72)
        mg = mahler_measure(g, 72)
        mfg = mahler_measure(cauchy_mul(f, g), 80)
        prod = mf.mul(mg, 160)
        # equality holds in exact arithmetic; enclosures must be consistent
        assert mfg.lo <= prod.hi and prod.lo <= mfg.hi


def test_theta_measures_x2_minus_2_at_zero():
    rep = theta_measures(P("-2,0,1"), const_parse("rat:0/1"), Fraction(1), 64)
    assert rep.theta_mahler.contains(2)
    assert rep.disk_measure.contains(1)
    assert rep.abs_value.contains(2)
    assert rep.height == 2
    assert rep.disk_root_indexes == ()
    assert rep.theta_mahler.mul(rep.disk_measure, 128).contains_interval(rep.abs_value)


def test_theta_measures_root_at_theta():
    rep = theta_measures(P("-1,1"), const_parse("rat:1/1"), Fraction(1), 64)
    assert rep.theta_mahler.contains(1)
    assert rep.disk_measure.lo == rep.disk_measure.hi == 0

    rep2 = theta_measures(P("-1,2"), const_parse("rat:1/2"), Fraction(1), 64)
    assert rep2.disk_measure.lo == rep2.disk_measure.hi == 0


def test_theta_measures_lead_free_disk_product():
    # f = 2X-1 at theta=0: theta-Mahler 2*max(1/2,1) = 2, disk product
    # |f(0)|/2 = 1/2 (the scale-invariant bare distance)
    rep = theta_measures(P("-1,2"), const_parse("rat:0/1"), Fraction(1), 64)
    assert rep.theta_mahler.contains(2)
    assert rep.disk_measure.contains(Fraction(1, 2))
    assert len(rep.disk_root_indexes) == 1


def test_theta_measures_rho_boundary_exact_distance():
    # root at distance exactly 1/2 (a dyadic box): strict < rho excludes it
    # deterministically, no straddle
    rep = theta_measures(P("-1,2"), const_parse("rat:0/1"), Fraction(1, 2), 64)
    assert not rep.rho_boundary_flag
    assert rep.zeta_rho.contains(1)  # empty disk product


def test_theta_measures_rho_boundary_flag():
    # root 1/3 at distance 1/3 from 0: the enclosure genuinely straddles
    # rho = 1/3, so the report hulls both cases and flags it
    rep = theta_measures(P("-1,3"), const_parse("rat:0/1"), Fraction(1, 3), 64)
    assert rep.rho_boundary_flag
    assert rep.zeta_rho.contains(1) and rep.zeta_rho.contains(Fraction(1, 3))


def test_wirsing_example_frozen():
    lower, upper = wirsing_bounds(P("-1,1"), const_parse("rat:3/1"), Fraction(1), 64)
    # 2^-2 * 2^-(1/2) * (1/3) * 2 = 2^(1/2)/12 = 0.11785...
    assert lower.lo > 0.1178 and lower.hi < 0.1179
    assert upper.contains(24)
    rep = theta_measures(P("-1,1"), const_parse("rat:3/1"), Fraction(1), 64)
    z = rep.zeta_rho  # degree 1: no normalization needed
    assert lower.hi <= z.hi and z.lo <= upper.hi
    assert z.contains(1)


def test_wirsing_2x_minus_1_at_zero():
    lower, upper = wirsing_bounds(P("-1,2"), const_parse("rat:0/1"), Fraction(1), 64)
    rep = theta_measures(P("-1,2"), const_parse("rat:0/1"), Fraction(1), 64)
    assert rep.zeta_rho.contains(Fraction(1, 2))
    assert lower.hi < 0.5 < upper.lo


def test_wirsing_rejects_exact_zero():
    with pytest.raises(ValueError):
        wirsing_bounds(P("-1,1"), const_parse("rat:1/1"), Fraction(1), 64)


def test_wirsing_sandwich_random():
    rng = random.Random(79)
    checked = 0
    while checked < 60:
        f = rand_monoid_poly(rng, max_deg=4)
        num = rng.randint(-200, 200)
        theta = const_parse(f"rat:{num}/100")
        if f.eval_fraction(Fraction(num, 100)) == 0:
            continue
        lower, upper = wirsing_bounds(f, theta, Fraction(1), 96)
        rep = theta_measures(f, theta, Fraction(1), 96)
        z_d = rep.zeta_rho.rootn(f.degree, 160)
        assert lower.lo <= z_d.hi, (f, theta.spec)
        assert z_d.lo <= upper.hi, (f, theta.spec)
        checked += 1


def test_decay_factorization_examples():
    rep = decay_factorization_check(P("-2,0,1"), const_parse("rat:0/1"), 2, 64)
    assert rep.contained
    assert rep.value_normalized.contains_interval(
        Interval.from_exact(Fraction(2), 256).sqrt(256)) or rep.value_normalized.lo < 1.41422

    phi = const_parse("quad:1,-1,-1,+")
    rep2 = decay_factorization_check(P("-8,5"), phi, 1, 64)
    assert rep2.contained
    assert rep2.value_normalized.lo > 0.0901 and rep2.value_normalized.hi < 0.0903

    rep3 = decay_factorization_check(P("-1,3"), const_parse("rat:1/3"), 1, 64)
    assert rep3.contained
    assert rep3.value_normalized.lo == rep3.value_normalized.hi == 0


def test_decay_factorization_random():
    rng = random.Random(83)
    for _ in range(25):
        f = rand_monoid_poly(rng, max_deg=4)
        theta = const_parse(f"rat:{rng.randint(-150, 150)}/100")
        d = f.degree + rng.randint(0, 1)
        assert decay_factorization_check(f, theta, d, 64).contained
