import random
from fractions import Fraction

import pytest

from resultantlab.bigreal import const_parse
from resultantlab.polycore import (
    IntPoly,
    cauchy_mul,
    content_primitive,
    divides,
    embed_linear,
    eval_interval,
    height,
    poly_format,
    poly_parse,
    reduce_mod_quadratic,
    z_check,
)


def rand_poly(rng, max_deg=4, max_coeff=10, nonzero=False):
    while True:
        f = IntPoly.make([rng.randint(-max_coeff, max_coeff)
                          for _ in range(rng.randint(1, max_deg + 1))])
        if not (nonzero and f.is_zero):
            return f


def test_parse_format_roundtrip():
    f = poly_parse("-2,0,1")
    assert f.coeffs == (-2, 0, 1)
    assert poly_format(f) == "-2,0,1"
    assert poly_parse(poly_format(f)) == f
    assert poly_parse("1").coeffs == (1,)


def test_parse_rejects_leading_zero():
    with pytest.raises(ValueError):
        poly_parse("0,0")
    assert poly_parse("0,0", normalize=True).is_zero
    with pytest.raises(ValueError):
        poly_parse("1,x")
    with pytest.raises(ValueError):
        poly_parse("")


def test_cauchy_mul_examples():
    assert cauchy_mul(poly_parse("-1,1"), poly_parse("1,1")).coeffs == (-1, 0, 1)
    assert cauchy_mul(poly_parse("-1,2"), poly_parse("-1,3")).coeffs == (1, -5, 6)
    assert cauchy_mul(poly_parse("3,1"), IntPoly.zero()).is_zero


def test_height_examples():
    assert height(poly_parse("2,-5,3")) == 5
    assert height(poly_parse("0,1")) == 1
    assert height(poly_parse("-7")) == 7
    with pytest.raises(ValueError):
        height(IntPoly.zero())


def test_eval_interval_exact_rational_zero():
    f = poly_parse("-1,3")
    iv = eval_interval(f, const_parse("rat:1/3"), 64)
    assert iv.lo == iv.hi == 0


def test_eval_interval_phi_root():
    f = poly_parse("-1,-1,1")
    iv = eval_interval(f, const_parse("quad:1,-1,-1,+"), 80)
    assert iv.contains_zero()
    assert iv.width(64) <= 2.0 ** -80


def test_eval_interval_exact_dyadic():
    iv = eval_interval(poly_parse("-1,1"), const_parse("rat:1/2"), 16)
    assert iv.lo == iv.hi == -0.5


def test_content_primitive_examples():
    assert content_primitive(poly_parse("-4,4")) == (4, poly_parse("-1,1"))
    assert content_primitive(poly_parse("9,0,-6")) == (-3, poly_parse("-3,0,2"))
    assert content_primitive(poly_parse("-1,1")) == (1, poly_parse("-1,1"))
    with pytest.raises(ValueError):
        content_primitive(IntPoly.zero())


def test_z_check():
    assert z_check(poly_parse("0,1")).member
    assert z_check(poly_parse("1")).member
    assert not z_check(poly_parse("2")).member
    assert not z_check(IntPoly.zero()).member


def test_embed_linear_phi():
    phi = const_parse("quad:1,-1,-1,+")
    la = embed_linear(5, phi)
    assert (la.n, la.n_perp) == (5, 8)
    iv = eval_interval(la.poly(), phi, 64)
    assert iv.lo > 0.0901 and iv.hi < 0.0903

    la34 = embed_linear(34, phi)
    assert (la34.n, la34.n_perp) == (34, 55)
    iv34 = eval_interval(la34.poly(), phi, 64)
    assert abs(iv34.mid()) < 0.0133 and abs(iv34.mid()) > 0.0131


def test_embed_linear_exact_zero_decay():
    la = embed_linear(2, const_parse("rat:1/2"))
    assert la.poly().coeffs == (-1, 2)
    iv = eval_interval(la.poly(), la.theta, 32)
    assert iv.lo == iv.hi == 0


def test_embed_linear_half_tie_away_from_zero():
    half = const_parse("rat:1/2")
    assert embed_linear(1, half).n_perp == 1
    assert embed_linear(1, const_parse("rat:-1/2")).n_perp == -1
    assert embed_linear(3, half).n_perp == 2  # 1.5 -> 2
    with pytest.raises(ValueError):
        embed_linear(0, half)


def test_embed_linear_decay_at_most_half():
    rng = random.Random(3)
    for spec in ("e", "pi", "quad:1,0,-2,+", "rat:22/7"):
        theta = const_parse(spec)
        for _ in range(10):
            n = rng.randint(1, 500) * rng.choice((1, -1))
            la = embed_linear(n, theta)
            iv = eval_interval(la.poly(), theta, 48)
            assert iv.abs().lo <= Fraction(1, 2)


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(200):
        f, g, h = (rand_poly(rng) for _ in range(3))
        assert f.add(g) == g.add(f)
        assert cauchy_mul(f, g) == cauchy_mul(g, f)
        assert f.add(g.add(h)) == f.add(g).add(h)
        assert cauchy_mul(f, cauchy_mul(g, h)) == cauchy_mul(cauchy_mul(f, g), h)
        assert cauchy_mul(f, g.add(h)) == cauchy_mul(f, g).add(cauchy_mul(f, h))
        assert f.sub(f).is_zero


def test_height_subadditive_and_degree_multiplicative():
    rng = random.Random(12)
    for _ in range(300):
        f = rand_poly(rng, nonzero=True)
        g = rand_poly(rng, nonzero=True)
        s = f.add(g)
        if not s.is_zero:
            assert height(s) <= height(f) + height(g)
        p = cauchy_mul(f, g)
        assert p.degree == f.degree + g.degree


def test_divides():
    assert divides(poly_parse("-1,1"), poly_parse("-1,0,1"))
    assert not divides(poly_parse("-1,1"), poly_parse("1,0,1"))
    assert divides(poly_parse("-2,4"), poly_parse("1,-4,4"))  # (2X-1)^2 by (4X-2)


def test_reduce_mod_quadratic():
    u, v = reduce_mod_quadratic(poly_parse("-1,-1,1"), 1, -1, -1)
    assert (u, v) == (0, 0)
    # f = X^2 at phi: phi^2 = phi + 1
    u, v = reduce_mod_quadratic(poly_parse("0,0,1"), 1, -1, -1)
    assert (u, v) == (1, 1)
    # f = X^3 - 2X at sqrt2: = 2*sqrt2 - 2*sqrt2 = 0
    u, v = reduce_mod_quadratic(poly_parse("0,-2,0,1"), 1, 0, -2)
    assert (u, v) == (0, 0)
