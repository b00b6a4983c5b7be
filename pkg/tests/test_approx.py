import math
import random
from fractions import Fraction

import pytest

from resultantlab.bigreal import cf_convergents, const_parse
from resultantlab.polycore import IntPoly, height
from resultantlab.approx import (
    SeqClass,
    best_poly,
    brute_force_best,
    classify_mahler,
    exponent_table,
    frob_pow,
    frobenius_min_product_ratio,
    growth_decay_point,
    seq_cmp,
    seq_mul,
    spectra_grid,
    trop_add,
    trop_sub,
    verify_diamond,
    verify_product_law,
)

PHI = const_parse("quad:1,-1,-1,+")


def linear_witnesses(theta, n):
    return [(IntPoly.make((-p, q)), IntPoly.make((-p, q)))
            for p, q in cf_convergents(theta, n)]


def test_best_poly_rational_third():
    r = best_poly(const_parse("rat:1/3"), 1, 3)
    assert r.f.coeffs == (0, 1)  # tie-break winner X
    assert r.value.contains(Fraction(1, 3))
    assert r.ties == 2
    assert r.exact_zero_excluded  # 3X - 1 was excluded
    assert r.exponent.contains(1)


def test_best_poly_phi_convergent():
    r = best_poly(PHI, 1, 5)
    assert r.f.coeffs == (-5, 3)
    assert 0.1458 < float(r.value.mid()) < 0.146


def test_best_poly_sqrt2_zero_exclusion():
    r = best_poly(const_parse("quad:1,0,-2,+"), 2, 2)
    assert r.exact_zero_excluded
    assert not r.value.contains_zero()
    assert height(r.f) <= 2 and r.f.degree <= 2


def test_best_poly_validates_budgets():
    with pytest.raises(ValueError):
        best_poly(PHI, 0, 5)
    with pytest.raises(ValueError):
        best_poly(PHI, 1, 0)


def test_best_poly_oracle_equivalence_small():
    rng = random.Random(97)
    targets = [PHI, const_parse("quad:1,0,-2,+"), const_parse("e"),
               const_parse("rat:22/7")]
    for _ in range(10):
        theta = rng.choice(targets)
        d = rng.randint(1, 3)
        H = rng.randint(1, {1: 30, 2: 9, 3: 5}[d])
        acc = best_poly(theta, d, H)
        orc = brute_force_best(theta, d, H)
        if isinstance(orc, Fraction):
            assert acc.value.contains(orc)
        else:
            assert orc.lo <= acc.value.hi and acc.value.lo <= orc.hi


def test_exponent_table_phi():
    records, e_of_d = exponent_table(PHI, 1, [10, 100, 1000])
    assert len(records) == 3
    for r in records[1:]:
        assert 0.9 <= float(r.exponent.mid()) <= 1.1
    assert 1 in e_of_d


def test_exponent_table_rational_decay():
    records, _ = exponent_table(const_parse("rat:1/3"), 1, [10, 100, 1000])
    # minimal nonzero |f(1/3)| is exactly 1/3, so the exponent is
    # log 3 / log H, strictly decreasing along the schedule
    expos = [float(r.exponent.mid()) for r in records]
    assert expos == sorted(expos, reverse=True)
    assert abs(expos[-1] - math.log(3) / math.log(1000)) < 1e-9
    assert all(r.exact_zero_excluded for r in records)


def test_exponent_table_rejects_bad_schedule():
    with pytest.raises(ValueError):
        exponent_table(PHI, 1, [10, 10])


def test_classify_sqrt2_certified():
    rep = classify_mahler(const_parse("quad:1,0,-2,+"), 3, 100)
    assert rep.verdict == "A-certified"
    assert rep.witness.coeffs == (-2, 0, 1)


def test_classify_rational_certified():
    rep = classify_mahler(const_parse("rat:2/7"), 2, 100)
    assert rep.verdict == "A-certified"
    assert rep.witness.coeffs == (-2, 7)


def test_classify_phi_low_degree_is_s_like():
    rep = classify_mahler(PHI, 1, 1000)
    assert rep.verdict in ("S-suspected", "T-suspected")
    assert rep.d_frak is None
    assert rep.knobs["divergence"] == 2.5


def test_spectra_rational_column_saturates():
    grid = [(a / 4, b / 4) for a in range(1, 5) for b in range(1, 9)]
    rows = spectra_grid(const_parse("rat:1/3"), 1, grid, 1000)
    assert all(r["attainable"] for r in rows)


def test_spectra_phi_boundary_tracks_diagonal():
    grid = [(a / 4, b / 4) for a in range(1, 5) for b in range(1, 13)]
    rows = spectra_grid(PHI, 1, grid, 1000)
    att = {(r["a"], r["b"]): r["attainable"] for r in rows}
    for a4 in range(2, 5):
        a = a4 / 4
        reachable = [b for (aa, b), ok in att.items() if aa == a and ok]
        assert reachable, f"no attainable decay at growth {a}"
        # boundary near b = a: within one grid step below, never far above
        assert max(reachable) <= a + 0.25
        assert max(reachable) >= a - 0.5


def test_spectra_liouville_far_above_diagonal():
    grid = [(1.0, b / 4) for b in range(1, 13)]
    rows = spectra_grid(const_parse("liouville:10"), 1, grid, 1000)
    att = [r["b"] for r in rows if r["attainable"]]
    assert max(att) >= 1.25  # strictly above b = a = 1 (the tier q = 100
    # witness has |100 L - 11| ~ 1e-4 = 1000^(-4/3))


def test_spectra_rejects_nonpositive_grid():
    with pytest.raises(ValueError):
        spectra_grid(PHI, 1, [(0.0, 1.0)], 100)


def test_seqclass_validation():
    with pytest.raises(ValueError):
        SeqClass(())
    with pytest.raises(ValueError):
        SeqClass((1.0, -2.0))


def test_seq_cmp_decay_order():
    x = SeqClass.from_fn(lambda i: 1.0 / i, 200)
    y = SeqClass.from_fn(lambda i: 1.0 / i**2, 200)
    assert seq_cmp(y, x).order == "<"
    assert seq_cmp(x, y).order == ">"
    assert seq_cmp(x, x).order == "equivalent"


def test_seq_cmp_undecided_oscillation():
    x = SeqClass.from_fn(lambda i: 1.0 / i if i % 2 else i, 200)
    y = SeqClass.from_fn(lambda i: 1.0, 200)
    out = seq_cmp(x, y)
    assert out.order == "undecided"
    assert out.slope_lo < 0 < out.slope_hi


def test_trop_ops_pointwise():
    rng = random.Random(5)
    x = SeqClass(tuple(rng.uniform(0.01, 10) for _ in range(100)))
    y = SeqClass(tuple(rng.uniform(0.01, 10) for _ in range(100)))
    z = SeqClass(tuple(rng.uniform(0.01, 10) for _ in range(100)))
    assert trop_add(x, y).values == tuple(max(a, b) for a, b in zip(x.values, y.values))
    assert trop_sub(x, y).values == tuple(min(a, b) for a, b in zip(x.values, y.values))
    # max-distributivity of the product, exact pointwise
    lhs = seq_mul(x, trop_add(y, z))
    rhs = trop_add(seq_mul(x, y), seq_mul(x, z))
    assert lhs.values == rhs.values
    assert frob_pow(x, 2.0).values == tuple(v**2 for v in x.values)


def test_frobenius_min_product_law():
    rng = random.Random(6)
    for _ in range(20):
        x = SeqClass(tuple(rng.uniform(1e-9, 0.99) for _ in range(64)))
        y = SeqClass(tuple(rng.uniform(1e-9, 0.99) for _ in range(64)))
        assert all(1 <= r <= 2 for r in frobenius_min_product_ratio(x, y))
    # and min(x,y) equals x*y up to that bounded Frobenius power
    assert trop_sub(x, y).values == tuple(min(a, b) for a, b in zip(x.values, y.values))


def test_verify_diamond_phi_pair():
    f = IntPoly.make((-8, 5))
    rep = verify_diamond(f, f, PHI, PHI)
    assert rep.passed
    assert rep.ratio_hi < 1


def test_verify_diamond_exact_zero_side():
    rep = verify_diamond(IntPoly.make((-1, 3)), IntPoly.make((-8, 5)),
                         const_parse("rat:1/3"), PHI)
    assert rep.passed


def test_verify_diamond_liouville_convergents():
    theta = const_parse("liouville:10")
    wit = linear_witnesses(theta, 6)
    for f, g in wit[2:]:
        rep = verify_diamond(f, g, theta, theta)
        assert rep.passed


def test_product_law_liouville_passes():
    theta = const_parse("liouville:10")
    rep = verify_product_law(theta, theta, 1, 1, linear_witnesses(theta, 15))
    assert rep.status == "PASS"
    assert rep.exact_linear_ok


def test_product_law_phi_expected_negative():
    rep = verify_product_law(PHI, PHI, 1, 1, linear_witnesses(PHI, 15))
    assert rep.status == "EXPECTED-NEGATIVE"
    assert max(rep.exponents) <= 0.1
    assert rep.exact_linear_ok


def test_product_law_rational_exact():
    wit = [(IntPoly.make((-2, 3)), IntPoly.make((-5, 7)))]
    rep = verify_product_law(const_parse("rat:2/3"), const_parse("rat:5/7"), 1, 1, wit)
    assert rep.exact_linear_ok


def test_growth_decay_point_examples():
    g = growth_decay_point(IntPoly.make((-1, 1)), const_parse("rat:3/1"), 1)
    assert g.mu.contains(1) and g.nu.contains(2)

    g2 = growth_decay_point(IntPoly.make((-55, 34)), PHI, 1)
    assert g2.mu.contains(Fraction(1, 55))
    assert 0.0131 < float(g2.nu.mid()) < 0.0133

    g3 = growth_decay_point(IntPoly.make((-2, 0, 1)), const_parse("rat:0/1"), 2)
    assert 0.707 < float(g3.mu.mid()) < 0.7072
    assert 1.414 < float(g3.nu.mid()) < 1.4143


def test_growth_decay_point_rejects_zero():
    with pytest.raises(ValueError):
        growth_decay_point(IntPoly.make((-1, 1)), const_parse("rat:1/1"), 1)
