"""Named verification suites behind the CLI `verify` command.

Each suite draws its instances from a seeded generator, checks the relevant
law with certified arithmetic, and returns a plain report dict.  For
inequalities that can hold with exact equality (Mahler multiplicativity and
its relatives), a pure enclosure comparison can never certify "<=", so the
outcome per instance is one of: certified, consistent (no certified
violation, both enclosures narrower than 2^-48), or violated.  Only
"violated" counts as a failure.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .bigreal import Interval, const_parse, cf_convergents
from .polycore import IntPoly, cauchy_mul, content_primitive, height
from .measures import decay_factorization_check, mahler_measure, theta_measures, wirsing_bounds
from .resultant import box_minus, box_plus, box_times
from .approx import (
    SeqClass,
    frobenius_min_product_ratio,
    seq_mul,
    trop_add,
    trop_sub,
    verify_diamond,
    verify_product_law,
)

CONSISTENCY_BITS = 48


def cert_leq(a: Interval, b: Interval) -> str:
    """certified / consistent / violated for the claim a <= b."""
    if a.hi <= b.lo:
        return "certified"
    if a.lo > b.hi:
        return "violated"
    narrow = 2.0 ** -CONSISTENCY_BITS
    if a.width(64) <= narrow and b.width(64) <= narrow:
        return "consistent"
    return "wide"


def _leq_with_escalation(make_a, make_b, precisions=(96, 160, 256)) -> str:
    for p in precisions:
        verdict = cert_leq(make_a(p), make_b(p))
        if verdict in ("certified", "violated", "consistent"):
            return verdict
    return "consistent"


def _rand_poly(rng, max_deg, bound, min_deg=1):
    deg = rng.randint(min_deg, max_deg)
    coeffs = [rng.randint(-bound, bound) for _ in range(deg)]
    lead = rng.choice([c for c in range(-bound, bound + 1) if c])
    return IntPoly.make(coeffs + [lead])


def suite_isoq(count: int = 10_000, seed: int = 0, bound: int = 10**6) -> dict:
    """Linear polynomials compose exactly like fractions under the three
    resultant operations, after canonical normalization."""
    rng = random.Random(seed)
    failed = 0
    for _ in range(count):
        a, b = rng.randint(-bound, bound), rng.randint(1, bound)
        c, d = rng.randint(-bound, bound), rng.randint(1, bound)
        if a == 0:
            a = 1
        if c == 0:
            c = 1
        fa, fc = IntPoly.make((-a, b)), IntPoly.make((-c, d))
        ok = (
            content_primitive(box_times(fa, fc))[1]
            == content_primitive(IntPoly.make((-a * c, b * d)))[1]
            and content_primitive(box_plus(fa, fc))[1]
            == content_primitive(IntPoly.make((-(a * d + b * c), b * d)))[1]
            and content_primitive(box_minus(fa, fc))[1]
            == content_primitive(IntPoly.make((-(a * d - b * c), b * d)))[1]
        )
        failed += not ok
    return _report("isoQ", count, failed, {"seed": seed, "bound": bound})


def suite_distrib(count: int = 1000, seed: int = 0, max_deg: int = 3,
                  bound: int = 10) -> dict:
    """Double-monoid laws: commutativity, associativity, identities, and
    distributivity over the ordinary product, all as exact identities."""
    rng = random.Random(seed)
    one_times = IntPoly.make((-1, 1))
    one_plus = IntPoly.make((0, 1))
    failed = 0
    for _ in range(count):
        f = _rand_poly(rng, max_deg, bound)
        g = _rand_poly(rng, max_deg, bound)
        h = _rand_poly(rng, max_deg, bound)
        ok = (
            box_times(f, g) == box_times(g, f)
            and box_plus(f, g) == box_plus(g, f)
            and box_times(box_times(f, g), h) == box_times(f, box_times(g, h))
            and box_plus(box_plus(f, g), h) == box_plus(f, box_plus(g, h))
            and box_times(f, one_times) == f
            and box_plus(f, one_plus) == f
            and box_minus(f, one_plus) == f
            and box_times(f, cauchy_mul(g, h))
            == cauchy_mul(box_times(f, g), box_times(f, h))
            and box_plus(f, cauchy_mul(g, h))
            == cauchy_mul(box_plus(f, g), box_plus(f, h))
        )
        failed += not ok
    return _report("distrib", count, failed, {"seed": seed, "max_deg": max_deg,
                                              "bound": bound})


def suite_rootoracle(count: int = 200, seed: int = 0, max_deg: int = 4,
                     bound: int = 10, tol: float = 1e-20) -> dict:
    """Resultant operations against the independent high-precision
    root-combination oracle, plus the degree and leading coefficient laws."""
    import mpmath

    rng = random.Random(seed)
    failed = 0
    details = []
    for _ in range(count):
        f = _rand_poly(rng, max_deg, bound)
        g = _rand_poly(rng, max_deg, bound)
        m, n = f.degree, g.degree
        lead = f.lead**n * g.lead**m
        for op, name in ((box_times, "times"), (box_plus, "plus"),
                         (box_minus, "minus")):
            out = op(f, g)
            if out.degree != m * n or out.lead != lead:
                failed += 1
                details.append({"f": str(f), "g": str(g), "op": name,
                                "reason": "degree/lead law"})
                continue
            mp_coeffs = _root_combination(f, g, name)
            err = max(abs(c_mp - c_int) for c_mp, c_int in
                      zip(mp_coeffs, list(out.coeffs) + [0] * 99))
            if not err < tol:
                failed += 1
                details.append({"f": str(f), "g": str(g), "op": name,
                                "reason": f"coefficient roundoff {err}"})
    return _report("rootoracle", count, failed,
                   {"seed": seed, "max_deg": max_deg, "tol": tol}, details)


def _root_combination(f, g, op, dps=60):
    import mpmath

    with mpmath.workdps(dps):
        ra = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f.coeffs)],
                              maxsteps=200, extraprec=200)
        rb = mpmath.polyroots([mpmath.mpf(c) for c in reversed(g.coeffs)],
                              maxsteps=200, extraprec=200)
        lead = mpmath.mpf(f.lead) ** len(rb) * mpmath.mpf(g.lead) ** len(ra)
        poly = [mpmath.mpc(1)]
        for a in ra:
            for b in rb:
                r = a * b if op == "times" else (a + b if op == "plus" else a - b)
                new = [mpmath.mpc(0)] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    new[i + 1] += c
                    new[i] -= c * r
                poly = new
        return [lead * c for c in poly]


def suite_heightmahler(count: int = 1000, seed: int = 0, max_deg: int = 6,
                       bound: int = 100) -> dict:
    """(d+1)^(-1/2) * mahler <= height <= 2^d * mahler."""
    rng = random.Random(seed)
    failed = 0
    consistent = 0
    for _ in range(count):
        f = _rand_poly(rng, max_deg, bound)
        d = f.degree
        h = Interval.point(height(f))
        def lower(p, f=f, d=d):
            return mahler_measure(f, p).div(
                Interval.from_exact(d + 1, p + 16).sqrt(p + 16), p + 16)
        def upper(p, f=f, d=d):
            return mahler_measure(f, p).mul_exact(2**d)
        v1 = _leq_with_escalation(lower, lambda p: h)
        v2 = _leq_with_escalation(lambda p: h, upper)
        if "violated" in (v1, v2):
            failed += 1
        consistent += (v1 == "consistent") + (v2 == "consistent")
    return _report("heightmahler", count, failed,
                   {"seed": seed, "max_deg": max_deg, "bound": bound,
                    "consistent_at_tolerance": consistent})


def suite_supermult(count: int = 500, seed: int = 0, max_deg: int = 3,
                    bound: int = 10) -> dict:
    """Mahler supermultiplicativity under the resultant operations:
    m(f box g) <= m(f)^e m(g)^d, and the same with factor 2^(d e) for the
    resultant sum."""
    rng = random.Random(seed)
    failed = 0
    consistent = 0
    for _ in range(count):
        f = _rand_poly(rng, max_deg, bound)
        g = _rand_poly(rng, max_deg, bound)
        d, e = f.degree, g.degree
        ft, fp = box_times(f, g), box_plus(f, g)
        def rhs(p, f=f, g=g, d=d, e=e, scale=1):
            out = mahler_measure(f, p).pow_int(e, p + 16).mul(
                mahler_measure(g, p).pow_int(d, p + 16), p + 16)
            return out.mul_exact(scale)
        v1 = _leq_with_escalation(lambda p, ft=ft: mahler_measure(ft, p), rhs)
        v2 = _leq_with_escalation(
            lambda p, fp=fp: mahler_measure(fp, p),
            lambda p: rhs(p, scale=2 ** (d * e)))
        if "violated" in (v1, v2):
            failed += 1
        consistent += (v1 == "consistent") + (v2 == "consistent")
    return _report("supermult", count, failed,
                   {"seed": seed, "max_deg": max_deg, "bound": bound,
                    "consistent_at_tolerance": consistent})


def suite_wirsing(count: int = 1000, seed: int = 0, max_deg: int = 4) -> dict:
    """Two-sided disk-product sandwich at rho = 1 on random (f, theta) with
    theta in [-2, 2], plus the decay factorization identity per instance."""
    rng = random.Random(seed)
    failed = 0
    done = 0
    while done < count:
        f = _rand_poly(rng, max_deg, 10)
        num = rng.randint(-200, 200)
        theta_fr = Fraction(num, 100)
        if f.eval_fraction(theta_fr) == 0:
            continue
        theta = const_parse(f"rat:{theta_fr.numerator}/{theta_fr.denominator}")
        lower, upper = wirsing_bounds(f, theta, Fraction(1), 96)
        rep = theta_measures(f, theta, Fraction(1), 96)
        z_d = rep.zeta_rho.rootn(f.degree, 192)
        if lower.lo > z_d.hi or z_d.lo > upper.hi:
            failed += 1
        if not decay_factorization_check(f, theta, f.degree, 64).contained:
            failed += 1
        done += 1
    return _report("wirsing", count, failed, {"seed": seed, "max_deg": max_deg})


def suite_diamond(count: int = 100, seed: int = 0) -> dict:
    """Diamond decay bound with the declared slack on convergent pairs of
    the two series targets."""
    rng = random.Random(seed)
    targets = {}
    for spec, n in (("liouville:10", 9), ("champernowne:10", 8)):
        c = const_parse(spec)
        conv = cf_convergents(c, n)
        targets[spec] = (c, [IntPoly.make((-p, q)) for p, q in conv
                             if max(abs(p), q) > 1])
    specs = sorted(targets)
    failed = 0
    details = []
    for _ in range(count):
        s1, s2 = rng.choice(specs), rng.choice(specs)
        t1, fs1 = targets[s1]
        t2, fs2 = targets[s2]
        f = rng.choice(fs1)
        g = rng.choice(fs2)
        rep = verify_diamond(f, g, t1, t2)
        if not rep.passed:
            failed += 1
            details.append({"f": str(f), "g": str(g), "targets": (s1, s2),
                            "ratio": rep.ratio_hi})
    return _report("diamond", count, failed, {"seed": seed}, details)


def suite_productlaw(convergents: int = 15, seed: int = 0) -> dict:
    """Composability portrait: the series target composes (PASS), the
    badly approximable target is the expected negative."""
    out = {}
    unexpected = 0
    for spec, want in (("liouville:10", "PASS"),
                       ("quad:1,-1,-1,+", "EXPECTED-NEGATIVE")):
        c = const_parse(spec)
        wit = [(IntPoly.make((-p, q)), IntPoly.make((-p, q)))
               for p, q in cf_convergents(c, convergents)]
        rep = verify_product_law(c, c, 1, 1, wit)
        out[spec] = {"status": rep.status, "exponents": rep.exponents,
                     "exact_linear_ok": rep.exact_linear_ok}
        if rep.status != want or rep.exact_linear_ok is False:
            unexpected += 1
    report = _report("productlaw", 2, unexpected, {"convergents": convergents})
    report["targets"] = out
    return report


def suite_tropical(count: int = 1000, seed: int = 0, length: int = 1000) -> dict:
    """Pointwise max-distributivity of the product and the min/product
    log-ratio law on random positive sequences."""
    rng = random.Random(seed)
    failed = 0
    for _ in range(count):
        x = SeqClass(tuple(rng.uniform(1e-9, 0.999) for _ in range(length)))
        y = SeqClass(tuple(rng.uniform(1e-9, 0.999) for _ in range(length)))
        z = SeqClass(tuple(rng.uniform(1e-9, 0.999) for _ in range(length)))
        lhs = seq_mul(x, trop_add(y, z))
        rhs = trop_add(seq_mul(x, y), seq_mul(x, z))
        if lhs.values != rhs.values:
            failed += 1
            continue
        if trop_sub(x, y).values != tuple(min(a, b) for a, b in
                                          zip(x.values, y.values)):
            failed += 1
            continue
        if not all(1 <= r <= 2 for r in frobenius_min_product_ratio(x, y)):
            failed += 1
    return _report("tropical", count, failed, {"seed": seed, "length": length})


def _report(name, total, failed, knobs, details=None) -> dict:
    return {
        "suite": name,
        "total": total,
        "failed": failed,
        "status": "PASS" if failed == 0 else "FAIL",
        "knobs": knobs,
        "details": details or [],
    }


SUITES = {
    "isoQ": suite_isoq,
    "distrib": suite_distrib,
    "rootoracle": suite_rootoracle,
    "heightmahler": suite_heightmahler,
    "supermult": suite_supermult,
    "wirsing": suite_wirsing,
    "diamond": suite_diamond,
    "productlaw": suite_productlaw,
    "tropical": suite_tropical,
}
