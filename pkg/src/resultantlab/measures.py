"""Certified complex root enclosures and the measure zoo: Mahler measure,
measures relative to a real point theta (max-distance and disk products),
disk roots, and the two-sided root-product estimate from |f(theta)|/height.

Root isolation: exact square-free decomposition over Z first, then
approximate roots (mpmath) are certified and shrunk with a complex interval
Krawczyk operator, so every box provably contains exactly one root of its
square-free factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .bigreal import DEFAULT_PREC_CAP, Interval, PrecisionExhausted, RealConstant
from .polycore import IntPoly, cauchy_mul, eval_interval, height, horner_interval
from .resultant import poly_div_exact, poly_gcd


# -- complex interval boxes (module-internal) ---------------------------


@dataclass(frozen=True)
class Box:
    re: Interval
    im: Interval

    @staticmethod
    def point_from(x, y) -> "Box":
        return Box(Interval(x, x), Interval(y, y))

    def add(self, o, prec):
        return Box(self.re.add(o.re, prec), self.im.add(o.im, prec))

    def sub(self, o, prec):
        return Box(self.re.sub(o.re, prec), self.im.sub(o.im, prec))

    def mul(self, o, prec):
        ac = self.re.mul(o.re, prec)
        bd = self.im.mul(o.im, prec)
        ad = self.re.mul(o.im, prec)
        bc = self.im.mul(o.re, prec)
        return Box(ac.sub(bd, prec), ad.add(bc, prec))

    def div(self, o, prec):
        den = o.re.pow_int(2, prec).add(o.im.pow_int(2, prec), prec)
        conj = Box(o.re, o.im.neg())
        num = self.mul(conj, prec)
        return Box(num.re.div(den, prec), num.im.div(den, prec))

    def mid(self, prec=64) -> "Box":
        return Box.point_from(self.re.mid(prec), self.im.mid(prec))

    def diam(self):
        return max(self.re.width(64), self.im.width(64))

    def strictly_inside(self, other: "Box") -> bool:
        return (other.re.lo < self.re.lo and self.re.hi < other.re.hi
                and other.im.lo < self.im.lo and self.im.hi < other.im.hi)

    def intersect(self, other: "Box") -> "Box":
        return Box(self.re.intersect(other.re), self.im.intersect(other.im))

    def abs_interval(self, prec) -> Interval:
        s = self.re.abs().pow_int(2, prec).add(self.im.abs().pow_int(2, prec), prec)
        return s.sqrt(prec)

    def dist_to(self, x: Interval, prec) -> Interval:
        d = self.re.sub(x, prec)
        s = d.abs().pow_int(2, prec).add(self.im.abs().pow_int(2, prec), prec)
        return s.sqrt(prec)


def _horner_box(f: IntPoly, z: Box, prec) -> Box:
    acc = Box.point_from(Interval.point(0).lo, Interval.point(0).lo)
    for a in reversed(f.coeffs):
        acc = acc.mul(z, prec)
        acc = Box(acc.re.add(Interval.from_exact(a, prec), prec), acc.im)
    return acc


# -- square-free decomposition ------------------------------------------


def squarefree_decomposition(f: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """f = c * prod factor_i^mult_i with primitive square-free factors of
    positive leading coefficient (Yun's algorithm over the rationals)."""
    if f.is_zero:
        raise ValueError("square-free decomposition of zero")
    if f.degree < 1:
        return f.coeffs[0], []
    parts = []
    g = poly_gcd(f, f.derivative())
    w = poly_div_exact(f, g)
    y = poly_div_exact(f.derivative(), g)
    z = y.sub(w.derivative())
    i = 1
    while w.degree > 0:
        gi = poly_gcd(w, z)
        if gi.degree > 0:
            parts.append((gi, i))
        w = poly_div_exact(w, gi)
        y = poly_div_exact(z, gi)
        z = y.sub(w.derivative())
        i += 1
    prod = IntPoly.const(1)
    for p, k in parts:
        for _ in range(k):
            prod = cauchy_mul(prod, p)
    c = poly_div_exact(f, prod)
    assert c.degree == 0
    return c.coeffs[0], parts


# -- certified root enclosures ------------------------------------------


@dataclass(frozen=True)
class RootEnclosure:
    box: Box
    multiplicity: int


@dataclass(frozen=True)
class RootSet:
    """Disjoint certified boxes covering all complex roots; counts with
    multiplicity sum to the degree."""

    f: IntPoly
    roots: tuple[RootEnclosure, ...]

    def __iter__(self):
        return iter(self.roots)

    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)


def _krawczyk_step(g: IntPoly, dg: IntPoly, b: Box, y: Box, prec) -> Box:
    m = b.mid(prec)
    fm = _horner_box(g, m, prec)
    dfb = _horner_box(dg, b, prec)
    one = Box.point_from(Interval.point(1).lo, Interval.point(0).lo)
    corr = one.sub(y.mul(dfb, prec), prec).mul(b.sub(m, prec), prec)
    return m.sub(y.mul(fm, prec), prec).add(corr, prec)


def _sym_interval(radius: Fraction, prec) -> Interval:
    half = Interval.from_exact(radius, prec)
    return Interval(half.neg().lo, half.hi)


def _midpoint_inverse(dg: IntPoly, b: Box, prec) -> Box | None:
    """Krawczyk preconditioner: inverse of dg at the box midpoint."""
    dfm = _horner_box(dg, b.mid(prec), prec)
    pt = Box(Interval(dfm.re.mid(prec), dfm.re.mid(prec)),
             Interval(dfm.im.mid(prec), dfm.im.mid(prec)))
    if pt.re.contains_zero() and pt.im.contains_zero():
        return None
    one = Box.point_from(Interval.point(1).lo, Interval.point(0).lo)
    return one.div(pt, prec)


def _certify_root(g: IntPoly, dg: IntPoly, zre, zim, radius, prec) -> Box | None:
    """Try to certify exactly one root of g in a box around (zre, zim)."""
    sym = _sym_interval(Fraction(radius), prec)
    b = Box(Interval.from_exact(Fraction(zre), prec).add(sym, prec),
            Interval.from_exact(Fraction(zim), prec).add(sym, prec))
    y = _midpoint_inverse(dg, b, prec)
    if y is None:
        return None
    k = _krawczyk_step(g, dg, b, y, prec)
    if k.strictly_inside(b):
        return k.intersect(b)
    return None


def _shrink_root(g: IntPoly, dg: IntPoly, b: Box, P: int, prec: int,
                 cap: int) -> Box:
    target = 2.0 ** (-P)
    while b.diam() > target:
        y = _midpoint_inverse(dg, b, prec)
        if y is None:
            prec *= 2
            if prec > cap:
                raise PrecisionExhausted("root box refinement stalled")
            continue
        k = _krawczyk_step(g, dg, b, y, prec)
        try:
            nb = k.intersect(b)
        except ValueError:
            nb = b
        if nb.diam() >= b.diam() * 0.9:
            prec *= 2
            if prec > cap:
                raise PrecisionExhausted("root box refinement stalled")
        b = nb
    return b


def roots_certified(f: IntPoly, P: int, cap: int = DEFAULT_PREC_CAP) -> RootSet:
    """Certified enclosures of all complex roots with multiplicity; each box
    has diameter <= 2^-P and contains exactly one root of its square-free
    factor."""
    if f.degree < 1:
        raise ValueError("root isolation needs degree >= 1")
    _, parts = squarefree_decomposition(f)
    out = []
    for g, mult in parts:
        out.extend(RootEnclosure(b, mult) for b in _isolate_squarefree(g, P, cap))
    rs = RootSet(f, tuple(out))
    assert rs.total_multiplicity() == f.degree
    return rs


def _isolate_squarefree(g: IntPoly, P: int, cap: int) -> list[Box]:
    if g.degree < 1:
        return []
    dg = g.derivative()
    dps = 40
    while True:
        boxes = _attempt_isolation(g, dg, P, dps, cap)
        if boxes is not None:
            return boxes
        dps *= 2
        if dps * 4 > cap:
            raise PrecisionExhausted(f"cannot isolate roots of {g}")


def _attempt_isolation(g, dg, P, dps, cap):
    with mpmath.workdps(dps):
        try:
            approx = mpmath.polyroots([mpmath.mpf(c) for c in reversed(g.coeffs)],
                                      maxsteps=300, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            return None
        approx = [mpmath.mpc(z) for z in approx]
        prec = max(96, int(dps * 3.33) + 32)
        boxes = []
        for i, z in enumerate(approx):
            sep = min((abs(z - w) for j, w in enumerate(approx) if j != i),
                      default=mpmath.mpf(1))
            floor_r = float(mpmath.mpf(10) ** (-dps // 2))
            b = None
            radius = float(sep / 8) or floor_r
            while b is None and radius >= floor_r:
                b = _certify_root(g, dg, float(z.real), float(z.imag), radius, prec)
                radius /= 16
            if b is None:
                b = _certify_root(g, dg, float(z.real), float(z.imag), floor_r, prec)
            if b is None:
                return None
            boxes.append(b)
    if not _pairwise_disjoint(boxes):
        return None
    return [_shrink_root(g, dg, b, P, prec, cap) for b in boxes]


def _pairwise_disjoint(boxes) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            if not (a.re.hi < b.re.lo or b.re.hi < a.re.lo
                    or a.im.hi < b.im.lo or b.im.hi < a.im.lo):
                return False
    return True


# -- measures ------------------------------------------------------------


def mahler_measure(f: IntPoly, P: int, cap: int = DEFAULT_PREC_CAP) -> Interval:
    """|lead(f)| * prod max(1, |root|), certified to width <= 2^-P."""
    if f.is_zero:
        raise ValueError("Mahler measure of zero")
    if f.degree < 1:
        return Interval.point(abs(f.coeffs[0]))
    target = 2.0 ** (-P)
    piso = P + 8
    while True:
        prec = piso + 32
        rs = roots_certified(f, piso, cap)
        out = Interval.point(abs(f.lead))
        for r in rs:
            out = out.mul(r.box.abs_interval(prec).max1().pow_int(r.multiplicity, prec), prec)
        if out.width(64) <= target:
            return out
        piso *= 2
        if piso > cap:
            raise PrecisionExhausted("Mahler measure width stalled")


@dataclass(frozen=True)
class MeasureReport:
    """Certified measures of f relative to a real point theta."""

    f: IntPoly
    theta_spec: str
    height: int
    mahler: Interval
    theta_mahler: Interval
    disk_measure: Interval          # |f(theta)| / theta_mahler (lead-free)
    zeta_rho: Interval              # lead-free product over roots within rho
    abs_value: Interval             # |f(theta)|
    disk_root_indexes: tuple[int, ...]
    root_set: RootSet
    rho: Fraction
    rho_boundary_flag: bool
    precision: int


def theta_measures(f: IntPoly, theta: RealConstant, rho: Fraction = Fraction(1),
                   P: int = 64, cap: int = DEFAULT_PREC_CAP) -> MeasureReport:
    """All theta-relative measures; |f(theta)| is contained in the interval
    product theta_mahler * disk_measure by construction (checked)."""
    if f.is_zero:
        raise ValueError("measures of the zero polynomial")
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")
    piso = P + 8
    while True:
        rep = _theta_measures_once(f, theta, rho, P, piso, cap)
        if rep is not None:
            return rep
        piso *= 2
        if piso > cap:
            raise PrecisionExhausted("theta measures width stalled")


def _theta_measures_once(f, theta, rho, P, piso, cap):
    prec = piso + 32
    target = 2.0 ** (-P)
    h = height(f)
    fval = eval_interval(f, theta, piso, cap).abs()
    if f.degree < 1:
        pt = Interval.point(abs(f.coeffs[0]))
        one = fval.div(pt, prec)
        return MeasureReport(f, theta.spec, h, pt, pt, one, one, fval,
                             (), RootSet(f, ()), rho, False, piso)
    tiv = theta.enclose(piso, cap)
    rs = roots_certified(f, piso, cap)
    mah = Interval.point(abs(f.lead))
    mtheta = Interval.point(abs(f.lead))
    disk_idx = []
    rho_included = []
    rho_straddle = []
    for i, r in enumerate(rs):
        dist = r.box.dist_to(tiv, prec)
        mah = mah.mul(r.box.abs_interval(prec).max1().pow_int(r.multiplicity, prec), prec)
        mtheta = mtheta.mul(dist.max1().pow_int(r.multiplicity, prec), prec)
        if dist.hi < 1:
            disk_idx.append(i)
        if dist.hi < rho:
            rho_included.append((dist, r.multiplicity))
        elif dist.lo < rho:  # straddles the rho boundary
            rho_straddle.append((dist, r.multiplicity))
    if mah.width(64) > target or mtheta.width(64) > target:
        return None
    zeta = fval.div(mtheta, prec)
    assert mtheta.mul(zeta, prec).contains_interval(fval)
    if rho == 1:
        zrho = zeta
        flag = False
    else:
        base = Interval.point(1)
        for dist, mult in rho_included:
            base = base.mul(dist.pow_int(mult, prec), prec)
        zrho = base
        for dist, mult in rho_straddle:
            # hull of the include / exclude cases, reported with a flag
            zrho = Interval.hull(zrho, zrho.mul(dist.pow_int(mult, prec), prec))
        flag = bool(rho_straddle)
    return MeasureReport(f, theta.spec, h, mah, mtheta, zeta, zrho, fval,
                         tuple(disk_idx), rs, rho, flag, piso)


def wirsing_bounds(f: IntPoly, theta: RealConstant, rho: Fraction = Fraction(1),
                   P: int = 64, cap: int = DEFAULT_PREC_CAP) -> tuple[Interval, Interval]:
    """Two-sided estimate for the degree-normalized disk product
    (zeta^rho)^(1/d) in terms of (|f(theta)|/height)^(1/d):

      lower = 2^-(d+1)/d * (d+1)^-(1/2d) * max(1,|theta|)^-1 * (|f(t)|/h)^(1/d)
      upper = 2^+(d+1)/d * C(d, floor(d/2))^(1/d) / rho * max(1,|theta|) * (|f(t)|/h)^(1/d)

    Requires f(theta) certified nonzero.
    """
    d = f.degree
    if d < 1:
        raise ValueError("degree must be >= 1")
    prec = P + 32
    fval = _certified_nonzero_value(f, theta, P, cap)
    h = Interval.point(height(f))
    tabs = theta.enclose(P, cap).abs().max1()
    core = fval.div(h, prec).rootn(d, prec)
    two_pow = Interval.from_exact(2 ** (d + 1), prec).rootn(d, prec)
    dp1_root = Interval.from_exact(d + 1, prec).rootn(2 * d, prec)
    binom = Interval.from_exact(math.comb(d, d // 2), prec).rootn(d, prec)
    lower = core.div(two_pow, prec).div(dp1_root, prec).div(tabs, prec)
    upper = core.mul(two_pow, prec).mul(binom, prec).mul(tabs, prec) \
                .div(Interval.from_exact(rho, prec), prec)
    return lower, upper


def _certified_nonzero_value(f, theta, P, cap) -> Interval:
    p = P
    while True:
        iv = eval_interval(f, theta, p, cap).abs()
        if iv.lo > 0:
            return iv
        fr = theta.exact_fraction()
        if fr is not None and f.eval_fraction(fr) == 0:
            raise ValueError("f(theta) is exactly zero")
        p *= 2
        if p > cap:
            raise PrecisionExhausted("cannot certify f(theta) nonzero")


@dataclass(frozen=True)
class DecayFactorization:
    value_normalized: Interval      # |f(theta)|^(1/d)
    mahler_factor: Interval         # theta-Mahler^(1/d)
    disk_factor: Interval           # disk product^(1/d)
    contained: bool


def decay_factorization_check(f: IntPoly, theta: RealConstant, d: int,
                              P: int = 64, cap: int = DEFAULT_PREC_CAP) -> DecayFactorization:
    """Check |f(theta)|^(1/d) lies in the product of the degree-normalized
    theta-Mahler measure and disk product."""
    if d < max(1, f.degree):
        raise ValueError("normalization degree below deg f")
    rep = theta_measures(f, theta, Fraction(1), P, cap)
    prec = P + 32
    lhs = rep.abs_value.rootn(d, prec)
    m_d = rep.theta_mahler.rootn(d, prec)
    z_d = rep.disk_measure.rootn(d, prec)
    # rounding-monotonicity: rooting the wider product encloses rooting fval
    prod = rep.theta_mahler.mul(rep.disk_measure, prec).rootn(d, prec)
    return DecayFactorization(lhs, m_d, z_d, prod.contains_interval(lhs))
