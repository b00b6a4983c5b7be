"""Best approximating polynomials under degree/height budgets, exponent
tables, class/type diagnostics, empirical spectra, a finite-stage tropical
sequence calculus, and the growth-decay inequality verifiers.

The search enumerates canonical coefficient tails (highest nonzero entry
positive) and, for each tail, only the few constant terms nearest to the
rounding optimum; this is exhaustive-equivalent because |f(theta)| is
minimized over the constant term at a nearest integer.  All comparisons are
certified: exact arithmetic for rational and quadratic targets, escalating
dyadic enclosures otherwise.  The tail enumeration is chunk-friendly: the
running-minimum merge is associative and deterministic, so chunks may be
evaluated in any order without changing the result.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .bigreal import (
    DEFAULT_PREC_CAP,
    Interval,
    PrecisionExhausted,
    RealConstant,
    ceil_shift,
    floor_shift,
)
from .polycore import (
    IntPoly,
    eval_interval,
    height,
    nearest_int_fraction,
    reduce_mod_quadratic,
)
from .resultant import box_times


@dataclass(frozen=True)
class ApproxRecord:
    """One row of the best-polynomial search."""

    theta_spec: str
    d: int
    H: int
    f: IntPoly
    value: Interval               # |f(theta)|, certified nonzero
    exponent: Interval | None     # log|f(theta)| / log H^-d; None at H = 1
    ties: int
    exact_zero_excluded: bool

    def as_row(self):
        lo, hi = self.value.as_decimal_pair()
        elo, ehi = self.exponent.as_decimal_pair() if self.exponent else ("", "")
        return {
            "theta_spec": self.theta_spec, "d": self.d, "H": self.H,
            "coeffs": list(self.f.coeffs), "abs_value_lo": lo,
            "abs_value_hi": hi, "exponent_lo": elo, "exponent_hi": ehi,
            "ties": self.ties, "zero_excluded": self.exact_zero_excluded,
        }


def _canonical_tails(d: int, H: int):
    """Tails (a_1..a_d) whose highest nonzero entry is positive, plus the
    all-zero tail; deterministic order."""
    for tail in itertools.product(range(-H, H + 1), repeat=d):
        for a in reversed(tail):
            if a > 0:
                yield tail
                break
            if a < 0:
                break
        else:
            yield tail


def _candidate_ks(k0: int, H: int):
    ks = []
    for k in (k0 - 1, k0, k0 + 1):
        k = min(H, max(-H, k))
        if k not in ks:
            ks.append(k)
    return ks


class _ExactScan:
    """Search core for rational targets: values are exact Fractions."""

    def __init__(self, theta: Fraction, d: int):
        self.powers = [theta**i for i in range(d + 1)]

    def survey(self, tail, H):
        s = sum(a * p for a, p in zip(tail, self.powers[1:]))
        out = []
        zero_hit = False
        trivial = not any(tail)
        for k in _candidate_ks(nearest_int_fraction(-s), H):
            v = s + k
            if v == 0:
                # the zero polynomial is not a candidate at all; a nonzero
                # polynomial vanishing at theta is recorded as excluded
                zero_hit = zero_hit or not (trivial and k == 0)
                continue
            out.append((abs(v), k))
        return out, zero_hit

    @staticmethod
    def lo(value):
        return value

    @staticmethod
    def hi(value):
        return value


class _DyadicScan:
    """Search core on integer bounds: theta^i in [L_i, U_i] / 2^T."""

    def __init__(self, theta: RealConstant, d: int, T: int, cap: int):
        iv = theta.enclose(T, cap)
        self.T = T
        self.scale = 1 << T
        self.bounds = [(self.scale, self.scale)]
        for i in range(1, d + 1):
            p = iv.pow_int(i, T + 16)
            self.bounds.append((floor_shift(p.lo, T), ceil_shift(p.hi, T)))

    def _sum_bounds(self, tail):
        slo = shi = 0
        for a, (lo, hi) in zip(tail, self.bounds[1:]):
            if a >= 0:
                slo += a * lo
                shi += a * hi
            else:
                slo += a * hi
                shi += a * lo
        return slo, shi

    def value_bounds(self, tail, k):
        slo, shi = self._sum_bounds(tail)
        vlo = slo + k * self.scale
        vhi = shi + k * self.scale
        if vlo > 0:
            return vlo, vhi
        if vhi < 0:
            return -vhi, -vlo
        return 0, max(-vlo, vhi)

    def survey(self, tail, H):
        slo, shi = self._sum_bounds(tail)
        mid = -((slo + shi) >> 1)
        k0 = (mid + (self.scale >> 1)) // self.scale
        out = []
        trivial = not any(tail)
        for k in _candidate_ks(k0, H):
            if trivial and k == 0:
                continue  # the zero polynomial is not a candidate
            vlo = slo + k * self.scale
            vhi = shi + k * self.scale
            if vlo > 0:
                out.append(((vlo, vhi), k))
            elif vhi < 0:
                out.append(((-vhi, -vlo), k))
            else:
                out.append(((0, max(-vlo, vhi)), k))
        return out, False

    @staticmethod
    def lo(value):
        return value[0]

    @staticmethod
    def hi(value):
        return value[1]


def best_poly(theta: RealConstant, d: int, H: int,
              cap: int = DEFAULT_PREC_CAP, _prec_out: int = 96) -> ApproxRecord:
    """Exact minimizer of |f(theta)| over deg f <= d, height(f) <= H,
    f(theta) != 0.  Tie-breaking is deterministic: smallest height, then
    lexicographically smallest coefficient vector (the canonical
    representative has positive leading coefficient)."""
    if d < 1 or H < 1:
        raise ValueError("need d >= 1 and H >= 1")
    fr = theta.exact_fraction()
    scan = _ExactScan(fr, d) if fr is not None else _DyadicScan(theta, d, 128, cap)
    alive: list = []
    best_hi = None
    zero_excluded = False
    for tail in _canonical_tails(d, H):
        entries, zero_hit = scan.survey(tail, H)
        zero_excluded = zero_excluded or zero_hit
        for v, k in entries:
            lo = scan.lo(v)
            if best_hi is not None and lo > best_hi:
                continue
            alive.append((v, tail, k))
            # a candidate straddling zero may be an excluded exact zero, so
            # it cannot tighten the certified nonzero minimum
            if lo > 0:
                h = scan.hi(v)
                if best_hi is None or h < best_hi:
                    best_hi = h
        if len(alive) > 8192:
            alive = [e for e in alive if scan.lo(e[0]) <= best_hi]
    alive = [e for e in alive if scan.lo(e[0]) <= best_hi]
    winner, ties, zero_in_refine = _resolve(theta, d, alive, cap)
    zero_excluded = zero_excluded or zero_in_refine
    f = IntPoly.make((winner[2],) + winner[1])
    value = eval_interval(f, theta, _prec_out, cap).abs()
    while value.contains_zero():
        _prec_out *= 2
        if _prec_out > cap:
            raise PrecisionExhausted("winner value not certified nonzero")
        value = eval_interval(f, theta, _prec_out, cap).abs()
    expo = _exponent_interval(value, d, H, 96)
    return ApproxRecord(theta.spec, d, H, f, value, expo, ties, zero_excluded)


def _tiebreak_key(entry):
    _, tail, k = entry
    coeffs = (k,) + tail
    return (max(abs(x) for x in coeffs), coeffs)


def _resolve(theta, d, alive, cap):
    """Pick the winner among surviving candidates; returns
    ((value-key, tail, k), tie count, zero-candidate flag)."""
    if theta.exact_fraction() is not None:
        minv = min(e[0] for e in alive)
        tied = sorted((e for e in alive if e[0] == minv), key=_tiebreak_key)
        return tied[0], len(tied), False
    if theta.kind == "quadratic":
        return _resolve_quadratic(theta, alive, cap)
    return _resolve_series(theta, d, alive, cap)


def _resolve_quadratic(theta, alive, cap):
    a, b, c, _ = theta.params
    zero_found = False
    vals = []
    for _, tail, k in alive:
        f = IntPoly.make((k,) + tail)
        if f.is_zero:
            continue
        u, v = reduce_mod_quadratic(f, a, b, c)
        if u == 0 and v == 0:
            zero_found = True
            continue
        vals.append(((u, v), tail, k))
    if not vals:
        raise ValueError("no nonzero candidate")
    cmp_uv = _quadratic_abs_cmp(theta, cap)
    smallest = vals[0]
    for e in vals[1:]:
        if cmp_uv(e[0], smallest[0]) < 0:
            smallest = e
    tied = sorted((e for e in vals if cmp_uv(e[0], smallest[0]) == 0),
                  key=_tiebreak_key)
    return tied[0], len(tied), zero_found


def _quadratic_abs_cmp(theta, cap):
    a, b, c, _ = theta.params

    def square_form(uv):
        u, v = uv
        return (2 * u * v + u * u * Fraction(-b, a),
                v * v + u * u * Fraction(-c, a))

    def cmp_uv(x, y):
        ax, bx = square_form(x)
        ay, by = square_form(y)
        A, B = ax - ay, bx - by
        if A == 0:
            return (B > 0) - (B < 0)
        bound = -B / A
        P = 64
        while True:
            iv = theta.enclose(P, cap)
            if not iv.contains(bound):
                s = 1 if iv.lo > bound else -1
                return s if A > 0 else -s
            P *= 2
            if P > cap:
                raise PrecisionExhausted("quadratic comparison unresolved")

    return cmp_uv


def _resolve_series(theta, d, alive, cap):
    """Escalate enclosure precision until the minimum separates; residual
    overlaps at the cap are reported as ties, zero-straddling candidates
    are excluded conservatively."""
    T = 256
    zero_found = False
    while True:
        scan = _DyadicScan(theta, d, T, cap)
        refined = [(scan.value_bounds(tail, k), tail, k) for _, tail, k in alive]
        zeroish = [e for e in refined if e[0][0] == 0]
        nonzero = [e for e in refined if e[0][0] > 0]
        if zeroish and 2 * T <= cap:
            T *= 2
            continue
        zero_found = bool(zeroish)
        if not nonzero:
            raise PrecisionExhausted("all candidates zero-straddling at cap")
        best_hi = min(e[0][1] for e in nonzero)
        live = [e for e in nonzero if e[0][0] <= best_hi]
        if len(live) == 1 or 2 * T > cap:
            tied = sorted(live, key=_tiebreak_key)
            return tied[0], len(tied), zero_found
        T *= 2


def _exponent_interval(value: Interval, d: int, H: int, prec: int) -> Interval | None:
    if H == 1:
        return None
    denom = Interval.from_exact(H, prec).log(prec).mul_exact(-d)
    return value.log(prec).div(denom, prec)


def brute_force_best(theta: RealConstant, d: int, H: int,
                     cap: int = DEFAULT_PREC_CAP):
    """Independent oracle: enumerate EVERY coefficient vector and return the
    minimal nonzero |f(theta)| exactly (a Fraction for rational targets, a
    certified tight interval otherwise), without the rounding shortcut."""
    fr = theta.exact_fraction()
    if fr is not None:
        powers = [fr**i for i in range(d + 1)]
        minv = None
        for vec in itertools.product(range(-H, H + 1), repeat=d + 1):
            v = abs(sum(a * p for a, p in zip(vec, powers)))
            if v != 0 and (minv is None or v < minv):
                minv = v
        return minv
    import numpy as np
    td = float(theta.enclose(192, cap).mid(64))
    grids = np.meshgrid(*[np.arange(-H, H + 1, dtype=float)] * (d + 1), indexing="ij")
    vals = np.zeros_like(grids[0])
    for i, g in enumerate(grids):
        vals += g * td**i
    vals = np.abs(vals)
    flat = vals.ravel()
    scale = 1.0 + float(np.max(flat))
    nz = flat[flat > 1e-12 * scale]
    floor = float(np.min(nz))
    band = floor * (1 + 1e-6) + 1e-8 * scale
    shape = grids[0].shape
    cands = []
    for ix in np.nonzero(flat <= band)[0]:
        vec = np.unravel_index(ix, shape)
        f = IntPoly.make(tuple(int(g[vec]) for g in grids))
        if not f.is_zero:
            cands.append(f)
    P = 192
    while True:
        ivs = [eval_interval(f, theta, P, cap).abs() for f in cands]
        ivs = [v for v in ivs if not v.contains_zero()]
        if ivs:
            hi_min = min(v.hi for v in ivs)
            live = [v for v in ivs if v.lo <= hi_min]
            hull = live[0]
            for v in live[1:]:
                hull = Interval.hull(hull, v)
            if hull.width(64) <= 2.0 ** -64:
                return hull
        P *= 2
        if P > cap:
            raise PrecisionExhausted("oracle refinement stalled")


def _exponent_row(theta, d, H_schedule, cap):
    """Search one degree along the schedule; the degree estimate is the
    running max with a monotone-tail diagnostic."""
    row = [best_poly(theta, d, H, cap) for H in H_schedule]
    expos = [r for r in row if r.exponent is not None]
    info = None
    if expos:
        best = max(expos, key=lambda r: float(r.exponent.mid(64)))
        tail_rising = (len(expos) >= 2 and
                       float(expos[-1].exponent.mid(64)) >
                       float(expos[-2].exponent.mid(64)))
        info = {"estimate": best.exponent, "at_H": best.H,
                "tail_rising": tail_rising}
    return row, info


def exponent_table(theta: RealConstant, d_max: int, H_schedule: list[int],
                   cap: int = DEFAULT_PREC_CAP):
    """Full (d, H) table with per-degree exponent estimates (running max
    over the schedule) and a monotone-tail diagnostic."""
    if any(b <= a for a, b in zip(H_schedule, H_schedule[1:])):
        raise ValueError("H schedule must be strictly increasing")
    records = []
    e_of_d = {}
    for d in range(1, d_max + 1):
        row, info = _exponent_row(theta, d, H_schedule, cap)
        records.extend(row)
        if info:
            e_of_d[d] = info
    return records, e_of_d


def _capped_height(H_max: int, d: int, budget: int) -> int:
    """Largest H <= H_max with (2H+1)^d <= budget (at least 1)."""
    h = int(budget ** (1.0 / d)) + 2
    while h > 1 and (2 * h + 1) ** d > budget:
        h -= max(1, h // 16)
    return max(1, min(h, H_max))


@dataclass
class ClassThresholds:
    # divergence: a per-degree exponent max above this, still rising at the
    # end of the schedule, is treated as "infinite exponent" evidence.  The
    # canonical base-10 Liouville target tops out at exponent 3 within any
    # desk-scale height budget (18/6 at H = 10^6), so the threshold must sit
    # below that to ever fire.
    divergence: float = 2.5
    stable_window: float = 0.25
    # per-degree enumeration budget: the H schedule for degree d is capped
    # so that (2H+1)^d stays below this
    candidate_budget: int = 4_000_000


@dataclass
class ClassReport:
    theta_spec: str
    table: list
    e_of_d: dict
    e_global: float | None
    d_frak: int | None
    verdict: str
    type_estimate: object
    witness: IntPoly | None
    knobs: dict


def classify_mahler(theta: RealConstant, d_max: int, H_max: int,
                    thresholds: ClassThresholds | None = None,
                    cap: int = DEFAULT_PREC_CAP) -> ClassReport:
    """Heuristic class diagnostic.  The only certification is an exact
    vanishing witness (A-certified); everything else is an explicit
    finite-budget heuristic with all knobs echoed in the report."""
    th = thresholds or ClassThresholds()
    witness = _exact_vanishing_witness(theta, d_max)
    schedules = {d: _geometric_schedule(10, _capped_height(H_max, d, th.candidate_budget))
                 for d in range(1, d_max + 1)}
    knobs = {"d_max": d_max, "H_max": H_max, "schedules": schedules,
             "divergence": th.divergence, "stable_window": th.stable_window,
             "candidate_budget": th.candidate_budget}
    if witness is not None:
        return ClassReport(theta.spec, [], {}, 0.0, None, "A-certified",
                           Interval.point(0), witness, knobs)
    records = []
    e_of_d = {}
    for d in range(1, d_max + 1):
        row, info = _exponent_row(theta, d, schedules[d], cap)
        records.extend(row)
        if info:
            e_of_d[d] = info
    d_frak = None
    for d in sorted(e_of_d):
        info = e_of_d[d]
        if float(info["estimate"].mid(64)) >= th.divergence and info["tail_rising"]:
            d_frak = d
            break
    mids = {d: float(e_of_d[d]["estimate"].mid(64)) for d in e_of_d}
    e_global = max(mids.values()) if mids else None
    if d_frak is not None:
        verdict = "U-suspected"
        type_estimate = Interval.point(d_frak)
    elif mids:
        tail = [mids[d] for d in sorted(mids)][-2:]
        if len(tail) == 2 and tail[1] > tail[0] + th.stable_window:
            verdict = "T-suspected"
            type_estimate = "divergent"
        else:
            verdict = "S-suspected"
            type_estimate = e_of_d[max(mids, key=mids.get)]["estimate"]
    else:
        verdict = "inconclusive"
        type_estimate = None
    return ClassReport(theta.spec, records, e_of_d, e_global, d_frak,
                       verdict, type_estimate, None, knobs)


def _geometric_schedule(base: int, H_max: int) -> list[int]:
    out = []
    h = base
    while h <= H_max:
        out.append(h)
        h *= base
    if not out or out[-1] != H_max:
        out.append(H_max)
    return out


def _exact_vanishing_witness(theta: RealConstant, d_max: int) -> IntPoly | None:
    coeffs = theta.minimal_poly_coeffs()
    if coeffs is None:
        return None
    f = IntPoly.make(coeffs)
    if f.degree > d_max:
        return None
    from .polycore import content_primitive
    return content_primitive(f)[1]


def spectra_grid(theta: RealConstant, d: int, exponent_grid: list[tuple],
                 H_max: int = 1000, cap: int = DEFAULT_PREC_CAP):
    """Empirical nonvanishing portrait: (a, b) is attainable when some
    witness of height at most H_max^a achieves |f(theta)| at most H_max^-b
    (an exact zero witness attains every b)."""
    records, _ = exponent_table(theta, d, _geometric_schedule(10, H_max), cap)
    witnesses = [(height(r.f), r.value) for r in records if r.d == d]
    zero_witness = _exact_vanishing_witness(theta, d)
    prec = 96
    rows = []
    for a, b in exponent_grid:
        if a <= 0 or b <= 0:
            raise ValueError("grid exponents must be positive")
        ha = _interval_power(H_max, Fraction(a).limit_denominator(1000), prec)
        hb = _interval_power(H_max, -Fraction(b).limit_denominator(1000), prec)
        ok = bool(zero_witness is not None and height(zero_witness) <= ha.lo)
        if not ok:
            ok = any(h <= ha.lo and v.hi <= hb.lo for h, v in witnesses)
        rows.append({"a": float(a), "b": float(b), "attainable": ok})
    return rows


def _interval_power(base: int, expo: Fraction, prec: int) -> Interval:
    iv = Interval.from_exact(base, prec)
    out = iv.pow_int(abs(expo.numerator), prec).rootn(expo.denominator, prec)
    if expo < 0:
        out = Interval.point(1).div(out, prec)
    return out


# -- finite-stage tropical sequence calculus ----------------------------


@dataclass(frozen=True)
class SeqClass:
    """Stored prefix of a positive sequence; the computational stand-in for
    a growth/decay class, compared by tail log-slopes with an explicit
    undecided outcome."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError("empty sequence")
        if any(v <= 0 for v in self.values):
            raise ValueError("sequence entries must be positive")

    @staticmethod
    def from_fn(fn, length: int) -> "SeqClass":
        return SeqClass(tuple(float(fn(i)) for i in range(1, length + 1)))


def seq_mul(x: SeqClass, y: SeqClass) -> SeqClass:
    return SeqClass(tuple(a * b for a, b in zip(x.values, y.values)))


def trop_add(x: SeqClass, y: SeqClass) -> SeqClass:
    return SeqClass(tuple(max(a, b) for a, b in zip(x.values, y.values)))


def trop_sub(x: SeqClass, y: SeqClass) -> SeqClass:
    return SeqClass(tuple(min(a, b) for a, b in zip(x.values, y.values)))


def frob_pow(x: SeqClass, r: float) -> SeqClass:
    if r <= 0:
        raise ValueError("power must be positive")
    return SeqClass(tuple(v**r for v in x.values))


@dataclass(frozen=True)
class SeqOrder:
    order: str            # "<" | ">" | "equivalent" | "undecided"
    slope_lo: float
    slope_hi: float


def seq_cmp(x: SeqClass, y: SeqClass, tol: float = 0.05,
            tail_frac: float = 0.5) -> SeqOrder:
    """Order of the classes via tail bounds on log(x_i/y_i)/log(i+1);
    oscillation across the tolerance is reported, never guessed away."""
    n = min(len(x.values), len(y.values))
    start = max(0, int(n * (1 - tail_frac)))
    slopes = [math.log(x.values[i] / y.values[i]) / math.log(i + 2)
              for i in range(start, n)]
    lo, hi = min(slopes), max(slopes)
    if hi < -tol:
        return SeqOrder("<", lo, hi)
    if lo > tol:
        return SeqOrder(">", lo, hi)
    if -tol <= lo and hi <= tol:
        return SeqOrder("equivalent", lo, hi)
    return SeqOrder("undecided", lo, hi)


def frobenius_min_product_ratio(x: SeqClass, y: SeqClass) -> list[float]:
    """Per-entry (|log x| + |log y|) / max(|log x|, |log y|), in [1, 2] for
    entries in (0, 1): tropical subtraction (min) and tropical product agree
    up to a bounded power."""
    out = []
    for a, b in zip(x.values, y.values):
        la, lb = abs(math.log(a)), abs(math.log(b))
        if max(la, lb) == 0:
            raise ValueError("entries equal to 1 have no decay scale")
        out.append((la + lb) / max(la, lb))
    return out


# -- growth-decay verifiers ----------------------------------------------


@dataclass(frozen=True)
class GrowthDecayPoint:
    d: int
    mu: Interval            # height^(-1/d)
    nu: Interval            # |f(theta)|^(1/d)
    mahler_mu: Interval     # mahler^(-1/d)
    f: IntPoly


def growth_decay_point(f: IntPoly, theta: RealConstant, d: int,
                       P: int = 64, cap: int = DEFAULT_PREC_CAP) -> GrowthDecayPoint:
    if f.is_zero or d < max(1, f.degree):
        raise ValueError("need f nonzero and d >= deg f")
    prec = P + 32
    h = height(f)
    mu = Interval.point(1).div(Interval.from_exact(h, prec).rootn(d, prec), prec)
    val = _nonzero_abs_value(f, theta, P, cap)
    nu = val.rootn(d, prec)
    from .measures import mahler_measure
    mah = mahler_measure(f, P, cap)
    mahler_mu = Interval.point(1).div(mah.rootn(d, prec), prec)
    # height-Mahler equivalence at the inequality level
    lowside = mah.div(Interval.from_exact(f.degree + 1, prec).sqrt(prec), prec)
    assert lowside.lo <= h <= mah.mul_exact(2 ** f.degree).hi
    return GrowthDecayPoint(d, mu, nu, mahler_mu, f)


def _nonzero_abs_value(f, theta, P, cap) -> Interval:
    p = P
    while True:
        iv = eval_interval(f, theta, p, cap).abs()
        if iv.lo > 0:
            return iv
        fr = theta.exact_fraction()
        if fr is not None and f.eval_fraction(fr) == 0:
            raise ValueError("f(theta) is exactly zero")
        if theta.kind == "quadratic":
            u, v = reduce_mod_quadratic(f, *theta.params[:3])
            if u == 0 and v == 0:
                raise ValueError("f(theta) is exactly zero")
        p *= 2
        if p > cap:
            raise PrecisionExhausted("cannot certify f(theta) nonzero")


def eval_at_product(f: IntPoly, theta: RealConstant, eta: RealConstant,
                    P: int, cap: int = DEFAULT_PREC_CAP) -> Interval:
    """Certified |f(theta * eta)| with width <= 2^-P."""
    from .polycore import horner_interval
    t = P + 32
    target = Fraction(1, 2**P)
    while True:
        x = theta.enclose(min(t, cap - 8), cap).mul(eta.enclose(min(t, cap - 8), cap), t)
        out = horner_interval(f, x, t).abs()
        if out.width(64) <= target:
            return out
        t *= 2
        if t > cap:
            raise PrecisionExhausted("product-point evaluation stalled")


@dataclass(frozen=True)
class DiamondReport:
    f: IntPoly
    g: IntPoly
    lhs: Interval
    rhs_with_slack: Interval
    ratio_hi: float
    passed: bool


def verify_diamond(f: IntPoly, g: IntPoly, theta: RealConstant,
                   eta: RealConstant, P: int = 96,
                   cap: int = DEFAULT_PREC_CAP) -> DiamondReport:
    """Unnormalized decay of the resultant product against the two-term
    Mahler-weighted bound, with the explicit slack constant
    (4 max(1,|theta|) max(1,|eta|))^(d e) absorbing the bounded factors."""
    from .measures import mahler_measure
    d, e = f.degree, g.degree
    prec = P + 32
    prod = box_times(f, g)
    lhs = eval_at_product(prod, theta, eta, P, cap)
    mf = mahler_measure(f, P, cap)
    mg = mahler_measure(g, P, cap)
    vf = eval_interval(f, theta, P, cap).abs()
    vg = eval_interval(g, eta, P, cap).abs()
    term1 = mf.pow_int(e - 1, prec).mul(mg.pow_int(d, prec), prec).mul(vf, prec)
    term2 = mf.pow_int(e, prec).mul(mg.pow_int(d - 1, prec), prec).mul(vg, prec)
    rhs = term1.add(term2, prec)
    slack_base = theta.enclose(P, cap).abs().max1().mul(
        eta.enclose(P, cap).abs().max1(), prec).mul_exact(4)
    slack = slack_base.pow_int(d * e, prec)
    rhs_slack = slack.mul(rhs, prec)
    passed = bool(lhs.hi <= rhs_slack.lo)
    ratio = float(lhs.hi / rhs_slack.lo) if rhs_slack.lo > 0 else float("inf")
    return DiamondReport(f, g, lhs, rhs_slack, ratio, passed)


@dataclass(frozen=True)
class ProductLawReport:
    status: str                   # PASS | EXPECTED-NEGATIVE | FAIL | inconclusive
    exponents: list
    exact_linear_ok: bool | None
    numerator_consistent: list


def verify_product_law(theta: RealConstant, eta: RealConstant, d: int, e: int,
                       witness_pairs: list[tuple[IntPoly, IntPoly]],
                       pass_threshold: float = 1.2,
                       negative_threshold: float = 0.1,
                       P: int = 96, cap: int = DEFAULT_PREC_CAP) -> ProductLawReport:
    """Slope-level composability check: decay exponents of the resultant
    products of the witnesses against their heights.  Exponent collapse to
    ~0 is the expected negative for badly approximable targets; for linear
    witnesses the numerator/denominator fraction arithmetic is also checked
    exactly."""
    expos = []
    exact_ok = True if d == e == 1 else None
    num_consistency = []
    prec = P + 32
    for fk, gk in witness_pairs:
        prod = box_times(fk, gk)
        h = height(prod)
        if d == e == 1:
            q, p = fk.coeffs[1], -fk.coeffs[0]
            n, m = gk.coeffs[1], -gk.coeffs[0]
            want = IntPoly.make((-p * m, q * n))
            exact_ok = exact_ok and (prod == want)
        if h <= 1:
            continue  # exponent undefined at height 1
        p2 = P
        val = eval_at_product(prod, theta, eta, p2, cap)
        while val.contains_zero() and 2 * p2 <= cap:
            p2 *= 2
            val = eval_at_product(prod, theta, eta, p2, cap)
        if val.contains_zero():
            expos.append(float("inf"))
            num_consistency.append(True)
            continue
        expo = val.log(prec).div(
            Interval.from_exact(h, prec).log(prec).mul_exact(-1), prec)
        expos.append(float(expo.mid(64)))
        if d == e == 1:
            num_consistency.append(bool(val.hi <= Fraction(1, 2)))
    # "unbounded" proxy: the running-max records of the exponent sequence
    # keep strictly increasing (>= 3 records) and end above the threshold
    records = []
    for x in expos:
        if not records or x > records[-1]:
            records.append(x)
    finite = [x for x in expos if x != float("inf")]
    if not expos:
        status = "inconclusive"
    elif len(records) >= 3 and records[-1] >= pass_threshold:
        status = "PASS"
    elif finite and max(finite) <= negative_threshold and len(finite) == len(expos):
        status = "EXPECTED-NEGATIVE"
    elif finite and max(expos) < pass_threshold:
        status = "FAIL"
    else:
        status = "inconclusive"
    return ProductLawReport(status, expos, exact_ok, num_consistency)
