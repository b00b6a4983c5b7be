"""Resultant product/sum/difference of integer polynomials, and the action
of integer rational maps.

The binary operations are computed exactly as formal-degree Sylvester
determinants over Z[X]: the determinant (a polynomial in X of degree at most
m*n) is recovered by evaluating at m*n + 1 integer points with fraction-free
Bareiss elimination and interpolating, which provably yields an integer
polynomial.  Formal degrees, rather than true degrees, parameterize the
matrices so that vanishing leading coefficients of the homogenization are
handled uniformly.

Output normalization: the leading coefficient is a_m^n * b_n^m verbatim;
results are NOT content-reduced (canonicalization via content_primitive is
the caller's explicit choice).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polycore import IntPoly, cauchy_mul, content_primitive, poly_parse, z_check


def bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - mik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def sylvester(a_desc: list, b_desc: list, m: int, n: int) -> list[list]:
    """Formal-degree (m, n) Sylvester matrix from descending coefficient
    lists (length m+1 and n+1; leading entries may be zero)."""
    dim = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a_desc) + [0] * (dim - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b_desc) + [0] * (dim - n - 1 - i))
    return rows


def resultant_int(f: IntPoly, g: IntPoly, m: int | None = None,
                  n: int | None = None) -> int:
    """Resultant of f and g at formal degrees (m, n), m >= deg f, n >= deg g."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial")
    dm = len(f.coeffs) - 1
    dn = len(g.coeffs) - 1
    m = dm if m is None else m
    n = dn if n is None else n
    if m < dm or n < dn:
        raise ValueError("formal degree below true degree")
    if m + n < 1:
        raise ValueError("both formal degrees zero")
    a_desc = [0] * (m - dm) + list(reversed(f.coeffs))
    b_desc = [0] * (n - dn) + list(reversed(g.coeffs))
    return bareiss_det(sylvester(a_desc, b_desc, m, n))


def _require_monoid(f: IntPoly, g: IntPoly) -> bool:
    """Both inputs in {deg >= 1} union {1}; True if either equals 1."""
    for h in (f, g):
        if not z_check(h).member:
            raise ValueError(f"operand {h} not in the degree>=1-or-1 monoid")
    return f.coeffs == (1,) or g.coeffs == (1,)


def _interpolate_int(xs: list[int], vs: list[int]) -> IntPoly:
    """Exact interpolation through integer data known to be an integer
    polynomial (Newton form over Fractions, integrality asserted)."""
    n = len(xs)
    coef = [Fraction(v) for v in vs]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        new = [Fraction(0)] * (len(out) + 1)
        for k, c in enumerate(out):
            new[k + 1] += c
            new[k] -= c * xs[i]
        new[0] += coef[i]
        out = new
    assert all(c.denominator == 1 for c in out), "interpolation left a denominator"
    return IntPoly.make([int(c) for c in out])


def _eval_points(count: int):
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts


def box_times(f: IntPoly, g: IntPoly) -> IntPoly:
    """Resultant product: roots multiply pairwise, leading coefficient
    a_m^n * b_n^m; the polynomial X - 1 is the identity; 1 maps to 1."""
    if _require_monoid(f, g):
        return IntPoly.const(1)
    m, n = f.degree, g.degree
    b_desc = list(reversed(g.coeffs))
    xs = _eval_points(m * n + 1)
    vs = []
    for x0 in xs:
        # homogenization of f: coefficient of Y^j is a_{m-j} * x0^(m-j),
        # listed from Y^m (= a_0) down to Y^0 (= a_m * x0^m)
        a_desc = [f.coeffs[m - j] * x0 ** (m - j) for j in range(m, -1, -1)]
        det = bareiss_det(sylvester(a_desc, b_desc, m, n))
        vs.append(-det if (m * n) % 2 else det)
    return _interpolate_int(xs, vs)


def box_plus(f: IntPoly, g: IntPoly) -> IntPoly:
    """Resultant sum: roots add pairwise, leading coefficient a_m^n * b_n^m;
    the polynomial X is the identity; 1 maps to 1."""
    if _require_monoid(f, g):
        return IntPoly.const(1)
    m, n = f.degree, g.degree
    a_desc = list(reversed(f.coeffs))
    xs = _eval_points(m * n + 1)
    vs = []
    for x0 in xs:
        shifted = _compose_affine(g, x0)  # g(x0 - Y) as a polynomial in Y
        b_desc = list(reversed(shifted))
        vs.append(bareiss_det(sylvester(a_desc, b_desc, m, n)))
    return _interpolate_int(xs, vs)


def _compose_affine(g: IntPoly, x0: int) -> list[int]:
    """Ascending coefficients of g(x0 - Y)."""
    acc = [0]
    for b in reversed(g.coeffs):
        # acc <- acc * (x0 - Y) + b
        new = [0] * (len(acc) + 1)
        for i, c in enumerate(acc):
            new[i] += c * x0
            new[i + 1] -= c
        new[0] += b
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        acc = new
    return acc


def box_minus(f: IntPoly, g: IntPoly) -> IntPoly:
    """Resultant difference: roots subtract pairwise (f boxplus the
    reflection of g, which negates roots and keeps the leading coefficient)."""
    if _require_monoid(f, g):
        return IntPoly.const(1)
    return box_plus(f, g.reflect())


# -- rational maps ------------------------------------------------------


@dataclass(frozen=True)
class RatMap:
    """Relatively prime pair p/q of integer polynomials, degree >= 1."""

    p: IntPoly
    q: IntPoly

    @property
    def degree(self) -> int:
        return max(self.p.degree, self.q.degree)

    def height(self) -> int:
        from .polycore import height
        return max(height(self.p), height(self.q))

    def eval_fraction(self, x: Fraction) -> Fraction:
        return self.p.eval_fraction(x) / self.q.eval_fraction(x)

    def __str__(self):
        return f"({self.p})/({self.q})"


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Greatest common divisor in Z[X] (primitive gcd times content gcd),
    positive leading coefficient."""
    import math
    if f.is_zero and g.is_zero:
        raise ValueError("gcd(0, 0)")
    if f.is_zero:
        c, g0 = content_primitive(g)
        return g0.scale(abs(c))
    if g.is_zero:
        c, f0 = content_primitive(f)
        return f0.scale(abs(c))
    cf, f0 = content_primitive(f)
    cg, g0 = content_primitive(g)
    a = [Fraction(c) for c in f0.coeffs]
    b = [Fraction(c) for c in g0.coeffs]
    while any(b):
        a, b = b, _poly_mod(a, b)
        while b and b[-1] == 0:
            b.pop()
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    num = 0
    for c in ints:
        num = math.gcd(num, c)
    prim = IntPoly.make([c // num for c in ints])
    if prim.lead < 0:
        prim = prim.neg()
    return prim.scale(math.gcd(abs(cf), abs(cg)))


def _poly_mod(a: list, b: list) -> list:
    out = a[:]
    db = len(b) - 1
    for top in range(len(out) - 1, db - 1, -1):
        q = out[top] / b[-1]
        if q:
            for j in range(db + 1):
                out[top - db + j] -= q * b[j]
    return out[:db] if db > 0 else [Fraction(0)]


def poly_div_exact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient f/g in Z[X]; raises if the division is not exact."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return IntPoly.zero()
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    db = len(b) - 1
    quo = [Fraction(0)] * (len(a) - db)
    for top in range(len(a) - 1, db - 1, -1):
        q = a[top] / b[-1]
        quo[top - db] = q
        if q:
            for j in range(db + 1):
                a[top - db + j] -= q * b[j]
    if any(a[:db]) or any(c.denominator != 1 for c in quo):
        raise ValueError("inexact polynomial division")
    return IntPoly.make([int(c) for c in quo])


def ratmap_make(p: IntPoly, q: IntPoly) -> RatMap:
    """Reduce (p, q) to relatively prime form; degree-0 maps are rejected."""
    if q.is_zero:
        raise ValueError("zero denominator")
    if p.is_zero:
        raise ValueError("zero numerator gives a constant map")
    g = poly_gcd(p, q)
    if g.degree >= 1 or abs(g.lead) > 1:
        p = poly_div_exact(p, g)
        q = poly_div_exact(q, g)
    if q.lead < 0:
        p, q = p.neg(), q.neg()
    r = RatMap(p, q)
    if r.degree < 1:
        raise ValueError("degree-0 rational map rejected")
    return r


def ratmap_parse(p_text: str, q_text: str) -> RatMap:
    return ratmap_make(poly_parse(p_text, normalize=True),
                       poly_parse(q_text, normalize=True))


def ratmap_compose(r: RatMap, s: RatMap) -> RatMap:
    """Relatively prime form of r o s by clearing denominators, including
    the balancing power of s's denominator.

    The output pair is kept verbatim (a common integer content may remain);
    stripping it would break exactness of the composition law for the
    polynomial action.  Only the absence of a common positive-degree factor
    is verified.
    """
    t, u = s.p, s.q
    dp, dq = r.p.degree, r.q.degree
    num = _clear_denominators(r.p, t, u)
    den = _clear_denominators(r.q, t, u)
    if dq > dp:
        num = cauchy_mul(num, _poly_pow(u, dq - dp))
    elif dp > dq:
        den = cauchy_mul(den, _poly_pow(u, dp - dq))
    assert max(num.degree, den.degree) == r.degree * s.degree
    if poly_gcd(num, den).degree != 0:
        raise AssertionError("composition produced a common factor")
    return RatMap(num, den)


def _poly_pow(f: IntPoly, k: int) -> IntPoly:
    out = IntPoly.const(1)
    base = f
    while k:
        if k & 1:
            out = cauchy_mul(out, base)
        k >>= 1
        if k:
            base = cauchy_mul(base, base)
    return out


def _clear_denominators(w: IntPoly, t: IntPoly, u: IntPoly) -> IntPoly:
    """sum_i w_i t^i u^(deg w - i)."""
    d = w.degree
    out = IntPoly.zero()
    tp = IntPoly.const(1)
    for i, wi in enumerate(w.coeffs):
        if wi:
            out = out.add(cauchy_mul(tp, _poly_pow(u, d - i)).scale(wi))
        if i < d:
            tp = cauchy_mul(tp, t)
    return out


def box_circle(f: IntPoly, r: RatMap, formal_deg: int | None = None) -> IntPoly:
    """Action of a rational map: q^d * (f o r) with d = deg f (or a caller
    supplied formal degree >= deg f, which makes repeated actions strictly
    associative even when a leading coefficient cancels)."""
    if f.is_zero:
        raise ValueError("action on the zero polynomial")
    d = f.degree if formal_deg is None else formal_deg
    if d < f.degree:
        raise ValueError("formal degree below true degree")
    out = IntPoly.zero()
    tp = IntPoly.const(1)
    for i in range(d + 1):
        wi = f[i]
        if wi:
            out = out.add(cauchy_mul(tp, _poly_pow(r.q, d - i)).scale(wi))
        if i < d:
            tp = cauchy_mul(tp, r.p)
    return out
