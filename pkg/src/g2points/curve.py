"""Genus-2 curves y^2 = f(x), f monic quintic over Z.

Covers the geometric side of the pipeline: point reduction mod good
primes, canonical residue-disc centers, local power-series expansions of
the coordinates in a disc parameter, and expansion of regular 1-forms
w = (c1 + c2 x) dx/(2y) into a0 + a1 t + ... with integral coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .padic import (
    DEFAULT_PRECISION,
    PadicNumber,
    PadicPoly,
    PadicPowerSeries,
    PrecisionLossError,
    QuadExtNumber,
    hensel_root,
    legendre_symbol,
    padic_sqrt,
    smallest_nonresidue,
    sqrt_mod_p,
    vp_int,
)

_INF = math.inf

#: reduction of a point in the disc at infinity
FP_INFINITY = "infinity"


class TransversalityError(ArithmeticError):
    """The differential vanishes at the disc center at working precision."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond desk scale."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_det(M):
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _resultant_int(a, b):
    """Resultant of integer polynomials (ascending coefficients)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    M = [[0] * size for _ in range(size)]
    arev, brev = a[::-1], b[::-1]
    for i in range(n):
        M[i][i: i + m + 1] = arev
    for i in range(m):
        M[n + i][i: i + n + 1] = brev
    return _int_det(M)


class HyperellipticCurve:
    """y^2 = f(x) with f a monic quintic with integer coefficients.

    The monic odd-degree model pins down a single rational point at
    infinity, which serves as the base point of the embedding into the
    Jacobian throughout.
    """

    __slots__ = ("f_coeffs", "disc")

    def __init__(self, f_coeffs):
        coeffs = [int(c) for c in f_coeffs]
        if len(coeffs) != 6:
            raise ValueError("f must have six coefficients (degree 5)")
        if coeffs[5] != 1:
            raise ValueError("f must be monic")
        self.f_coeffs = tuple(coeffs)
        fp = [coeffs[i] * i for i in range(1, 6)]
        self.disc = _resultant_int(list(coeffs), fp)
        if self.disc == 0:
            raise ValueError("f has a repeated root (singular curve)")

    def f_eval(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.f_coeffs):
            acc = acc * x + c
        return acc

    def fprime_coeffs(self):
        return tuple(self.f_coeffs[i] * i for i in range(1, 6))

    def fprime_eval(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.fprime_coeffs()):
            acc = acc * x + c
        return acc

    def good_reduction(self, p: int) -> bool:
        return p >= 3 and is_prime(p) and self.disc % p != 0

    def __repr__(self):
        return "HyperellipticCurve(f=%r)" % (list(self.f_coeffs),)


class CurvePoint:
    """A point on the curve: Affine(x, y) or the point at infinity.

    Coordinates are Fractions for rational points or PadicNumbers for
    p-adic ones; only rational points are hashable.
    """

    __slots__ = ("x", "y", "at_infinity")

    def __init__(self, x, y, at_infinity: bool):
        self.x = x
        self.y = y
        self.at_infinity = at_infinity

    @classmethod
    def affine(cls, x, y) -> "CurvePoint":
        if isinstance(x, int):
            x = Fraction(x)
        if isinstance(y, int):
            y = Fraction(y)
        return cls(x, y, False)

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls(None, None, True)

    def is_rational(self) -> bool:
        return self.at_infinity or (isinstance(self.x, Fraction)
                                    and isinstance(self.y, Fraction))

    def involution(self) -> "CurvePoint":
        if self.at_infinity:
            return self
        return CurvePoint(self.x, -self.y, False)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.at_infinity or other.at_infinity:
            return self.at_infinity == other.at_infinity
        if self.is_rational() and other.is_rational():
            return self.x == other.x and self.y == other.y
        dx, dy = self.x - other.x, self.y - other.y
        return dx.is_zeroish() and dy.is_zeroish()

    def __hash__(self):
        if self.at_infinity:
            return hash("curve-point-infinity")
        if not self.is_rational():
            raise TypeError("p-adic points are not hashable")
        return hash((self.x, self.y))

    def __repr__(self):
        if self.at_infinity:
            return "CurvePoint(infinity)"
        return "CurvePoint(%s, %s)" % (self.x, self.y)


def is_on_curve(C: HyperellipticCurve, P: CurvePoint) -> bool:
    if P.at_infinity:
        return True
    if P.is_rational():
        return P.y * P.y == C.f_eval(P.x)
    d = P.y * P.y - C.f_eval(P.x)
    return d.is_zeroish()


def _fraction_residue(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def _fraction_valuation(q: Fraction, p: int):
    if q == 0:
        return _INF
    v = vp_int(q.numerator, p) if q.numerator % p == 0 else 0
    return v - (vp_int(q.denominator, p) if q.denominator % p == 0 else 0)


def reduce_point(C: HyperellipticCurve, P: CurvePoint, p: int):
    """Image of P in C(F_p): a coordinate pair, or FP_INFINITY.

    Points with v(x) < 0 land in the residue disc at infinity.
    """
    if not C.good_reduction(p):
        raise ValueError("reduction requires an odd good prime")
    if P.at_infinity:
        return FP_INFINITY
    if P.is_rational():
        if _fraction_valuation(P.x, p) < 0:
            return FP_INFINITY
        return (_fraction_residue(P.x, p), _fraction_residue(P.y, p))
    if P.x.is_zeroish() and not P.x.is_exact_zero() and P.x.valuation < 1:
        raise PrecisionLossError("x-coordinate has no known digits")
    if P.x.valuation < 0:
        return FP_INFINITY
    return (P.x.residue(), P.y.residue())


def fp_curve_points(C: HyperellipticCurve, p: int):
    """All of C(F_p), infinity included."""
    pts = [FP_INFINITY]
    for x in range(p):
        r = C.f_eval(Fraction(x)).numerator % p
        if r == 0:
            pts.append((x, 0))
        elif legendre_symbol(r, p) == 1:
            y = sqrt_mod_p(r, p)
            pts.append((x, y))
            pts.append((x, p - y))
    return pts


def count_Fp_points(C: HyperellipticCurve, p: int) -> int:
    return len(fp_curve_points(C, p))


def count_Fp2_points(C: HyperellipticCurve, p: int) -> int:
    """|C(F_{p^2})| by scanning F_{p^2} = F_p(sqrt(c)).

    The quadratic character of F_{p^2} is the Legendre symbol of the norm.
    """
    c = smallest_nonresidue(p)
    count = 1
    coeffs = [k % p for k in C.f_coeffs]
    for a in range(p):
        for b in range(p):
            ra, rb = 0, 0
            for k in reversed(coeffs):
                ra, rb = (ra * a + rb * b * c + k) % p, (ra * b + rb * a) % p
            if ra == 0 and rb == 0:
                count += 1
            else:
                if legendre_symbol((ra * ra - c * rb * rb) % p, p) == 1:
                    count += 2
    return count


def disc_center(C: HyperellipticCurve, fp_point, p: int,
                rel: int = DEFAULT_PRECISION) -> CurvePoint:
    """Canonical p-adic center of the residue disc of an F_p-point.

    Smallest non-negative integer lift of the x-coordinate, corrected onto
    the curve by Hensel: the square root of f(x0) matching the reduced y
    away from Weierstrass points, the exact root of f at them.
    """
    if fp_point == FP_INFINITY:
        return CurvePoint.infinity()
    xbar, ybar = fp_point
    if ybar % p == 0:
        f = PadicPoly(p, [PadicNumber.from_int(k, p, rel) for k in C.f_coeffs])
        x0 = hensel_root(f, PadicNumber.from_int(xbar, p, rel))
        return CurvePoint(x0, PadicNumber.exact_zero(p), False)
    x0 = PadicNumber.from_int(xbar, p, rel)
    y0 = padic_sqrt(C.f_eval(x0))
    if not isinstance(y0, PadicNumber):
        raise ArithmeticError("f(x0) is a unit square by assumption")
    if y0.residue() != ybar % p:
        y0 = -y0
    return CurvePoint(x0, y0, False)


# -- local series helpers (plain coefficient lists, truncated products) ----
# generic over the coefficient field through a small constructor adapter, so
# the same recursions serve Q_p and its quadratic extensions

class _FieldOps:
    """Constructor shim for the series recursions over Q_p."""

    __slots__ = ("p", "rel")

    def __init__(self, p: int, rel: int = DEFAULT_PRECISION):
        self.p = p
        self.rel = rel

    def zero(self):
        return PadicNumber.exact_zero(self.p)

    def one(self):
        return PadicNumber.from_int(1, self.p, self.rel)


def _lzero(F, n):
    return [F.zero() for _ in range(n)]


def _ladd(F, a, b, n):
    out = _lzero(F, n)
    for i in range(n):
        x = a[i] if i < len(a) else F.zero()
        y = b[i] if i < len(b) else F.zero()
        out[i] = x + y
    return out


def _lsub(F, a, b, n):
    return _ladd(F, a, [-c for c in b], n)


def _lmul(F, a, b, n):
    out = _lzero(F, n)
    for i, x in enumerate(a[:n]):
        if x.is_exact_zero():
            continue
        for j, y in enumerate(b[: n - i]):
            if y.is_exact_zero():
                continue
            out[i + j] = out[i + j] + x * y
    return out


def _linv(F, a, n):
    inv0 = a[0].inverse()
    out = [inv0]
    for d in range(1, n):
        s = F.zero()
        for j in range(1, d + 1):
            if j < len(a) and not a[j].is_exact_zero():
                s = s + a[j] * out[d - j]
        out.append(-inv0 * s)
    return out


def _lpolyval(F, poly_coeffs, s, n):
    """poly(s(t)) truncated to n coefficients."""
    acc = _lzero(F, n)
    for c in reversed(poly_coeffs):
        acc = _lmul(F, acc, s, n)
        acc[0] = acc[0] + c
    return acc


def _affine_y_coeffs(F, fc, x0, y0, T):
    """y(t) on y^2 = f(x0 + t) to T coefficients, y(0) = y0 a unit."""
    taylor = _taylor_coeffs(F, fc, x0)
    ys = [y0]
    for m in range(1, T + 1):
        s = F.zero()
        for i in range(1, m):
            s = s + ys[i] * ys[m - i]
        Fm = taylor[m] if m < len(taylor) else F.zero()
        ys.append((Fm - s) / (y0 * 2))
    return ys


def _weierstrass_x_coeffs(F, fc, x0, T):
    """x(t) solving f(x(t)) = t^2 with x(0) = x0 a simple root of f;
    the series is even in t."""
    t2 = [F.zero(), F.zero(), F.one()]
    fpc = [fc[i] * i for i in range(1, 6)]
    xs = [x0]
    m = 1
    while m < T + 1:
        m = min(2 * m, T + 1)
        fx = _lpolyval(F, fc, xs, m)
        res = _lsub(F, fx, t2, m)
        dfx = _lpolyval(F, fpc, xs, m)
        step = _lmul(F, res, _linv(F, dfx, m), m)
        xs = _lsub(F, xs + _lzero(F, m - len(xs)), step, m)
    return xs[: T + 1]


def local_expansion(C: HyperellipticCurve, center: CurvePoint, p: int, T: int,
                    rel: int = DEFAULT_PRECISION):
    """(x(t), y(t)) in the disc parameter t at the given center.

    t = x - x0 off the Weierstrass locus, t = y at a Weierstrass center,
    t = x^2/y at infinity (where x(t) is Laurent with leading term t^-2).
    Coefficients are p-adically integral; tail bounds reflect that.
    """
    fc = [PadicNumber.from_int(k, p, rel) for k in C.f_coeffs]
    if center.at_infinity:
        return _expansion_at_infinity(p, fc, T)
    x0 = center.x if isinstance(center.x, PadicNumber) \
        else PadicNumber.from_rational(center.x, p, rel)
    y0 = center.y if isinstance(center.y, PadicNumber) \
        else PadicNumber.from_rational(center.y, p, rel)
    ybar_zero = y0.is_zeroish() or y0.valuation >= 1
    if ybar_zero:
        if not y0.is_zeroish():
            raise ValueError("Weierstrass-disc center must have y = 0")
        return _expansion_at_weierstrass(C, p, fc, x0, T, rel)
    return _expansion_at_affine(C, p, fc, x0, y0, T, rel)


def _expansion_at_affine(C, p, fc, x0, y0, T, rel):
    # y(t)^2 = f(x0 + t): coefficient recursion off 2 y0 y_m = F_m - cross terms
    ys = _affine_y_coeffs(_FieldOps(p, rel), fc, x0, y0, T)
    x_series = PadicPowerSeries(p, [x0, PadicNumber.from_int(1, p, rel)], _INF, 0)
    y_series = PadicPowerSeries(p, ys, 0, 0)
    return x_series, y_series


def _taylor_coeffs(F, fc, x0):
    """Coefficients of f(x0 + t) by repeated synthetic division."""
    cs = list(fc)
    out = []
    while cs:
        b = cs[-1]
        qs = [b]
        for c in reversed(cs[:-1]):
            b = b * x0 + c
            qs.append(b)
        out.append(b)
        qs.reverse()
        cs = qs[1:]
    return out


def _expansion_at_weierstrass(C, p, fc, x0, T, rel):
    # solve f(x(t)) = t^2 by series Newton; x(t) is even in t
    xs = _weierstrass_x_coeffs(_FieldOps(p, rel), fc, x0, T)
    x_series = PadicPowerSeries(p, xs, 0, 0)
    y_series = PadicPowerSeries(
        p, [PadicNumber.exact_zero(p), PadicNumber.from_int(1, p, rel)],
        _INF, 0)
    return x_series, y_series


def _expansion_at_infinity(p, fc, T):
    # xi = 1/x satisfies xi = t^2 g(xi), g(w) = 1 + c4 w + ... + c0 w^5
    F = _FieldOps(p)
    one = F.one()
    g = [one, fc[4], fc[3], fc[2], fc[1], fc[0]]
    gp = [g[i] * i for i in range(1, 6)]
    n = T + 3
    xi = _lzero(F, n)
    xi[2] = one
    m = 3
    while m < n:
        m = min(2 * m, n)
        gx = _lpolyval(F, g, xi, m)
        t2g = _lzero(F, m)
        for i in range(m - 2):
            t2g[i + 2] = gx[i]
        res = _lsub(F, xi, t2g, m)
        gpx = _lpolyval(F, gp, xi, m)
        dF = _lzero(F, m)
        dF[0] = one
        for i in range(m - 2):
            dF[i + 2] = dF[i + 2] - gpx[i]
        step = _lmul(F, res, _linv(F, dF, m), m)
        xi = _lsub(F, xi, step, m)
    u = xi[2: T + 3]  # xi = t^2 * u(t), u(0) = 1
    uinv = _linv(F, u, T + 1)
    x_series = PadicPowerSeries(p, uinv, 0, -2)
    y_series = PadicPowerSeries(p, _lmul(F, uinv, uinv, T + 1), 0, -5)
    return x_series, y_series


class Differential:
    """w = (c1 + c2 x) dx / (2y), the regular 1-forms on the curve."""

    __slots__ = ("c1", "c2")

    def __init__(self, c1, c2, p: int | None = None, rel: int = DEFAULT_PRECISION):
        def conv(c):
            if isinstance(c, PadicNumber):
                return c
            if p is None:
                raise ValueError("rational coefficients need the prime")
            return PadicNumber.from_rational(c, p, rel)
        self.c1 = conv(c1)
        self.c2 = conv(c2)
        if self.c1.is_zeroish() and self.c2.is_zeroish():
            raise ValueError("differential must be nonzero at precision")

    @property
    def prime(self) -> int:
        return self.c1.prime

    def normalized(self) -> "Differential":
        """Scale so min(v(c1), v(c2)) = 0; then all a_i are integral."""
        vs = [c.valuation for c in (self.c1, self.c2) if not c.is_zeroish()]
        m = int(min(vs))
        for c in (self.c1, self.c2):
            if c.is_zeroish() and not c.is_exact_zero() and c.valuation <= m:
                raise PrecisionLossError("cannot certify the minimal valuation")
        if m == 0:
            return self
        return Differential(self.c1.pshift(-m), self.c2.pshift(-m))

    def __repr__(self):
        return "Differential((%r) + (%r) x) dx/2y" % (self.c1, self.c2)


def expand_differential(C: HyperellipticCurve, w: Differential, center: CurvePoint,
                        p: int, T: int, rel: int = DEFAULT_PRECISION) -> PadicPowerSeries:
    """Coefficient series a0 + a1 t + ... of w in the disc parameter at center,
    with truncation order at least T."""
    xs, ys = local_expansion(C, center, p, T + 6, rel)
    if center.at_infinity:
        numer = PadicPowerSeries(p, [w.c1], _INF, 0) + xs * w.c2
        dxdt = xs.derivative()
        yunit_inv = ys.shifted(5).inverse()
        a = numer * dxdt * yunit_inv.shifted(5) * Fraction(1, 2)
        return _laurent_to_series(a)
    if ys.shift == 0 and len(ys.coeffs) == 2 and ys.coeffs[0].is_exact_zero():
        # Weierstrass disc, t = y: a = (c1 + c2 x) x'(t) / (2t)
        half_dxdt = [xs.coeffs[j + 2] * Fraction(j + 2, 2)
                     for j in range(len(xs.coeffs) - 2)]
        hser = PadicPowerSeries(p, half_dxdt, 0, 0)
        numer = PadicPowerSeries(p, [w.c1], _INF, 0) + xs * w.c2
        return _laurent_to_series(numer * hser)
    numer = PadicPowerSeries(p, [w.c1 + w.c2 * xs.coeffs[0], w.c2], _INF, 0)
    inv2y = PadicPowerSeries(p, _linv(_FieldOps(p, rel),
                                      [c * 2 for c in ys.coeffs],
                                      len(ys.coeffs)), 0, 0)
    return _laurent_to_series(numer * inv2y)


def _laurent_to_series(a: PadicPowerSeries) -> PadicPowerSeries:
    if a.shift == 0:
        return a
    if a.shift > 0:
        pad = [PadicNumber.exact_zero(a.prime)] * a.shift
        return PadicPowerSeries(a.prime, pad + list(a.coeffs),
                                a.tail_valuation_bound, 0, a.tail_log_penalty)
    for c in a.coeffs[: -a.shift]:
        if not c.is_zeroish():
            raise ArithmeticError("differential has a pole in the disc")
    return PadicPowerSeries(a.prime, a.coeffs[-a.shift:],
                            a.tail_valuation_bound, 0, a.tail_log_penalty)


def v_of_w(C: HyperellipticCurve, w: Differential, Q: CurvePoint, p: int,
           rel: int = DEFAULT_PRECISION) -> int:
    """v(a0) of the normalized w at the canonical center of Q's disc."""
    center = disc_center(C, reduce_point(C, Q, p), p, rel)
    a = expand_differential(C, w.normalized(), center, p, 8, rel)
    a0 = a.coeff_of_degree(0)
    if a0.is_zeroish():
        raise TransversalityError(
            "differential vanishes at the disc center at precision O(p^%s)"
            % a0.valuation)
    return int(a0.valuation)
