"""Single-disc Coleman machinery for rank-1 genus-2 Jacobians.

Tiny integrals of regular 1-forms between points of one residue disc,
the p-adic logarithm on the Jacobian (tiny integrals against the basis
dx/2y, x dx/2y after multiplying into the kernel of reduction), the
1-form annihilating a given logarithm vector, and Strassmann-certified
zero counts of its antiderivative on residue discs.  Everything returns
capped-precision values or raises; no answer is ever silently rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .curve import (
    FP_INFINITY,
    CurvePoint,
    Differential,
    HyperellipticCurve,
    TransversalityError,
    _affine_y_coeffs,
    _linv,
    _lmul,
    _taylor_coeffs,
    _weierstrass_x_coeffs,
    disc_center,
    expand_differential,
    reduce_point,
    v_of_w,
)
from .jacobian import (
    MumfordDivisor,
    embed_point,
    enumerate_Fp_jacobian,
    reduce_divisor,
    scalar_mul,
)
from .padic import (
    DEFAULT_PRECISION,
    TRUNCATION_FACTOR,
    PadicNumber,
    PadicPowerSeries,
    PrecisionLossError,
    QuadExtension,
    QuadExtNumber,
    padic_sqrt,
    strassmann_count,
)
from .polys import PadicDomain, RationalDomain

_INF = math.inf


class DecompositionFailureError(ArithmeticError):
    """The kernel element does not match any supported support configuration."""


# -- logarithm vectors and annihilating forms ------------------------------

class LogVector:
    """(integral of dx/2y, integral of x dx/2y) along a Jacobian class."""

    __slots__ = ("l1", "l2")

    def __init__(self, l1: PadicNumber, l2: PadicNumber):
        self.l1 = l1
        self.l2 = l2

    @property
    def prime(self) -> int:
        return self.l1.prime

    def __add__(self, other):
        if not isinstance(other, LogVector):
            return NotImplemented
        return LogVector(self.l1 + other.l1, self.l2 + other.l2)

    def __sub__(self, other):
        if not isinstance(other, LogVector):
            return NotImplemented
        return LogVector(self.l1 - other.l1, self.l2 - other.l2)

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return LogVector(self.l1 * k, self.l2 * k)

    __rmul__ = __mul__

    def __repr__(self):
        return "LogVector(%r, %r)" % (self.l1, self.l2)


class AnnihilatingForm:
    """A regular 1-form paired to zero against a fixed logarithm vector."""

    __slots__ = ("differential", "annihilates")

    def __init__(self, differential: Differential, annihilates: LogVector):
        self.differential = differential
        self.annihilates = annihilates

    @property
    def c1(self) -> PadicNumber:
        return self.differential.c1

    @property
    def c2(self) -> PadicNumber:
        return self.differential.c2

    def apply(self, L: LogVector) -> PadicNumber:
        """Pairing c1 * l1 + c2 * l2."""
        return self.c1 * L.l1 + self.c2 * L.l2

    def __repr__(self):
        return "AnnihilatingForm(%r)" % (self.differential,)


def _underlying(w) -> Differential:
    return w.differential if isinstance(w, AnnihilatingForm) else w


# -- residue-disc bookkeeping ----------------------------------------------

def _drops_to_infinity(x) -> bool:
    """Certified v(x) < 0 decision; raises when precision cannot resolve it."""
    if isinstance(x, QuadExtNumber):
        if x.is_zeroish():
            if x.valuation_p() >= 0:
                return False
            raise PrecisionLossError("sign of the coordinate valuation unresolved")
        if (x.a.is_zeroish() or x.b.is_zeroish()) and x.valuation_p() < 0:
            raise PrecisionLossError("sign of the coordinate valuation unresolved")
        return x.valuation_p() < 0
    if x.is_zeroish():
        if x.is_exact_zero() or x.valuation >= 0:
            return False
        raise PrecisionLossError("sign of the coordinate valuation unresolved")
    return x.valuation < 0


def _residue_disc_key(C: HyperellipticCurve, P: CurvePoint, p: int):
    """Reduction of P as a disc label.

    FP_INFINITY or an (x, y) pair over F_p as in reduce_point; points with
    coordinates in a quadratic extension whose reduction leaves F_p get an
    ("ext", kind, xa, xb, ya, yb) tuple with residues w.r.t. sqrt(d).
    """
    if P.at_infinity:
        return FP_INFINITY
    if isinstance(P.x, QuadExtNumber):
        if _drops_to_infinity(P.x):
            return FP_INFINITY
        xa, xb = P.x.residue_pair()
        ya, yb = P.y.residue_pair()
        if xb == 0 and yb == 0:
            return (xa, ya)
        return ("ext", P.x.ext.kind, xa, xb, ya, yb)
    return reduce_point(C, P, p)


def _is_ext_key(key) -> bool:
    return isinstance(key, tuple) and len(key) == 6 and key[0] == "ext"


def _as_padic(c, p: int, rel: int) -> PadicNumber:
    if isinstance(c, PadicNumber):
        return c
    return PadicNumber.from_rational(Fraction(c), p, rel)


def _infinity_param(P: CurvePoint, p: int, rel: int):
    """t = x^2/y at a point of the disc at infinity."""
    if P.at_infinity:
        return PadicNumber.exact_zero(p)
    x, y = P.x, P.y
    if isinstance(x, Fraction) or isinstance(x, int):
        return PadicNumber.from_rational(Fraction(x) ** 2 / Fraction(y), p, rel)
    return x * x / y


def _disc_param(P: CurvePoint, center: CurvePoint, p: int, rel: int):
    """Disc parameter of P w.r.t. the center's expansion."""
    if center.at_infinity:
        return _infinity_param(P, p, rel)
    if center.y.is_exact_zero():
        t = P.y
        return _as_padic(t, p, rel) if not isinstance(t, QuadExtNumber) else t
    if isinstance(P.x, QuadExtNumber):
        return P.x - center.x
    return _as_padic(P.x, p, rel) - center.x


# -- tiny integrals within one residue disc --------------------------------

def tiny_integral(C: HyperellipticCurve, w, frm: CurvePoint, to: CurvePoint,
                  p: int, rel: int = DEFAULT_PRECISION):
    """Integral of w from frm to to, both in one residue disc.

    Endpoints may have rational, p-adic, or quadratic-extension coordinates;
    the value lies in the same field (a conjugate-symmetric extension value
    with no certified sqrt(d) part is returned as its Q_p component).
    """
    if not C.good_reduction(p):
        raise ValueError("tiny integrals need a prime of good reduction")
    wd = _underlying(w)
    k1 = _residue_disc_key(C, frm, p)
    k2 = _residue_disc_key(C, to, p)
    if k1 != k2:
        raise ValueError("endpoints lie in different residue discs")
    T = TRUNCATION_FACTOR * rel
    if _is_ext_key(k1):
        ext = QuadExtension(p, k1[1])
        lam, xc, weier = _ext_center_lambda(C, wd, k1, ext, p, T, rel)
        val = (_ext_eval(p, lam, _ext_param(to, xc, weier))
               - _ext_eval(p, lam, _ext_param(frm, xc, weier)))
    else:
        center = disc_center(C, k1, p, rel)
        lam = expand_differential(C, wd, center, p, T, rel).antiderivative()
        val = (lam.evaluate(_disc_param(to, center, p, rel))
               - lam.evaluate(_disc_param(frm, center, p, rel)))
    if isinstance(val, QuadExtNumber) and val.b.is_zeroish():
        return val.a
    return val


# -- quadratic-extension disc centers ---------------------------------------

class _ExtOps:
    """Constructor adapter over Q_p(sqrt(d)) for the shared series recursions."""

    __slots__ = ("ext", "rel")

    def __init__(self, ext: QuadExtension, rel: int):
        self.ext = ext
        self.rel = rel

    def zero(self) -> QuadExtNumber:
        z = PadicNumber.exact_zero(self.ext.prime)
        return QuadExtNumber(self.ext, z, z)

    def one(self) -> QuadExtNumber:
        return self.lift(1)

    def lift(self, c) -> QuadExtNumber:
        if isinstance(c, QuadExtNumber):
            return c
        if not isinstance(c, PadicNumber):
            c = PadicNumber.from_rational(Fraction(c), self.ext.prime, self.rel)
        return QuadExtNumber.from_base(self.ext, c)


def _ext_horner(fc, x: QuadExtNumber) -> QuadExtNumber:
    acc = None
    for c in reversed(fc):
        acc = c if acc is None else acc * x + c
    return acc


def _ext_sqrt(F: _ExtOps, z: QuadExtNumber) -> QuadExtNumber:
    """Square root of a unit of the unramified extension: brute-force the
    residue, then Newton."""
    ext, p = F.ext, F.ext.prime
    za, zb = z.residue_pair()
    start = None
    for ra in range(p):
        for rb in range(p):
            if ((ra * ra + ext.d * rb * rb) % p == za
                    and (2 * ra * rb) % p == zb):
                start = (ra, rb)
                break
        if start is not None:
            break
    if start is None:
        raise ArithmeticError("residue is not a square in the extension")
    x = QuadExtNumber(ext, PadicNumber.from_rational(start[0], p, F.rel),
                      PadicNumber.from_rational(start[1], p, F.rel))
    half = F.lift(Fraction(1, 2))
    for _ in range(64):
        d = x * x - z
        if d.is_zeroish():
            return x
        x = (x + z / x) * half
    raise ArithmeticError("Newton iteration for the extension sqrt stalled")


def _ext_newton_root(F: _ExtOps, fc, x0: QuadExtNumber) -> QuadExtNumber:
    """Root of f near a simple residue root x0 over the extension."""
    fpc = [fc[i] * i for i in range(1, len(fc))]
    x = x0
    for _ in range(64):
        v = _ext_horner(fc, x)
        if v.is_zeroish():
            return x
        x = x - v / _ext_horner(fpc, x)
    raise ArithmeticError("Newton iteration for the extension root stalled")


def _ext_center_lambda(C: HyperellipticCurve, wd: Differential, key,
                       ext: QuadExtension, p: int, T: int, rel: int):
    """Antiderivative coefficients of wd on a disc whose center needs
    extension coordinates; returns (lambda coefficients, x-center, weier)."""
    _, _, xa, xb, ya, yb = key
    if ext.e != 1:
        raise ValueError("extension discs are labeled over the unramified field")
    F = _ExtOps(ext, rel)
    fc = [F.lift(k) for k in C.f_coeffs]
    xc = QuadExtNumber(ext, PadicNumber.from_rational(xa, p, rel),
                       PadicNumber.from_rational(xb, p, rel))
    weier = (ya, yb) == (0, 0)
    if weier:
        # t = y, x(t) the even series solving f(x(t)) = t^2
        xc = _ext_newton_root(F, fc, xc)
        xs = _weierstrass_x_coeffs(F, fc, xc, T)
        numer = [F.lift(wd.c1) + xs[0] * wd.c2] + [c * wd.c2 for c in xs[1:]]
        half_dxdt = [xs[j + 2] * Fraction(j + 2, 2) for j in range(len(xs) - 2)]
        a = _lmul(F, numer, half_dxdt, T + 1)
    else:
        yc = _ext_sqrt(F, _ext_horner(fc, xc))
        if yc.residue_pair() != (ya, yb):
            yc = -yc
        if yc.residue_pair() != (ya, yb):
            raise ArithmeticError("center sign mismatch on the disc label")
        ys = _affine_y_coeffs(F, fc, xc, yc, T)
        numer = [F.lift(wd.c1) + xc * wd.c2, F.lift(wd.c2)]
        inv2y = _linv(F, [c * 2 for c in ys], T + 1)
        a = _lmul(F, numer, inv2y, T + 1)
    lam = [F.zero()]
    lam.extend(a[i] * Fraction(1, i + 1) for i in range(len(a)))
    return lam, xc, weier


def _ext_param(P: CurvePoint, xc: QuadExtNumber, weier: bool) -> QuadExtNumber:
    t = P.y if weier else P.x - xc
    if not isinstance(t, QuadExtNumber):
        raise ValueError("extension-disc endpoints need extension coordinates")
    return t


def _ext_eval(p: int, lam, t: QuadExtNumber) -> QuadExtNumber:
    """Horner value of the antiderivative coefficients at t, capped by the
    same tail bound a penalized series of that length would carry."""
    if t.is_exact_zero():
        return lam[0]
    vt = t.valuation_p()
    if vt <= 0:
        raise ValueError("series evaluation requires v(t) > 0")
    acc = None
    for c in reversed(lam):
        acc = c if acc is None else acc * t + c
    zero = PadicNumber.exact_zero(p)
    dummy = PadicPowerSeries(p, [zero] * len(lam), 0, 0, tail_log_penalty=True)
    cap = int(math.floor(dummy._eval_tail_cap(Fraction(vt))))
    return QuadExtNumber(acc.ext, acc.a.with_abs_cap(cap), acc.b.with_abs_cap(cap))


# -- the Jacobian logarithm --------------------------------------------------

def _basis(p: int, rel: int):
    return (Differential(1, 0, p, rel), Differential(0, 1, p, rel))


_DISC_LAMBDA_CACHE: dict = {}


def _basis_lambdas(C: HyperellipticCurve, disc_key, p: int, T: int, rel: int):
    """(center, (antiderivative of dx/2y, antiderivative of x dx/2y)) for a
    residue disc over F_p, cached per curve and precision."""
    ck = (C.f_coeffs, disc_key, p, T, rel)
    hit = _DISC_LAMBDA_CACHE.get(ck)
    if hit is None:
        center = disc_center(C, disc_key, p, rel)
        lams = tuple(expand_differential(C, w, center, p, T, rel).antiderivative()
                     for w in _basis(p, rel))
        hit = (center, lams)
        _DISC_LAMBDA_CACHE[ck] = hit
    return hit


def _to_padic_divisor(D: MumfordDivisor, p: int, rel: int) -> MumfordDivisor:
    if isinstance(D.domain, PadicDomain):
        if D.domain.p != p:
            raise ValueError("divisor lives over a different prime")
        return D
    dom = PadicDomain(p, rel)
    conv = lambda c: PadicNumber.from_rational(Fraction(c), p, rel)
    return MumfordDivisor(dom, [conv(c) for c in D.u], [conv(c) for c in D.v])


def log_jacobian(C: HyperellipticCurve, D: MumfordDivisor, p: int,
                 m_hint: int | None = None,
                 rel: int = DEFAULT_PRECISION) -> LogVector:
    """Logarithm of the class of D: (1/m) * tiny integrals along m*D, where
    m is the order of the reduction of D in J(F_p)."""
    if not C.good_reduction(p):
        raise ValueError("the logarithm needs a prime of good reduction")
    dbar = reduce_divisor(C, D, p, rel)
    if m_hint is None:
        m = enumerate_Fp_jacobian(C, p).element_order(dbar)
    else:
        m = int(m_hint)
        if m < 1 or not scalar_mul(C, m, dbar).is_identity():
            raise ValueError("m_hint does not kill the reduced class")
    if isinstance(D.domain, RationalDomain):
        # exact ladder: no capped-precision pivots, and a torsion class
        # dies to the exact identity instead of an uncertifiable zero
        delta = scalar_mul(C, m, D)
    else:
        delta = scalar_mul(C, m, _to_padic_divisor(D, p, rel))
    l1, l2 = _kernel_log(C, delta, p, rel)
    inv_m = Fraction(1, m)
    return LogVector(l1 * inv_m, l2 * inv_m)


def _kernel_log(C: HyperellipticCurve, delta: MumfordDivisor, p: int, rel: int):
    """Basis tiny integrals for a divisor class in the kernel of reduction.

    The reduction being the canonical class forces the support into one of:
    empty, a single point in the disc at infinity, two points at infinity,
    or an affine pair P, Q with Q-bar = (iota P)-bar, integrated as a single
    path from iota(Q) to P inside P's disc.
    """
    zero = PadicNumber.exact_zero(p)
    deg = delta.degree()
    if deg == 0:
        return zero, zero
    T = TRUNCATION_FACTOR * rel
    uc = [_as_padic(c, p, rel) for c in delta.u]
    vc = [_as_padic(c, p, rel) for c in delta.v]
    vc += [zero] * (deg + 1 - len(vc))
    if deg == 1:
        x1 = -(uc[0] / uc[1])
        if not _drops_to_infinity(x1):
            raise DecompositionFailureError(
                "degree-1 kernel class with integral support")
        P = CurvePoint(x1, vc[0] + vc[1] * x1, False)
        _, lams = _basis_lambdas(C, FP_INFINITY, p, T, rel)
        t = _infinity_param(P, p, rel)
        return tuple(lam.evaluate(t) for lam in lams)
    # degree 2: split u
    if isinstance(delta.domain, RationalDomain):
        dq = (Fraction(delta.u[1]) ** 2
              - 4 * Fraction(delta.u[2]) * Fraction(delta.u[0]))
        disc = PadicNumber.from_rational(dq, p, rel)
    else:
        disc = uc[1] * uc[1] - uc[2] * uc[0] * 4
    if disc.is_zeroish():
        return _near_doubled_log(C, uc, vc, disc, p, T, rel)
    root = padic_sqrt(disc)
    inv2a = (uc[2] * 2).inverse()
    if isinstance(root, PadicNumber):
        xs = [(-uc[1] + root) * inv2a, (-uc[1] - root) * inv2a]
        ys = [vc[0] + vc[1] * x for x in xs]
        drops = [_drops_to_infinity(x) for x in xs]
        if all(drops):
            _, lams = _basis_lambdas(C, FP_INFINITY, p, T, rel)
            ts = [_infinity_param(CurvePoint(x, y, False), p, rel)
                  for x, y in zip(xs, ys)]
            return tuple(lam.evaluate(ts[0]) + lam.evaluate(ts[1])
                         for lam in lams)
        if any(drops):
            raise DecompositionFailureError(
                "kernel class with mixed affine and infinite support")
        return _same_disc_log(C, CurvePoint(xs[0], ys[0], False),
                              CurvePoint(xs[1], -ys[1], False), p, T, rel)
    # conjugate pair over a quadratic extension
    ext = root.ext
    F = _ExtOps(ext, rel)
    x1 = (F.lift(-uc[1]) + root) * F.lift(inv2a)
    y1 = F.lift(vc[0]) + F.lift(vc[1]) * x1
    if _drops_to_infinity(x1):
        _, lams = _basis_lambdas(C, FP_INFINITY, p, T, rel)
        t = _infinity_param(CurvePoint(x1, y1, False), p, rel)
        return tuple(lam.evaluate(t).trace() for lam in lams)
    # sigma(P)-bar = iota(P)-bar forces the x-residue into F_p
    xa, xb = x1.residue_pair()
    ya, yb = y1.residue_pair()
    if xb != 0:
        raise DecompositionFailureError(
            "kernel class reducing outside the F_p locus")
    P_to = CurvePoint(x1, y1, False)
    P_frm = CurvePoint(x1.conjugate(), -(y1.conjugate()), False)
    if yb != 0:
        # y-residue generates F_{p^2}: f(x-bar) is a non-residue and the
        # disc has no center over Q_p
        vals = _ext_pair_log(C, ("ext", ext.kind, xa, xb, ya, yb),
                             P_to, P_frm, ext, p, T, rel)
        return vals
    return _same_disc_log(C, P_to, P_frm, p, T, rel)


def _same_disc_log(C: HyperellipticCurve, P_to: CurvePoint, P_frm: CurvePoint,
                   p: int, T: int, rel: int):
    key = _residue_disc_key(C, P_to, p)
    if key != _residue_disc_key(C, P_frm, p):
        raise DecompositionFailureError(
            "kernel endpoints land in distinct residue discs")
    if key == FP_INFINITY or _is_ext_key(key):
        raise DecompositionFailureError("unexpected disc label for an affine pair")
    center, lams = _basis_lambdas(C, key, p, T, rel)
    out = []
    for lam in lams:
        val = (lam.evaluate(_disc_param(P_to, center, p, rel))
               - lam.evaluate(_disc_param(P_frm, center, p, rel)))
        if isinstance(val, QuadExtNumber):
            val = val.base_part_checked()
        out.append(val)
    return tuple(out)


def _ext_pair_log(C, key, P_to, P_frm, ext, p, T, rel):
    wds = _basis(p, rel)
    out = []
    for wd in wds:
        lam, xc, weier = _ext_center_lambda(C, wd, key, ext, p, T, rel)
        val = (_ext_eval(p, lam, _ext_param(P_to, xc, weier))
               - _ext_eval(p, lam, _ext_param(P_frm, xc, weier)))
        out.append(val.base_part_checked())
    return tuple(out)


def _near_doubled_log(C, uc, vc, disc, p, T, rel):
    """Kernel class whose two support points cannot be separated: integrate
    from the midpoint's involute and cap by the perturbation size.

    The true roots sit at x0 +- eps with 2 v(eps) >= v(disc); the basis
    antiderivatives have integral coefficients in the disc parameter, so
    |lambda(t + dt) - lambda(t)| <= |dt| bounds the error of treating the
    class as exactly doubled.
    """
    x0 = -(uc[1] / (uc[2] * 2))
    y0 = vc[0] + vc[1] * x0
    if disc.is_exact_zero():
        k_eps = None
    else:
        k_eps = int(disc.valuation) // 2
    if _drops_to_infinity(x0):
        _, lams = _basis_lambdas(C, FP_INFINITY, p, T, rel)
        t = _infinity_param(CurvePoint(x0, y0, False), p, rel)
        out = [lam.evaluate(t) * 2 for lam in lams]
        # dt/dx has positive valuation on the disc at infinity
        if k_eps is not None:
            out = [v.with_abs_cap(k_eps) for v in out]
        return tuple(out)
    # affine doubled support reduces to a Weierstrass point; t = y there.
    # A midpoint that reduces anywhere else means the zeroish discriminant
    # was precision erosion, not a genuine double root: retryable.
    key = _residue_disc_key(C, CurvePoint(x0, y0, False), p)
    if key == FP_INFINITY or _is_ext_key(key):
        raise PrecisionLossError("eroded kernel data: midpoint is not affine")
    fbar = 0
    for k in reversed(C.f_coeffs):
        fbar = (fbar * key[0] + k) % p
    if key[1] % p != 0 or fbar % p != 0:
        raise PrecisionLossError(
            "eroded kernel data: midpoint does not reduce to a branch point")
    center, lams = _basis_lambdas(C, key, p, T, rel)
    cap = None
    if k_eps is not None:
        if vc[1].is_exact_zero():
            cap = None  # v is constant: the parameter y0 is exact in eps
        else:
            # dy = v'(x) dx along the support, so |dt| <= |v1| |eps|
            cap = k_eps + int(vc[1].valuation)
    out = []
    for lam in lams:
        val = lam.evaluate(y0) - lam.evaluate(-y0)
        if cap is not None:
            val = val.with_abs_cap(cap)
        out.append(val)
    return tuple(out)


# -- annihilating form and transversality -----------------------------------

def annihilating_form(gamma_log: LogVector) -> AnnihilatingForm:
    """The 1-form (up to scaling) killing the line spanned by gamma_log."""
    if gamma_log.l1.is_zeroish() and gamma_log.l2.is_zeroish():
        raise ValueError(
            "torsion-generator: the logarithm vector vanishes at precision")
    w = Differential(gamma_log.l2, -gamma_log.l1).normalized()
    return AnnihilatingForm(w, gamma_log)


def transversality_certificate(C: HyperellipticCurve, w, Q: CurvePoint, p: int,
                               rel: int = DEFAULT_PRECISION):
    """(True, v(a0)) when w is certifiably nonvanishing at the center of Q's
    residue disc, (False, None) when it vanishes at working precision."""
    try:
        v = v_of_w(C, _underlying(w), Q, p, rel)
    except TransversalityError:
        return False, None
    return True, v


# -- Strassmann zero counts per disc ----------------------------------------

class DiscCertificate:
    """Replayable record of an analytic zero count on one residue disc."""

    __slots__ = ("center", "zero_count", "known_count", "n", "v_w", "prime",
                 "precision", "truncation_order", "lambda_coefficients",
                 "tail_valuation_bound")

    def __init__(self, center, zero_count, known_count, n, v_w, prime,
                 precision, truncation_order, lambda_coefficients,
                 tail_valuation_bound=None):
        self.center = center
        self.zero_count = zero_count
        self.known_count = known_count
        self.n = n
        self.v_w = v_w
        self.prime = prime
        self.precision = precision
        self.truncation_order = truncation_order
        self.lambda_coefficients = lambda_coefficients
        self.tail_valuation_bound = tail_valuation_bound

    @property
    def contains_known_point(self) -> bool:
        return self.known_count > 0

    @property
    def resolved(self) -> bool:
        """Every analytic zero is accounted for by a known rational point."""
        return self.zero_count == self.known_count

    def __repr__(self):
        return ("DiscCertificate(center=%r, zeros=%d, known=%d, n=%d, p=%d)"
                % (self.center, self.zero_count, self.known_count,
                   self.n, self.prime))


def disc_zero_count(C: HyperellipticCurve, w, fp_point, p: int, n: int = 1,
                    known_points=(), rel: int = DEFAULT_PRECISION) -> DiscCertificate:
    """Strassmann count of zeros of the antiderivative of w on the depth-n
    sub-disc around the canonical center of an F_p-point's residue disc.

    The series counted is kappa + int(w), kappa the pairing of w with the
    logarithm of [center - infinity], so its zeros are exactly the points
    where the full Coleman function based at infinity vanishes.
    """
    if not C.good_reduction(p):
        raise ValueError("zero counts need a prime of good reduction")
    wd = _underlying(w).normalized()
    T = TRUNCATION_FACTOR * rel
    center = disc_center(C, fp_point, p, rel)
    if center.at_infinity or center.y.is_exact_zero():
        # [center - infinity] is trivial or 2-torsion: kappa = 0 exactly
        kappa = PadicNumber.exact_zero(p)
    else:
        D = embed_point(C, center, CurvePoint.infinity(),
                        domain=PadicDomain(p, rel))
        L = log_jacobian(C, D, p, rel=rel)
        kappa = wd.c1 * L.l1 + wd.c2 * L.l2
    a = expand_differential(C, wd, center, p, T, rel)
    a0 = a.coeff_of_degree(0)
    v_w = None if a0.is_zeroish() else int(a0.valuation)
    series = PadicPowerSeries(p, [kappa], _INF, 0) \
        + a.antiderivative().rescale_argument(n)
    count = strassmann_count(series)
    inside = 0
    for Q in known_points:
        if reduce_point(C, Q, p) != fp_point:
            continue
        t = _disc_param(Q, center, p, rel)
        vt = t.valuation_p() if isinstance(t, QuadExtNumber) else t.valuation
        if vt >= n:
            inside += 1
    if count < inside:
        raise ArithmeticError(
            "zero count %d below the %d known points of the disc" % (count, inside))
    return DiscCertificate(center=fp_point, zero_count=count, known_count=inside,
                           n=n, v_w=v_w, prime=p, precision=rel,
                           truncation_order=series.truncation_order,
                           lambda_coefficients=tuple(series.coeffs),
                           tail_valuation_bound=series.tail_valuation_bound)


# -- anchored series and the single-point criterion --------------------------

def point_anchored_series(C: HyperellipticCurve, w, Q: CurvePoint, p: int,
                          n: int = 1, rel: int = DEFAULT_PRECISION) -> PadicPowerSeries:
    """Antiderivative of w as a series in t/p^n, anchored at Q itself with
    constant term exactly 0 (so r = 0 is the zero at Q)."""
    wd = _underlying(w)
    T = TRUNCATION_FACTOR * rel
    if Q.at_infinity:
        return expand_differential(C, wd, Q, p, T, rel) \
            .antiderivative().rescale_argument(n)
    y0 = _as_padic(Q.y, p, rel)
    if y0.is_exact_zero() or y0.valuation == 0:
        # Q anchors its own expansion: branch point (t = y) or ordinary disc
        return expand_differential(C, wd, Q, p, T, rel) \
            .antiderivative().rescale_argument(n)
    # Q sits above a Weierstrass point without being one: recenter the disc
    # series t = y at t0 = y(Q)
    key = reduce_point(C, Q, p)
    center = disc_center(C, key, p, rel)
    lam = expand_differential(C, wd, center, p, T, rel).antiderivative()
    return _recentered_series(lam, y0).rescale_argument(n)


def _recentered_series(lam: PadicPowerSeries, t0: PadicNumber) -> PadicPowerSeries:
    """lam(t0 + s) - lam(t0) as a series in s, for v(t0) >= 1.

    The polynomial part shifts exactly; the tail contributes at least
    M - k v(t0) to the degree-k coefficient, M the tail cap of lam at t0.
    """
    if lam.shift != 0:
        raise ValueError("shift-0 series required")
    if t0.is_zeroish() or t0.valuation < 1:
        raise ValueError("recentering requires certified v(t0) >= 1")
    p = lam.prime
    v0 = Fraction(int(t0.valuation))
    bs = _taylor_coeffs(None, list(lam.coeffs), t0)
    M = lam._eval_tail_cap(v0)
    if M != _INF:
        bs = [b.with_abs_cap(int(math.floor(M - k * v0)))
              for k, b in enumerate(bs)]
    bs[0] = PadicNumber.exact_zero(p)
    # for d > T the tail contributions keep the penalized shape: the log
    # term grows by at most 1 per unit of degree while v(t0) >= 1
    return PadicPowerSeries(p, bs, lam.tail_valuation_bound, 0,
                            lam.tail_log_penalty)


def single_point_criterion(v_w, p: int, n: int, series: PadicPowerSeries) -> bool:
    """True when the level-n series provably has exactly the one zero at the
    anchor: p odd, n past v_w, and the linear coefficient dominating every
    other certified coefficient and the truncation tail.  Never raises;
    any uncertainty returns False."""
    if v_w is None or p < 3 or n < v_w + 1:
        return False
    if series.shift != 0 or series.tail_log_penalty:
        return False
    b1 = series.coeff_of_degree(1)
    if b1.is_zeroish():
        return False
    v1 = b1.valuation
    b0 = series.coeff_of_degree(0)
    if not b0.is_exact_zero() and b0.valuation < v1:
        return False
    for k in range(2, series.truncation_order + 1):
        c = series.coeffs[k]
        if c.is_exact_zero():
            continue
        if c.valuation <= v1:
            return False
    if series.tail_valuation_bound != _INF and series.tail_valuation_bound <= v1:
        return False
    return True
