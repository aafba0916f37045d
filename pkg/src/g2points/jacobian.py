"""Jacobian arithmetic in Mumford representation.

A divisor class is held as a pair (u, v): u monic of degree <= 2, v of
degree < deg u, with u | v^2 - f.  The identity is (1, 0).  The group law
is Cantor composition and reduction, generic over the coefficient domains
in polys (exact rationals, F_p, capped-precision Q_p).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .curve import CurvePoint, HyperellipticCurve, count_Fp_points, count_Fp2_points
from .padic import (DEFAULT_PRECISION, PadicNumber, PrecisionLossError,
                    QuadExtNumber, padic_sqrt)
from .polys import (PadicDomain, PrimeFieldDomain, RationalDomain, poly_add,
                    poly_degree_certified, poly_divexact, poly_eq, poly_lift,
                    poly_mod, poly_monic, poly_mul, poly_neg, poly_trim,
                    poly_xgcd)


class MumfordDivisor:
    """(u, v) divisor class representative over a coefficient domain."""

    __slots__ = ("domain", "u", "v")

    def __init__(self, domain, u, v):
        self.domain = domain
        self.u = poly_trim(domain, list(u))
        self.v = poly_trim(domain, list(v))

    @classmethod
    def identity(cls, domain) -> "MumfordDivisor":
        return cls(domain, [domain.one()], [])

    def degree(self) -> int:
        return poly_degree_certified(self.domain, self.u)

    def is_identity(self) -> bool:
        return self.degree() == 0

    def neg(self) -> "MumfordDivisor":
        return MumfordDivisor(self.domain, self.u,
                              poly_neg(self.domain, self.v))

    def validate(self, C: HyperellipticCurve) -> None:
        dom = self.domain
        du = poly_degree_certified(dom, self.u)
        if du > 2:
            raise ValueError("u degree exceeds genus bound")
        if not dom.is_pivot(self.u[du]) or not dom.eq(self.u[du], dom.one()):
            raise ValueError("u is not monic")
        dv = len(poly_trim(dom, self.v)) - 1
        if dv >= du and self.v:
            raise ValueError("v degree not below u degree")
        f = poly_lift(dom, C.f_coeffs)
        resid = poly_mod(dom, poly_add(dom, poly_mul(dom, self.v, self.v),
                                       poly_neg(dom, f)), self.u)
        for c in resid:
            if dom.is_pivot(c):
                raise ValueError("u does not divide v^2 - f")

    def key(self):
        """Hashable form; exact domains only."""
        return tuple(self.u), tuple(self.v)

    def __eq__(self, other):
        if not isinstance(other, MumfordDivisor):
            return NotImplemented
        return (poly_eq(self.domain, self.u, other.u)
                and poly_eq(self.domain, self.v, other.v))

    __hash__ = None

    def __repr__(self):
        return "MumfordDivisor(u=%r, v=%r)" % (self.u, self.v)


def cantor_add(C: HyperellipticCurve, a: MumfordDivisor,
               b: MumfordDivisor) -> MumfordDivisor:
    """Group law: composition then reduction to degree <= 2."""
    dom = a.domain
    f = poly_lift(dom, C.f_coeffs)
    u1, v1, u2, v2 = a.u, a.v, b.u, b.v

    if u1 is u2:
        # doubling: gcd(u, u) = u structurally, no pivot decisions needed
        # (over Q_p a numeric u - u is zeroish, not certifiably zero)
        d1, e1, e2 = list(u1), [], [dom.one()]
    else:
        d1, e1, e2 = poly_xgcd(dom, u1, u2)
    d, c1, c2 = poly_xgcd(dom, d1, poly_add(dom, v1, v2))
    s1 = poly_mul(dom, c1, e1)
    s2 = poly_mul(dom, c1, e2)
    s3 = c2

    u3 = poly_divexact(dom, poly_mul(dom, u1, u2), poly_mul(dom, d, d))
    num = poly_add(dom, poly_add(dom,
                                 poly_mul(dom, poly_mul(dom, s1, u1), v2),
                                 poly_mul(dom, poly_mul(dom, s2, u2), v1)),
                   poly_mul(dom, s3, poly_add(dom, poly_mul(dom, v1, v2), f)))
    v3 = poly_mod(dom, poly_divexact(dom, num, d), u3)

    while poly_degree_certified(dom, u3) > 2:
        u3 = poly_divexact(dom, poly_add(dom, f, poly_neg(
            dom, poly_mul(dom, v3, v3))), u3)
        u3 = poly_monic(dom, u3)
        v3 = poly_mod(dom, poly_neg(dom, v3), u3)
    u3 = poly_monic(dom, u3)
    return MumfordDivisor(dom, u3, poly_mod(dom, v3, u3))


def scalar_mul(C: HyperellipticCurve, m: int,
               D: MumfordDivisor) -> MumfordDivisor:
    """m.D by double-and-add; negative m through the involution inverse."""
    if m < 0:
        return scalar_mul(C, -m, D.neg())
    if m >= 3 and isinstance(D.domain, PadicDomain) and D.degree() == 1:
        # 2D stays supported at the base point, so the plain ladder asks
        # for a gcd no capped-precision pivot can certify; multiples of
        # the doubled class move off the base disc
        E = cantor_add(C, D, D)
        if m % 2 == 0:
            return scalar_mul(C, m // 2, E)
        acc = scalar_mul(C, (m + 1) // 2, E)
        return cantor_add(C, acc, D.neg())
    acc = MumfordDivisor.identity(D.domain)
    base = D
    while m:
        if m & 1:
            acc = cantor_add(C, acc, base)
        m >>= 1
        if m:
            base = cantor_add(C, base, base)
    return acc


def _domain_for_point(Q: CurvePoint, p=None, rel=DEFAULT_PRECISION):
    if Q.at_infinity:
        return None
    if isinstance(Q.x, PadicNumber):
        return PadicDomain(Q.x.prime, rel)
    return RationalDomain()


def embed_point(C: HyperellipticCurve, Q: CurvePoint,
                P0: CurvePoint, domain=None) -> MumfordDivisor:
    """The class [Q - P0].  With P0 at infinity and Q affine: (x - x_Q, y_Q)."""
    if domain is None:
        domain = (_domain_for_point(Q) or _domain_for_point(P0)
                  or RationalDomain())

    def against_infinity(pt):
        if pt.at_infinity:
            return MumfordDivisor.identity(domain)
        x = domain.lift(pt.x) if not isinstance(pt.x, PadicNumber) else pt.x
        y = domain.lift(pt.y) if not isinstance(pt.y, PadicNumber) else pt.y
        return MumfordDivisor(domain, [domain.neg(x), domain.one()], [y])

    D = against_infinity(Q)
    if P0.at_infinity:
        return D
    return cantor_add(C, D, against_infinity(P0).neg())


def curve_preimage(C: HyperellipticCurve, D: MumfordDivisor, P0: CurvePoint):
    """The rational point Q with [Q - P0] = D, or None."""
    E = cantor_add(C, D, embed_point(C, P0, CurvePoint.infinity(),
                                     domain=D.domain))
    deg = E.degree()
    if deg == 0:
        return CurvePoint.infinity()
    if deg == 1:
        x = E.domain.neg(E.u[0])
        y = E.v[0] if E.v else E.domain.zero()
        return CurvePoint.affine(x, y)
    return None


# -- F_p enumeration ---------------------------------------------------------

class FpJacobian:
    """The full group J(F_p): element list, order, exponent."""

    __slots__ = ("curve", "prime", "elements", "order", "exponent", "_index")

    def __init__(self, curve, prime, elements, order, exponent):
        self.curve = curve
        self.prime = prime
        self.elements = elements
        self.order = order
        self.exponent = exponent
        self._index = {el.key(): i for i, el in enumerate(elements)}

    def index_of(self, D: MumfordDivisor) -> int:
        return self._index[D.key()]

    def __contains__(self, D: MumfordDivisor) -> bool:
        return D.key() in self._index

    def element_order(self, D: MumfordDivisor) -> int:
        """Order of D, via the factored group order."""
        ident = MumfordDivisor.identity(D.domain)
        o = self.order
        for q in _prime_factors(self.order):
            while o % q == 0 and scalar_mul(self.curve, o // q, D) == ident:
                o //= q
        if not scalar_mul(self.curve, o, D) == ident:
            raise ArithmeticError("order routine failed Lagrange check")
        return o


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


_enumeration_cache: dict = {}


def enumerate_Fp_jacobian(C: HyperellipticCurve, p: int) -> FpJacobian:
    """All Mumford pairs over F_p, cross-checked against the zeta identity
    built from |C(F_p)| and |C(F_{p^2})|."""
    ck = (tuple(C.f_coeffs), p)
    if ck in _enumeration_cache:
        return _enumeration_cache[ck]
    if not C.good_reduction(p):
        raise ValueError("curve has bad reduction at %d" % p)
    if p > 50:
        raise ValueError("enumeration is desk-scale only (p <= 50)")
    dom = PrimeFieldDomain(p)
    f = poly_lift(dom, C.f_coeffs)
    els = [MumfordDivisor.identity(dom)]

    for u0 in range(p):
        fx = 0
        for c in reversed(f):
            fx = (fx * (-u0) + c) % p
        for y in _sqrts_mod(fx, p):
            els.append(MumfordDivisor(dom, [u0, 1], [y] if y else []))

    for u1 in range(p):
        for u0 in range(p):
            u = [u0, u1, 1]
            r = poly_mod(dom, f, u)
            r0 = r[0] if len(r) > 0 else 0
            r1 = r[1] if len(r) > 1 else 0
            # v = v1 x + v0 with v^2 = f mod u:
            #   2 v1 v0 - v1^2 u1 = r1 and v0^2 - v1^2 u0 = r0
            if r1 == 0:
                for v0 in _sqrts_mod(r0, p):
                    els.append(MumfordDivisor(dom, u, [v0] if v0 else []))
            for v1 in range(1, p):
                v0 = (r1 + v1 * v1 % p * u1) * pow(2 * v1, -1, p) % p
                if (v0 * v0 - v1 * v1 % p * u0) % p == r0:
                    els.append(MumfordDivisor(dom, u, poly_trim(dom, [v0, v1])))

    order = len(els)
    n1 = count_Fp_points(C, p)
    n2 = count_Fp2_points(C, p)
    s1 = p + 1 - n1
    s2 = (s1 * s1 - (p * p + 1 - n2)) // 2
    zeta_order = 1 - s1 + s2 - p * s1 + p * p
    if order != zeta_order:
        raise ArithmeticError(
            "enumeration found %d elements but zeta identity gives %d"
            % (order, zeta_order))

    ident = els[0]
    exponent = 1
    factors = _prime_factors(order)
    for el in els:
        if scalar_mul(C, exponent, el) == ident:
            continue
        o = order
        for q in factors:
            while o % q == 0 and scalar_mul(C, o // q, el) == ident:
                o //= q
        exponent = exponent * o // math.gcd(exponent, o)
    J = FpJacobian(C, p, els, order, exponent)
    _enumeration_cache[ck] = J
    return J


def _sqrts_mod(a, p):
    from .padic import legendre_symbol, sqrt_mod_p
    a %= p
    if a == 0:
        return [0]
    if legendre_symbol(a, p) != 1:
        return []
    y = sqrt_mod_p(a, p)
    return [y, p - y]


# -- reduction J(Q) -> J(F_p) ------------------------------------------------

def _vp_fraction(x: Fraction, p: int):
    if x == 0:
        return math.inf
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _decide_negative_valuation(x) -> bool:
    """True if v(x) < 0, False if v(x) >= 0; raises if undecidable."""
    if isinstance(x, QuadExtNumber):
        v = x.valuation_p()
        if (x.a.is_zeroish() or x.b.is_zeroish()) and v < 0:
            raise PrecisionLossError("root valuation sign unresolved")
        return v < 0
    if x.is_exact_zero():
        return False
    if x.is_zeroish():
        if x.valuation >= 0:
            return False
        raise PrecisionLossError("root valuation sign unresolved")
    return x.valuation < 0


def _residue_of(x, p):
    if isinstance(x, QuadExtNumber):
        return x.residue_pair()
    return x.residue()


def reduce_divisor(C: HyperellipticCurve, D: MumfordDivisor, p: int,
                   rel: int = DEFAULT_PRECISION) -> MumfordDivisor:
    """Reduce a divisor class to J(F_p), pointwise: factor u over Q_p
    (or its quadratic extension), reduce the two supporting points,
    and re-assemble the F_p class.  Points with v(x) < 0 drop to
    infinity.  D may be given over Q or over Q_p itself."""
    if not C.good_reduction(p):
        raise ValueError("curve has bad reduction at %d" % p)
    fdom = PrimeFieldDomain(p)
    if isinstance(D.domain, PadicDomain):
        if D.domain.p != p:
            raise ValueError("divisor is %d-adic, reduction asked at %d"
                             % (D.domain.p, p))
        return _reduce_padic(C, fdom, D, p)
    return _reduce_rational(C, fdom, D, p, rel)


def _reduce_rational(C, fdom, D, p, rel):
    deg = len(poly_trim(RationalDomain(), D.u)) - 1
    if deg == 0:
        return MumfordDivisor.identity(fdom)

    def as_padic(q):
        return PadicNumber.from_rational(Fraction(q), p, rel)

    if deg == 1:
        x1 = -Fraction(D.u[0]) / Fraction(D.u[1])
        if _vp_fraction(x1, p) < 0:
            return MumfordDivisor.identity(fdom)
        y1 = Fraction(D.v[0]) if D.v else Fraction(0)
        return _fp_point_class(fdom, as_padic(x1).residue(),
                               as_padic(y1).residue())

    u2c, u1c, u0c = (Fraction(D.u[i]) for i in (2, 1, 0))
    disc = u1c * u1c - 4 * u2c * u0c
    vcoe = [Fraction(c) for c in D.v] + [Fraction(0)] * (2 - len(D.v))

    if disc == 0:
        x = -u1c / (2 * u2c)
        if _vp_fraction(x, p) < 0:
            return MumfordDivisor.identity(fdom)
        y = vcoe[0] + vcoe[1] * x
        return _doubled_point_class(C, fdom, as_padic(x).residue(),
                                    as_padic(y).residue())

    root = padic_sqrt(as_padic(disc))
    return _assemble_from_roots(C, fdom, root, as_padic(-u1c),
                                as_padic(Fraction(1, 2) / u2c),
                                [as_padic(c) for c in vcoe], p)


def _reduce_padic(C, fdom, D, p):
    uc = list(D.u)
    deg = len(uc) - 1
    if deg >= 1 and uc[-1].is_zeroish():
        raise PrecisionLossError("leading coefficient of u is uncertified")
    if deg == 0:
        return MumfordDivisor.identity(fdom)
    vcoe = list(D.v) + [PadicNumber.exact_zero(p)] * (2 - len(D.v))
    if deg == 1:
        x1 = -(uc[0] / uc[1])
        if _decide_negative_valuation(x1):
            return MumfordDivisor.identity(fdom)
        return _fp_point_class(fdom, x1.residue(), vcoe[0].residue())
    disc = uc[1] * uc[1] - uc[2] * uc[0] * 4
    if disc.is_zeroish():
        # doubled root, or a pair congruent to working precision; the
        # midpoint value decides every subcase (a pair whose y-residues
        # cancel gives residue 0 there, hence the canonical class)
        x = -(uc[1] / (uc[2] * 2))
        if _decide_negative_valuation(x):
            return MumfordDivisor.identity(fdom)
        y = vcoe[0] + vcoe[1] * x
        return _doubled_point_class(C, fdom, x.residue(), y.residue())
    root = padic_sqrt(disc)
    return _assemble_from_roots(C, fdom, root, -uc[1],
                                (uc[2] * 2).inverse(), vcoe, p)


def _assemble_from_roots(C, fdom, root, minus_b, inv2a, vcoe, p):
    """F_p class supported at the roots (minus_b +- root) * inv2a."""
    if isinstance(root, PadicNumber):
        xs = [(minus_b + root) * inv2a, (minus_b - root) * inv2a]
        ys = [vcoe[0] + vcoe[1] * x for x in xs]
        drop = [_decide_negative_valuation(x) for x in xs]
        if all(drop):
            return MumfordDivisor.identity(fdom)
        if any(drop):
            k = drop.index(False)
            return _fp_point_class(fdom, xs[k].residue(), ys[k].residue())
        xr = [x.residue() for x in xs]
        yr = [y.residue() for y in ys]
        if xr[0] != xr[1]:
            return _chord_class(fdom, xr, yr)
        if yr[0] != yr[1] or yr[0] == 0:
            return MumfordDivisor.identity(fdom)  # involution pair or 2W
        return _doubled_point_class(C, fdom, xr[0], yr[0])

    # conjugate roots in a quadratic extension
    ext = root.ext

    def lift(z):
        return QuadExtNumber.from_base(ext, z)

    x1 = (lift(minus_b) + root) * lift(inv2a)
    y1 = lift(vcoe[0]) + lift(vcoe[1]) * x1
    if _decide_negative_valuation(x1):
        return MumfordDivisor.identity(fdom)  # conjugates share valuation
    xa, xb = x1.residue_pair()
    ya, yb = y1.residue_pair()
    if ext.e == 2 or xb == 0:
        # both roots reduce into F_p with the same x-residue
        if ext.e == 2 or yb == 0:
            if ya == 0:
                return MumfordDivisor.identity(fdom)
            return _doubled_point_class(C, fdom, xa, ya)
        return MumfordDivisor.identity(fdom)  # y-residues are an involution pair
    # genuine F_{p^2} conjugate pair: trace/norm assembly
    c = ext.d % p
    u_bar = [(xa * xa - c * xb * xb) % p, (-2 * xa) % p, 1]
    v1bar = yb * pow(xb, -1, p) % p
    v0bar = (ya - v1bar * xa) % p
    out = MumfordDivisor(fdom, u_bar, poly_trim(fdom, [v0bar, v1bar]))
    out.validate(C)
    return out


def _fp_point_class(fdom, xr, yr):
    return MumfordDivisor(fdom, [(-xr) % fdom.p, 1], [yr] if yr else [])


def _chord_class(fdom, xr, yr):
    p = fdom.p
    slope = (yr[0] - yr[1]) * pow(xr[0] - xr[1], -1, p) % p
    v0 = (yr[0] - slope * xr[0]) % p
    u = [xr[0] * xr[1] % p, (-(xr[0] + xr[1])) % p, 1]
    return MumfordDivisor(fdom, u, poly_trim(fdom, [v0, slope]))


def _doubled_point_class(C, fdom, xr, yr):
    p = fdom.p
    if yr == 0:
        return MumfordDivisor.identity(fdom)  # doubled Weierstrass point
    fprime = 0
    for c in reversed(C.fprime_coeffs()):
        fprime = (fprime * xr + c) % p
    slope = fprime * pow(2 * yr, -1, p) % p
    u = [xr * xr % p, (-2 * xr) % p, 1]
    v0 = (yr - slope * xr) % p
    out = MumfordDivisor(fdom, u, poly_trim(fdom, [v0, slope]))
    out.validate(C)
    return out


def torsion_multiple_bound(C: HyperellipticCurve, primes) -> int:
    """gcd of |J(F_q)| over the given odd good primes; every rational
    torsion order divides it."""
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one good odd prime")
    g = 0
    for q in primes:
        g = math.gcd(g, enumerate_Fp_jacobian(C, q).order)
    return g


def filtration_level(C: HyperellipticCurve, D: MumfordDivisor, p: int,
                     rel: int = DEFAULT_PRECISION) -> int:
    """Largest n with min(v(l1), v(l2)) >= n for the log coordinates of D;
    requires D in the kernel of reduction.  Identity caps at the working
    precision."""
    from .coleman import log_jacobian
    lv = log_jacobian(C, D, p, rel=rel)
    vals = []
    floors = []
    for coord in (lv.l1, lv.l2):
        if coord.is_exact_zero():
            continue
        if coord.is_zeroish():
            floors.append(coord.valuation)
        else:
            vals.append(coord.valuation)
    if not vals:
        if not floors:
            return rel  # exact identity
        raise PrecisionLossError("log coordinates vanish at working precision")
    n = min(vals)
    if any(fl <= n for fl in floors):
        raise PrecisionLossError("log coordinate undecided at level boundary")
    return n
