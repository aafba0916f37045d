"""Acceptance suite: the binding end-to-end and property criteria.

Each test prints exactly one [acceptance] line so a log scrape shows the
pass/fail state of every criterion at a glance.
"""

import random
from fractions import Fraction

import pytest

from g2points.coleman import (annihilating_form, log_jacobian,
                              transversality_certificate)
from g2points.curve import (FP_INFINITY, CurvePoint, Differential,
                            HyperellipticCurve, disc_center,
                            expand_differential, fp_curve_points)
from g2points.jacobian import (MumfordDivisor, cantor_add, curve_preimage,
                               embed_point, enumerate_Fp_jacobian, scalar_mul)
from g2points.oracle import (exhaustive_jacobian, exhaustive_series_zeros,
                             naive_rational_points)
from g2points.padic import (PadicNumber, PadicPowerSeries, mahler_bound_holds,
                            padic_agree, strassmann_count,
                            with_precision_retry)
from g2points.polys import RationalDomain
from g2points.sieve import SieveContext, run

FLYNN = [0, 60, -112, 65, -14, 1]
CURVE2 = [1, 2, 0, 0, 0, 1]
AUX = (11, 13, 17, 23)


def _gamma():
    return MumfordDivisor(RationalDomain(), [Fraction(-3), Fraction(1)],
                          [Fraction(6)])


def _torsion():
    dom = RationalDomain()
    return tuple((MumfordDivisor(dom, [Fraction(-x), Fraction(1)], []), 2)
                 for x in (0, 1, 2, 5))


def _point_key(P: CurvePoint):
    return "infinity" if P.at_infinity else (P.x, P.y)


def _rlog(C, D, p):
    return with_precision_retry(lambda r: log_jacobian(C, D, p, rel=r), 20, 3)


def _announce(capsys, text):
    with capsys.disabled():
        print("\n[acceptance] " + text)


@pytest.fixture(scope="module")
def flynn():
    return HyperellipticCurve(FLYNN)


@pytest.fixture(scope="module")
def curve2():
    return HyperellipticCurve(CURVE2)


@pytest.fixture(scope="module")
def result(flynn):
    ctx = SieveContext(flynn, _gamma(), torsion=_torsion(), prime=7,
                       aux_primes=AUX, bound=20, rel=20)
    return run(ctx)


@pytest.fixture(scope="module")
def result_doubled(flynn):
    ctx = SieveContext(flynn, _gamma(), torsion=_torsion(), prime=7,
                       aux_primes=AUX, bound=20, rel=40)
    return run(ctx)


@pytest.fixture(scope="module")
def oracle_points(flynn):
    return naive_rational_points(flynn, 1000)


@pytest.fixture(scope="module")
def form7(flynn):
    return annihilating_form(_rlog(flynn, _gamma(), 7))


def test_criterion_1_end_to_end(result, oracle_points, capsys):
    assert result.status == "complete"
    assert result.survivor_count == 0
    found = {_point_key(r.point) for r in result.points}
    oracle = {_point_key(P) for P in oracle_points}
    assert found == oracle
    assert len(found) == 10
    _announce(capsys, "criterion 1 (end-to-end worked curve): PASS - status "
                      "complete, the 10 points match the height-1000 search")


def test_criterion_2_transversality_at_found_points(result, flynn, form7,
                                                    capsys):
    values = []
    for rec in result.points:
        ok, v = transversality_certificate(flynn, form7, rec.point, 7, rel=20)
        assert ok is True, rec
        assert isinstance(v, int) and v >= 0
        assert v == rec.v_w
        values.append(v)
    _announce(capsys, "criterion 2 (transversality witness): PASS - "
                      "nonvanishing at all 10 points, v(w) values %s"
                      % sorted(set(values)))


def test_criterion_3_single_point_cross_check(result, capsys):
    confirmed = 0
    for rec in result.points:
        if rec.criterion is True:
            assert strassmann_count(rec.series) == 1, rec
            confirmed += 1
    assert confirmed == 10
    _announce(capsys, "criterion 3 (depth criterion vs zero count): PASS - "
                      "strassmann count exactly 1 at all %d certified points"
              % confirmed)


def _mul_linear(coeffs, r):
    # multiply an ascending integer polynomial by (z - r)
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] -= r * c
        out[i + 1] += c
    return out


def test_criterion_4_mahler_derivative_bound(capsys):
    rng = random.Random(428741)
    for case in range(500):
        p = (3, 5, 7)[case % 3]
        d = rng.randint(1, 5)
        roots = []
        while len(roots) < d:
            if roots and rng.random() < 0.25:
                roots.append(rng.choice(roots))
            else:
                roots.append(p * rng.randint(-p * p, p * p))
        coeffs = [rng.randint(1, p - 1)]
        for r in roots:
            coeffs = _mul_linear(coeffs, r)
        f = PadicPowerSeries(p, [PadicNumber.from_int(c, p, 30)
                                 for c in coeffs])
        assert f.is_normal()
        zero_vals = [PadicNumber.from_int(r, p, 5).valuation for r in roots]
        x = PadicNumber.from_int(p * rng.randint(-p ** 3, p ** 3), p, 30)
        for k in (0, 1, 2):
            assert mahler_bound_holds(f, zero_vals, 1, x, k), \
                (p, coeffs, int(x.residue()), k)
    _announce(capsys, "criterion 4 (derivative bound on normal series): PASS "
                      "- 500 randomized polynomials, k in {0,1,2}, no "
                      "violations")


def test_criterion_5_logarithm_homomorphism(flynn, capsys):
    rng = random.Random(905217)
    gamma = _gamma()
    tors = [T for T, _ in _torsion()]
    cache = {}

    def key(D):
        return (tuple(D.u), tuple(D.v))

    def log_of(D, p):
        k = (p,) + key(D)
        if k not in cache:
            cache[k] = _rlog(flynn, D, p)
        return cache[k]

    def random_element():
        while True:
            D = scalar_mul(flynn, rng.randint(-3, 3), gamma)
            for T in tors:
                if rng.random() < 0.5:
                    D = cantor_add(flynn, D, T)
            if not D.is_identity():
                return D

    pairs = 0
    for p in (7, 11):
        pool = []
        seen = set()
        while len(pool) < 12:
            D = random_element()
            if key(D) not in seen:
                seen.add(key(D))
                pool.append(D)
        for _ in range(100):
            while True:
                D1, D2 = rng.choice(pool), rng.choice(pool)
                D12 = cantor_add(flynn, D1, D2)
                if not D12.is_identity():
                    break
            L1, L2, L12 = log_of(D1, p), log_of(D2, p), log_of(D12, p)
            assert padic_agree(L12.l1, L1.l1 + L2.l1), (p, key(D1), key(D2))
            assert padic_agree(L12.l2, L1.l2 + L2.l2), (p, key(D1), key(D2))
            pairs += 1
        # scalar compatibility on elements with a free part
        for a in (1, -2, 3, 2):
            D = scalar_mul(flynn, a, gamma)
            L = log_of(D, p)
            for k in (2, 3, 5):
                Lk = log_of(scalar_mul(flynn, k, D), p)
                assert padic_agree(Lk.l1, L.l1 * k), (p, a, k)
                assert padic_agree(Lk.l2, L.l2 * k), (p, a, k)
    assert pairs == 200
    _announce(capsys, "criterion 5 (logarithm homomorphism): PASS - 200 "
                      "random pairs at p in {7, 11} plus k in {2,3,5} "
                      "multiples, every claimed digit agrees")


def test_criterion_6_oracle_equivalences(flynn, curve2, oracle_points,
                                         capsys):
    # dual-path zero counts: polynomials built to split over Z_p on the
    # unit ball, so the analytic count and the residue-scanning oracle
    # count the same thing
    rng = random.Random(6617)
    for case in range(500):
        p = (3, 5, 7)[case % 3]
        planted = rng.randint(0, 4)
        coeffs = [rng.randint(1, p - 1)]
        for _ in range(planted):
            coeffs = _mul_linear(coeffs, rng.randint(-30, 30))
        if rng.random() < 0.5:
            # factor with no unit-ball zeros: 1 + p a z + p b z^2
            extra = [1, p * rng.randint(-9, 9), p * rng.randint(-9, 9)]
            out = [0] * (len(coeffs) + 2)
            for i, c in enumerate(coeffs):
                for j, e in enumerate(extra):
                    out[i + j] += c * e
            coeffs = out
        if rng.random() < 0.3:
            # root outside the unit ball: p s z - 1
            s = rng.randint(1, 5)
            out = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                out[i] -= c
                out[i + 1] += p * s * c
            coeffs = out
        series = PadicPowerSeries(p, [PadicNumber.from_int(c, p, 40)
                                      for c in coeffs])
        assert strassmann_count(series) == exhaustive_series_zeros(coeffs, p)
        assert strassmann_count(series) >= planted

    # group orders by independent enumeration strategies
    for C, p in ((curve2, 3), (flynn, 7), (flynn, 11)):
        J = enumerate_Fp_jacobian(C, p)
        assert (J.order, J.exponent) == exhaustive_jacobian(C, p)

    # embedding round trip on every oracle point
    roundtrips = 0
    for C, pts in ((flynn, oracle_points),
                   (curve2, naive_rational_points(HyperellipticCurve(CURVE2),
                                                  10))):
        base = CurvePoint.infinity()
        for P in pts:
            D = embed_point(C, P, base)
            assert curve_preimage(C, D, base) == P
            roundtrips += 1
    _announce(capsys, "criterion 6 (oracle equivalences): PASS - 500 zero "
                      "counts, 3 group orders, %d embedding round trips"
              % roundtrips)


def test_criterion_7_doubled_precision_agreement(result, result_doubled,
                                                 flynn, capsys):
    compared = 0
    assert result_doubled.status == result.status == "complete"
    assert result_doubled.N == result.N

    L20, L40 = _rlog(flynn, _gamma(), 7), \
        with_precision_retry(lambda r: log_jacobian(flynn, _gamma(), 7,
                                                    rel=r), 40, 3)
    assert padic_agree(L20.l1, L40.l1) and padic_agree(L20.l2, L40.l2)
    w20, w40 = annihilating_form(L20), annihilating_form(L40)
    assert padic_agree(w20.c1, w40.c1) and padic_agree(w20.c2, w40.c2)
    compared += 4

    by_key = {_point_key(r.point): r for r in result_doubled.points}
    assert set(by_key) == {_point_key(r.point) for r in result.points}
    for rec in result.points:
        twin = by_key[_point_key(rec.point)]
        assert (rec.v_w, rec.n, rec.zero_count, rec.criterion) == \
            (twin.v_w, twin.n, twin.zero_count, twin.criterion)
        for a, b in zip(rec.series.coeffs, twin.series.coeffs):
            assert padic_agree(a, b), _point_key(rec.point)
            compared += 1

    assert set(result.disc_certificates) == set(result_doubled.disc_certificates)
    for center, cert in result.disc_certificates.items():
        twin = result_doubled.disc_certificates[center]
        assert (cert.zero_count, cert.known_count, cert.v_w, cert.n) == \
            (twin.zero_count, twin.known_count, twin.v_w, twin.n)
        for a, b in zip(cert.lambda_coefficients, twin.lambda_coefficients):
            assert padic_agree(a, b), center
            compared += 1
    _announce(capsys, "criterion 7 (doubled-precision soundness): PASS - "
                      "%d values agree on all previously claimed digits"
              % compared)


def test_criterion_8_vanishing_order_parameter_independence(flynn, curve2,
                                                            capsys):
    # two admissible parameters per disc: the main path expands w in the
    # canonical parameter (x - x0, or y at a branch point); the second
    # valuation comes from the closed form of the leading coefficient in
    # the alternative parameter (y - y0, resp. (x - x0)/y), which is
    # (c1 + c2 x0) / f'(x0) at ordinary centers and c1 + c2 x0 at
    # branch centers
    forms = ((1, 0), (1, 1), (1, 2), (3, 2))
    candidates = []
    for C, primes in ((flynn, (7, 11, 13)), (curve2, (3, 5, 7))):
        for p in primes:
            for fp in fp_curve_points(C, p):
                if fp != FP_INFINITY:
                    candidates.append((C, p, fp))
    checked = 0
    for i, (C, p, fp) in enumerate(candidates):
        if checked == 50:
            break
        c1, c2 = forms[i % len(forms)]
        center = disc_center(C, fp, p, 20)
        fpx = PadicNumber.exact_zero(p)
        for c in reversed(C.fprime_coeffs()):
            fpx = fpx * center.x + PadicNumber.from_int(c, p, 20)
        if not center.y.is_exact_zero() and fpx.residue() == 0:
            continue  # y - y0 inadmissible: dy/dt vanishes at the center
        series = expand_differential(C, Differential(Fraction(c1),
                                                     Fraction(c2),
                                                     p=p, rel=20),
                                     center, p, 16, 20)
        a0 = series.coeff_of_degree(0)
        assert not a0.is_zeroish(), (p, fp)
        lead = PadicNumber.from_int(c1, p, 20) \
            + PadicNumber.from_int(c2, p, 20) * center.x
        alt = lead if center.y.is_exact_zero() else lead / fpx
        assert int(a0.valuation) == int(alt.valuation), (p, fp, c1, c2)
        checked += 1
    assert checked == 50
    _announce(capsys, "criterion 8 (v(w) parameter-independence): PASS - "
                      "50 discs, two admissible parameters each, exact "
                      "agreement")
