"""Capped-precision arithmetic: frozen examples and soundness properties."""

import math
import random
from fractions import Fraction

import pytest

from g2points.padic import (
    DEFAULT_PRECISION,
    InconclusiveTruncationError,
    NewtonPolygon,
    NotHenselLiftableError,
    PadicNumber,
    PadicPoly,
    PadicPowerSeries,
    PrecisionLossError,
    QuadExtension,
    QuadExtNumber,
    hensel_root,
    legendre_symbol,
    mahler_bound_holds,
    padic_sqrt,
    smallest_nonresidue,
    sqrt_mod_p,
    strassmann_count,
    vp_int,
    with_precision_retry,
)


def N(x, p=7, rel=DEFAULT_PRECISION):
    return PadicNumber.from_rational(Fraction(x), p, rel)


class TestBasicArithmetic:
    def test_seven_plus_seven(self):
        s = N(7) + N(7)
        assert s.valuation == 1
        assert s.unit_part() == 2

    def test_self_division_is_one(self):
        for x in [3, -14, Fraction(5, 9), 7 ** 4 * 11]:
            q = N(x) / N(x)
            assert q.valuation == 0
            assert q.unit_part() == 1

    def test_catastrophic_cancellation_flags_zeroish(self):
        # (1 + 7^20) - 1 at rel 20: every known digit cancels
        x = N(1 + 7 ** 20, rel=20)
        d = x - N(1, rel=20)
        assert d.is_zeroish()
        assert d.valuation == 20
        with pytest.raises(PrecisionLossError):
            d.inverse()

    def test_add_keeps_known_digits_of_other_summand(self):
        # O(7^5) + unit: digits below 5 survive
        z = PadicNumber.zeroish(7, 5)
        s = z + N(3)
        assert not s.is_zeroish()
        assert s.valuation == 0
        assert s.abs_precision == 5
        assert s.unit_part() == 3

    def test_mul_precision_is_min_rel(self):
        a = N(2, rel=5)
        b = N(21, rel=9)
        c = a * b
        assert c.valuation == 1
        assert c.rel_precision == 5
        assert c.unit_part() % 7 == 6

    def test_valuations_add_under_mul(self):
        a, b = N(Fraction(7, 2)), N(Fraction(4, 49))
        assert (a * b).valuation == -1

    def test_exact_zero_absorbing(self):
        z = PadicNumber.exact_zero(7)
        assert (z * N(12)).is_exact_zero()
        assert (N(12) + z).valuation == 0

    def test_rational_roundtrip(self):
        q = Fraction(-355, 113)
        x = N(q, rel=30)
        assert (x - q).is_zeroish()
        assert (x - q).valuation >= 30

    def test_negation_and_sub(self):
        assert (N(5) - 5).is_zeroish()
        assert (-N(3) + N(3)).is_zeroish()

    def test_pow(self):
        x = N(Fraction(2, 7))
        y = x ** 3
        assert y.valuation == -3
        assert (y - Fraction(8, 343)).is_zeroish()
        assert (x ** 0 - 1).is_zeroish()
        assert ((x ** -2) * x * x - 1).is_zeroish()

    def test_digit_string(self):
        assert str(N(0)) == "0"
        assert "O(7^" in str(N(8))

    def test_with_abs_cap(self):
        x = N(1, rel=20)
        y = x.with_abs_cap(3)
        assert y.abs_precision == 3
        assert (y - 1).is_zeroish()
        z = N(49).with_abs_cap(1)
        assert z.is_zeroish() and z.valuation == 1

    def test_mixed_int_fraction_ops(self):
        x = N(3)
        assert ((x + 4) - 7).is_zeroish()
        assert ((2 * x) / 3 - 2).is_zeroish()
        assert ((1 - x) + 2).is_zeroish()
        assert ((Fraction(1, 3) / x) * 9 - 1).is_zeroish()


class TestPrecisionSoundness:
    def test_recompute_at_higher_precision_agrees(self):
        rng = random.Random(11)
        for _ in range(200):
            a = Fraction(rng.randint(-500, 500), rng.randint(1, 60))
            b = Fraction(rng.randint(-500, 500), rng.randint(1, 60))
            if b == 0:
                continue
            for p in (3, 7, 11):
                lo = (N(a, p, 8) + N(b, p, 8)) * N(a, p, 8) / N(b, p, 8)
                hi = (N(a, p, 40) + N(b, p, 40)) * N(a, p, 40) / N(b, p, 40)
                diff = lo - hi
                assert diff.is_zeroish(), (a, b, p)

    def test_zeroish_propagates_through_mul(self):
        z = PadicNumber.zeroish(7, 4)
        y = z * N(49)
        assert y.is_zeroish() and y.valuation == 6


class TestSqrt:
    def test_sqrt_two_in_q7(self):
        # 2 = 3^2 mod 7, so the root stays in the base field
        r = padic_sqrt(N(2))
        assert isinstance(r, PadicNumber)
        assert (r * r - 2).is_zeroish()
        assert r.unit_part() % 7 in (3, 4)

    def test_sqrt_one(self):
        r = padic_sqrt(N(1))
        assert (r - 1).is_zeroish()

    def test_sqrt_seven_is_ramified_uniformizer(self):
        r = padic_sqrt(N(7))
        assert isinstance(r, QuadExtNumber)
        assert r.ext.kind == QuadExtension.RAMIFIED
        assert r.valuation == 1
        sq = r * r
        assert (sq.a - 7).is_zeroish()
        assert sq.b.is_zeroish()

    def test_sqrt_nonresidue_unramified(self):
        c = smallest_nonresidue(7)
        r = padic_sqrt(N(c))
        assert isinstance(r, QuadExtNumber)
        assert r.ext.kind == QuadExtension.UNRAMIFIED
        sq = r * r
        assert (sq.a - c).is_zeroish()

    def test_sqrt_twisted_ramified(self):
        c = smallest_nonresidue(7)
        r = padic_sqrt(N(7 * c))
        assert r.ext.kind == QuadExtension.RAMIFIED_TWIST
        assert r.valuation == 1
        assert (r * r - QuadExtNumber.from_base(r.ext, N(7 * c))).is_zeroish()

    def test_sqrt_squares_back_randomized(self):
        rng = random.Random(5)
        count = 0
        while count < 200:
            p = rng.choice([3, 5, 7, 11, 13])
            q = Fraction(rng.randint(-400, 400), rng.randint(1, 50))
            if q == 0:
                continue
            a = PadicNumber.from_rational(q, p, 16)
            r = padic_sqrt(a)
            sq = r * r
            if isinstance(sq, QuadExtNumber):
                assert (sq.a - a).is_zeroish() and sq.b.is_zeroish(), (q, p)
            else:
                assert (sq - a).is_zeroish(), (q, p)
            count += 1

    def test_declared_extension_mismatch(self):
        with pytest.raises(ValueError):
            padic_sqrt(N(7), ext=QuadExtension(7, QuadExtension.UNRAMIFIED))


class TestQuadExtension:
    def test_trace_and_conjugate(self):
        ext = QuadExtension(7, QuadExtension.UNRAMIFIED)
        x = QuadExtNumber(ext, N(3), N(5))
        assert (x.trace() - 6).is_zeroish()
        s = x + x.conjugate()
        assert s.b.is_zeroish()
        assert (s.a - 6).is_zeroish()

    def test_norm_multiplicative(self):
        ext = QuadExtension(7, QuadExtension.RAMIFIED)
        x = QuadExtNumber(ext, N(2), N(3))
        y = QuadExtNumber(ext, N(Fraction(1, 2)), N(-1))
        assert (x.norm() * y.norm() - (x * y).norm()).is_zeroish()

    def test_inverse(self):
        ext = QuadExtension(7, QuadExtension.UNRAMIFIED)
        x = QuadExtNumber(ext, N(2), N(3))
        one = x * x.inverse()
        assert (one.a - 1).is_zeroish() and one.b.is_zeroish()

    def test_ramified_valuation_granularity(self):
        ext = QuadExtension(7, QuadExtension.RAMIFIED)
        pi = QuadExtNumber(ext, PadicNumber.exact_zero(7), N(1))
        assert pi.valuation == 1
        assert (pi * pi).valuation == 2
        assert pi.valuation_p() == Fraction(1, 2)
        assert QuadExtNumber.from_base(ext, N(7)).valuation == 2

    def test_mixing_extensions_rejected(self):
        a = QuadExtNumber.from_base(QuadExtension(7, QuadExtension.RAMIFIED), N(1))
        b = QuadExtNumber.from_base(QuadExtension(7, QuadExtension.UNRAMIFIED), N(1))
        with pytest.raises(ValueError):
            a + b


class TestNewtonPolygonAndHensel:
    def test_x2_minus_7x(self):
        # roots 0 and 7: the zero root reports valuation +inf
        f = PadicPoly(7, [0, -7, 1])
        rv = f.newton_polygon().root_valuations()
        assert (math.inf, 1) in rv
        assert (1, 1) in rv
        assert sum(l for _, l in rv) == 2

    def test_linear(self):
        f = PadicPoly(7, [-1, 1])
        assert f.newton_polygon().root_valuations() == [(0, 1)]

    def test_seven_plus_x_plus_seven_x2(self):
        f = PadicPoly(7, [7, 1, 7])
        rv = dict((v, l) for v, l in f.newton_polygon().root_valuations())
        assert rv == {1: 1, -1: 1}

    def test_zeroish_coefficient_below_hull_raises(self):
        f = PadicPoly(7, [PadicNumber.zeroish(7, 0), N(1), N(7)])
        with pytest.raises(PrecisionLossError):
            f.newton_polygon()

    def test_hensel_sqrt2(self):
        f = PadicPoly(7, [-2, 0, 1])
        r = hensel_root(f, N(3))
        assert (r * r - 2).is_zeroish()
        assert r.unit_part() % 7 == 3

    def test_hensel_linear_identity(self):
        f = PadicPoly(7, [-5, 1])
        assert (hensel_root(f, N(5)) - 5).is_zeroish()

    def test_hensel_precondition_violation(self):
        f = PadicPoly(7, [-7, 0, 1])
        with pytest.raises(NotHenselLiftableError):
            hensel_root(f, N(0))

    def test_poly_eval_and_derivative(self):
        f = PadicPoly(7, [1, 2, 3])
        assert (f(N(2)) - 17).is_zeroish()
        assert (f.derivative()(N(2)) - 14).is_zeroish()


class TestStrassmann:
    def test_quadratic_with_unit_linear_coefficient(self):
        f = PadicPowerSeries(7, [7, 1, 7], tail_valuation_bound=1)
        assert strassmann_count(f) == 1

    def test_nonzero_constant(self):
        f = PadicPowerSeries(7, [N(3)], tail_valuation_bound=1)
        assert strassmann_count(f) == 0

    def test_dominant_linear_term_gives_single_zero(self):
        # shape of a disc series centered at a found point: constant term
        # exactly 0, v of the linear coefficient strictly minimal
        coeffs = [PadicNumber.exact_zero(7), N(7), N(3 * 49), N(7 ** 3)]
        f = PadicPowerSeries(7, coeffs, tail_valuation_bound=4)
        assert strassmann_count(f) == 1

    def test_dominant_constant_means_no_zero(self):
        coeffs = [N(7), N(49), N(3 * 49), N(7 ** 3)]
        f = PadicPowerSeries(7, coeffs, tail_valuation_bound=4)
        assert strassmann_count(f) == 0

    def test_tail_cannot_exclude_dominance(self):
        f = PadicPowerSeries(7, [7, 1, 7], tail_valuation_bound=0)
        with pytest.raises(InconclusiveTruncationError):
            strassmann_count(f)

    def test_log_penalty_is_inconclusive(self):
        base = PadicPowerSeries(7, [1, 1], tail_valuation_bound=1)
        g = base.antiderivative()
        assert g.tail_log_penalty
        with pytest.raises(InconclusiveTruncationError):
            strassmann_count(g)

    def test_zeroish_coefficient_at_minimum_raises(self):
        f = PadicPowerSeries(7, [N(7), N(1), PadicNumber.zeroish(7, 0)],
                             tail_valuation_bound=1)
        with pytest.raises(PrecisionLossError):
            strassmann_count(f)

    def test_zeroish_floor_clears_minimum(self):
        f = PadicPowerSeries(7, [N(7), N(1), PadicNumber.zeroish(7, 1)],
                             tail_valuation_bound=1)
        assert strassmann_count(f) == 1

    def test_matches_newton_polygon_on_random_polys(self):
        rng = random.Random(17)
        for _ in range(300):
            p = rng.choice([3, 5, 7, 11])
            deg = rng.randint(1, 6)
            coeffs = [rng.randint(-p ** 3, p ** 3) for _ in range(deg)] + [
                rng.randint(1, p ** 3)]
            f = PadicPoly(p, coeffs)
            expected = sum(l for v, l in f.newton_polygon().root_valuations() if v >= 0)
            g = PadicPowerSeries(p, coeffs)
            assert strassmann_count(g) == expected, (p, coeffs)


class TestPowerSeries:
    def test_add_aligns_polynomial_and_truncated(self):
        # constant + truncated series must keep the full truncation window
        s = PadicPowerSeries(7, [1, 2, 3, 4], tail_valuation_bound=2)
        c = PadicPowerSeries(7, [5])
        t = s + c
        assert t.truncation_order == 3
        assert (t.coeff_of_degree(0) - 6).is_zeroish()
        assert (t.coeff_of_degree(3) - 4).is_zeroish()
        assert t.tail_valuation_bound == 2

    def test_mul_respects_completeness_horizon(self):
        s = PadicPowerSeries(7, [1, 1, 1], tail_valuation_bound=3)
        c = PadicPowerSeries(7, [2])
        prod = c * s
        assert prod.truncation_order == 2
        assert (prod.coeff_of_degree(2) - 2).is_zeroish()
        assert prod.tail_valuation_bound == 3

    def test_laurent_shift_mul(self):
        # (t^-2)(t^3 + t^4) = t + t^2
        a = PadicPowerSeries(7, [1], shift=-2)
        b = PadicPowerSeries(7, [1, 1], shift=3)
        c = a * b
        assert c.shift == 1
        assert (c.coeff_of_degree(1) - 1).is_zeroish()
        assert (c.coeff_of_degree(2) - 1).is_zeroish()

    def test_derivative_antiderivative_roundtrip(self):
        s = PadicPowerSeries(7, [2, 3, 5, 7], tail_valuation_bound=1)
        back = s.antiderivative().derivative()
        for d in range(4):
            assert (back.coeff_of_degree(d) - s.coeff_of_degree(d)).is_zeroish()

    def test_rescale_discharges_log_penalty(self):
        s = PadicPowerSeries(7, [1] * 10, tail_valuation_bound=0)
        g = s.antiderivative()
        assert g.tail_log_penalty
        h = g.rescale_argument(1)
        assert not h.tail_log_penalty
        # base 0, T = 10: tail = 0 - ilog(7, 11) + 1*11 = 10
        assert h.tail_valuation_bound == 10

    def test_evaluate_caps_by_tail(self):
        s = PadicPowerSeries(7, [1, 1], tail_valuation_bound=0)
        v = s.evaluate(N(7))
        # truncation error O(7^(0+2)) dominates the cap
        assert v.abs_precision <= 2
        assert (v - 8).is_zeroish()

    def test_evaluate_log_penalty_still_converges(self):
        s = PadicPowerSeries(7, [1] * 8, tail_valuation_bound=0).antiderivative()
        v = s.evaluate(N(7))
        geom = sum(Fraction(7 ** (i + 1), i + 1) for i in range(8))
        assert (v - N(geom, rel=40)).is_zeroish()
        assert v.abs_precision >= 5

    def test_evaluate_on_extension_element(self):
        ext = QuadExtension(7, QuadExtension.RAMIFIED)
        pi = QuadExtNumber(ext, PadicNumber.exact_zero(7), N(1))
        s = PadicPowerSeries(7, [1, 1, 1], tail_valuation_bound=5)
        v = s.evaluate(pi)
        # 1 + pi + pi^2 = (1 + 7) + pi
        assert (v.a - 8).is_zeroish()
        assert (v.b - 1).is_zeroish()

    def test_inverse(self):
        s = PadicPowerSeries(7, [1, 3, 2], tail_valuation_bound=0)
        inv = s.inverse()
        prod = s * inv
        assert (prod.coeff_of_degree(0) - 1).is_zeroish()
        for d in range(1, prod.truncation_order + 1):
            assert prod.coeff_of_degree(d).is_zeroish()

    def test_inverse_requires_unit_constant(self):
        with pytest.raises(ValueError):
            PadicPowerSeries(7, [7, 1]).inverse()

    def test_compose(self):
        # f(t) = 1 + t + t^2, g(t) = 2t + t^2 -> coefficients by hand
        f = PadicPowerSeries(7, [1, 1, 1], tail_valuation_bound=0)
        g = PadicPowerSeries(7, [0, 2, 1], tail_valuation_bound=0)
        h = f.compose(g)
        assert (h.coeff_of_degree(0) - 1).is_zeroish()
        assert (h.coeff_of_degree(1) - 2).is_zeroish()
        assert (h.coeff_of_degree(2) - 5).is_zeroish()

    def test_compose_requires_vanishing_inner(self):
        f = PadicPowerSeries(7, [1, 1])
        g = PadicPowerSeries(7, [1, 1])
        with pytest.raises(ValueError):
            f.compose(g)


class TestMahler:
    def test_quadratic_at_zero(self):
        f = PadicPowerSeries(7, [0, -7, 1])
        assert mahler_bound_holds(f, [1, 1], 1, N(0), 0)

    def test_quadratic_derivative_at_seven(self):
        f = PadicPowerSeries(7, [0, -7, 1])
        assert mahler_bound_holds(f, [1, 1], 1, N(7), 1)

    def test_pure_power(self):
        f = PadicPowerSeries(7, [0, 0, 0, 1])
        for x in [N(0), N(7), N(49), N(21)]:
            assert mahler_bound_holds(f, [1, 1, 1], 1, x, 0)

    def test_randomized_products_of_small_roots(self):
        rng = random.Random(23)
        for _ in range(100):
            p = rng.choice([3, 5, 7])
            r_val = 1
            roots = [p * rng.randint(-8, 8) for _ in range(rng.randint(1, 4))]
            coeffs = [Fraction(1)]
            for r in roots:
                coeffs = ([Fraction(0)] + coeffs[:])  # multiply by z
                for i in range(len(coeffs) - 1):
                    coeffs[i] -= r * coeffs[i + 1] if i + 1 < len(coeffs) else 0
            # rebuild cleanly: prod (z - r)
            poly = [Fraction(1)]
            for r in roots:
                poly = [Fraction(0)] + poly
                for i in range(len(poly) - 1):
                    poly[i] = poly[i] - r * poly[i + 1]
            f = PadicPowerSeries(p, [PadicNumber.from_rational(c, p, 24) for c in poly])
            x = PadicNumber.from_rational(p * rng.randint(-8, 8), p, 24)
            for k in (0, 1, 2):
                assert mahler_bound_holds(f, [vp_int(r, p) if r else 2 for r in roots],
                                          r_val, x, k), (p, roots, k)


class TestHelpers:
    def test_vp_int(self):
        assert vp_int(56, 7) == 1
        assert vp_int(-49, 7) == 2
        with pytest.raises(ValueError):
            vp_int(0, 7)

    def test_legendre_and_sqrt_mod(self):
        assert legendre_symbol(2, 7) == 1
        assert legendre_symbol(3, 7) == -1
        assert sqrt_mod_p(2, 7) in (3, 4)
        assert sqrt_mod_p(3, 7) is None
        for p in (13, 17, 29, 101):
            for a in range(1, p):
                r = sqrt_mod_p(a, p)
                if legendre_symbol(a, p) == 1:
                    assert r * r % p == a
                else:
                    assert r is None

    def test_smallest_nonresidue(self):
        assert smallest_nonresidue(7) == 3
        assert smallest_nonresidue(5) == 2
        assert smallest_nonresidue(17) == 3

    def test_with_precision_retry(self):
        calls = []

        def fn(prec):
            calls.append(prec)
            if prec < 40:
                raise PrecisionLossError("need more")
            return prec

        assert with_precision_retry(fn, 10, 3) == 40
        assert calls == [10, 20, 40]
        with pytest.raises(PrecisionLossError):
            with_precision_retry(fn, 10, 1)
