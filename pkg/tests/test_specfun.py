import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import kv

from wright_stein.errors import AiryOverflowError, DomainError, RangeError
from wright_stein.numerics import GAMMA_2_3, gamma_fn
from wright_stein.specfun import (
    AIRY_SWITCH,
    _airy_asymptotic,
    _airy_series,
    _scorer_norm_detail,
    airy,
    airy_ai_tail_integral,
    airy_many,
    mittag_leffler,
    scorer_gi,
    scorer_gi_norms,
    scorer_gi_prime,
    wright_m_series,
)

mp.mp.dps = 40

# Frozen single-point references (independent high-precision oracles):
#   Gi(0) = Bi(0)/3                    = 0.204975542482000245050...
#   E_{1/3}(-1)                        = 0.451751232381996526008...
#   E_{1/3}(-5)                        = 0.133083758807433862427...
#   M_{1/2}(1) = e^(-1/4)/sqrt(pi)     = 0.439391289467722397047...
GI_AT_ZERO = 0.20497554248200025
ML_THIRD_AT_M1 = 0.4517512323819965
ML_THIRD_AT_M5 = 0.13308375880743386
M_HALF_AT_1 = 0.4393912894677224


class TestAiryPointValues:
    def test_initial_values_against_formulas(self):
        v = airy(0.0)
        assert abs(v.ai - 1.0 / (3.0 ** (2.0 / 3.0) * gamma_fn(2.0 / 3.0))) <= 1e-13
        assert abs(v.ai_prime + 1.0 / (3.0 ** (1.0 / 3.0) * gamma_fn(1.0 / 3.0))) <= 1e-13
        assert abs(v.bi - 1.0 / (3.0 ** (1.0 / 6.0) * gamma_fn(2.0 / 3.0))) <= 1e-13
        assert abs(v.bi_prime - 3.0 ** (1.0 / 6.0) / gamma_fn(1.0 / 3.0)) <= 1e-13

    def test_initial_value_decimals(self):
        v = airy(0.0)
        assert v.ai == pytest.approx(0.3550280538878172, abs=1e-13)
        assert v.bi == pytest.approx(0.6149266274460007, abs=1e-13)
        assert v.ai_prime == pytest.approx(-0.2588194037928068, abs=1e-13)
        assert v.bi_prime == pytest.approx(0.4482883573538264, abs=1e-13)

    def test_vs_oracle_absolute_low_range(self):
        for x in np.linspace(0.0, 5.0, 51):
            v = airy(float(x))
            assert abs(v.ai - float(mp.airyai(float(x)))) <= 1e-12
            assert abs(v.ai_prime - float(mp.airyai(float(x), 1))) <= 1e-12
            assert abs(v.bi - float(mp.airybi(float(x)))) <= 1e-12
            assert abs(v.bi_prime - float(mp.airybi(float(x), 1))) <= 1e-12

    def test_vs_oracle_relative_high_range(self):
        for x in np.linspace(5.0, 40.0, 71):
            v = airy(float(x))
            for got, ref in (
                (v.ai, mp.airyai(float(x))),
                (v.ai_prime, mp.airyai(float(x), 1)),
                (v.bi, mp.airybi(float(x))),
                (v.bi_prime, mp.airybi(float(x), 1)),
            ):
                assert abs(got - float(ref)) <= 1e-10 * abs(float(ref))

    def test_leading_asymptotic_at_10(self):
        v = airy(10.0)
        zeta = (2.0 / 3.0) * 10.0 ** 1.5
        lead = 0.5 / math.sqrt(math.pi) * 10.0 ** -0.25 * math.exp(-zeta)
        assert abs(v.ai / lead - 1.0) <= 2e-2

    def test_positivity(self):
        a = airy_many(np.linspace(0.0, 40.0, 200))
        assert np.all(a.ai > 0)
        assert np.all(a.bi > 0)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            airy(-1e-9)

    def test_overflow_error_beyond_200(self):
        with pytest.raises(AiryOverflowError):
            airy(200.0001)
        # Scaled fields remain valid far beyond.
        a = airy_many(np.array([500.0]))
        assert np.isfinite(a.ai_scaled[0]) and np.isfinite(a.bi_scaled[0])

    def test_zeta_field(self):
        v = airy(4.0)
        assert v.zeta == pytest.approx((2.0 / 3.0) * 8.0, rel=1e-15)

    def test_scaled_product_identity(self):
        for x in [0.5, 3.0, 8.9, 15.0, 30.0]:
            v = airy(x)
            assert v.ai_scaled * v.bi_scaled == pytest.approx(
                v.ai * v.bi, rel=5e-15
            )


class TestAiryStructure:
    def test_wronskian_200_points(self):
        a = airy_many(np.linspace(0.0, 10.0, 200))
        w = a.ai * a.bi_prime - a.ai_prime * a.bi
        assert np.max(np.abs(w - 1.0 / math.pi)) <= 1e-10

    def test_ode_residuals_fd(self):
        # Five-point second derivative, step balanced between truncation
        # and roundoff over [0, 8].
        xs = np.linspace(0.05, 8.0, 120)
        h = 2e-3
        stencil = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
        for name in ("ai", "bi"):
            cols = [getattr(airy_many(xs + s * h), name) for s in (-2, -1, 0, 1, 2)]
            d2 = sum(c * col for c, col in zip(stencil, cols)) / h**2
            resid = np.abs(d2 - xs * cols[2])
            if name == "ai":
                assert np.max(resid) <= 1e-6
            else:
                assert np.max(resid / cols[2]) <= 1e-6

    def test_overlap_band_between_branches(self):
        band = np.linspace(7.8, 10.5, 28)
        ai, aip, bi, bip = _airy_series(band)
        z = (2.0 / 3.0) * band * np.sqrt(band)
        a_s, ap_s, b_s, bp_s, _ = _airy_asymptotic(band)
        assert np.max(np.abs(ai * np.exp(z) / a_s - 1.0)) <= 1e-11
        assert np.max(np.abs(aip * np.exp(z) / ap_s - 1.0)) <= 1e-11
        assert np.max(np.abs(bi * np.exp(-z) / b_s - 1.0)) <= 1e-11
        assert np.max(np.abs(bip * np.exp(-z) / bp_s - 1.0)) <= 1e-11

    def test_cheb_cache_matches_series(self):
        xs = np.linspace(0.0, AIRY_SWITCH - 1e-9, 1234)
        direct = _airy_series(xs)
        cached = airy_many(xs)
        for d, c in zip(direct, (cached.ai, cached.ai_prime, cached.bi, cached.bi_prime)):
            rel = np.abs(c - d) / np.maximum(np.abs(d), 1e-300)
            assert np.max(rel) <= 5e-14

    def test_bessel_cross_check(self):
        # Ai(x) = (1/pi) sqrt(x/3) K_{1/3}(zeta) for x > 0.
        for x in (1.0, 4.0):
            zeta = (2.0 / 3.0) * x ** 1.5
            ref = math.sqrt(x / 3.0) / math.pi * kv(1.0 / 3.0, zeta)
            assert abs(airy(x).ai - ref) <= 1e-8


class TestScorer:
    def test_value_at_zero(self):
        got = scorer_gi(0.0)
        assert got == pytest.approx(GI_AT_ZERO, abs=1e-12)
        assert got == pytest.approx(airy(0.0).bi / 3.0, abs=1e-12)

    def test_vs_oracle(self):
        for x in [0.0, 0.25, 1.0, 2.5, 5.0, 10.0, 25.0, 40.0]:
            assert abs(scorer_gi(x) - float(mp.scorergi(x))) <= 1e-9

    def test_asymptotic_at_20(self):
        assert abs(20.0 * math.pi * scorer_gi(20.0) - 1.0) <= 1e-3

    def test_ode_residual_and_sign(self):
        # Direct substitution of the defining integrals gives
        # Gi'' - x Gi = -1/pi (note the sign; see the derivative of the
        # cross terms through the Wronskian).
        h = 1e-3
        for x in (0.5, 1.0, 2.0):
            d2 = (scorer_gi(x + h) - 2 * scorer_gi(x) + scorer_gi(x - h)) / h**2
            assert abs(abs(d2 - x * scorer_gi(x)) - 1.0 / math.pi) <= 1e-7
            assert d2 - x * scorer_gi(x) == pytest.approx(-1.0 / math.pi, abs=1e-7)

    def test_prime_vs_oracle(self):
        for x in [0.0, 1.0, 5.0, 20.0]:
            ref = float(mp.diff(mp.scorergi, x))
            assert abs(scorer_gi_prime(x) - ref) <= 1e-9

    def test_prime_asymptotic_at_20(self):
        got = scorer_gi_prime(20.0)
        ref = -1.0 / (math.pi * 400.0)
        assert abs(got - ref) <= 5e-3 * abs(ref)

    def test_prime_at_zero(self):
        # Gi'(0) = Bi'(0)/3 from the defining integrals.
        assert scorer_gi_prime(0.0) == pytest.approx(
            airy(0.0).bi_prime / 3.0, abs=1e-12
        )

    def test_norms(self):
        gi_norm, xgi_norm = scorer_gi_norms()
        assert gi_norm > 0 and math.isfinite(gi_norm)
        assert xgi_norm > 0 and math.isfinite(xgi_norm)
        assert xgi_norm >= 1.0 / math.pi - 1e-3
        d = _scorer_norm_detail()
        # The sup of Gi is attained at an interior maximizer, not at 0;
        # the search records it, and the value agrees with the oracle there.
        assert d["gi_argmax"] > 0
        assert gi_norm >= GI_AT_ZERO
        assert gi_norm == pytest.approx(float(mp.scorergi(d["gi_argmax"])), abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            scorer_gi(-0.1)

    def test_ai_tail_integral(self):
        assert airy_ai_tail_integral(0.0) == pytest.approx(1.0 / 3.0, abs=1e-10)
        ref = float(mp.quad(lambda t: mp.airyai(t), [2.0, mp.inf]))
        assert airy_ai_tail_integral(2.0) == pytest.approx(ref, rel=1e-9)


class TestMittagLeffler:
    @pytest.mark.parametrize("z", [-1.0, 0.0, 1.0])
    def test_beta_one_is_exp(self, z):
        assert mittag_leffler(1.0, z) == pytest.approx(math.exp(z), abs=1e-12)

    @pytest.mark.parametrize("beta", [0.2, 1.0 / 3.0, 0.5, 0.9, 1.0])
    def test_at_zero(self, beta):
        assert mittag_leffler(beta, 0.0) == 1.0

    def test_one_third_at_minus_one(self):
        assert mittag_leffler(1.0 / 3.0, -1.0) == pytest.approx(
            ML_THIRD_AT_M1, abs=1e-10
        )

    def test_one_third_deep_negative(self):
        # Needs the multi-precision path; the plain-double series loses
        # ~50 digits to cancellation here.
        assert mittag_leffler(1.0 / 3.0, -5.0) == pytest.approx(
            ML_THIRD_AT_M5, abs=1e-10
        )

    def test_irrational_beta_vs_oracle(self):
        beta = 0.77
        ref = float(
            mp.nsum(lambda n: mp.mpf(-4.0) ** n / mp.gamma(beta * n + 1), [0, mp.inf])
        )
        assert mittag_leffler(beta, -4.0) == pytest.approx(ref, abs=1e-10)

    def test_range_errors(self):
        with pytest.raises(RangeError):
            mittag_leffler(0.5, 31.0)
        with pytest.raises(RangeError):
            mittag_leffler(0.5, -30.5)
        with pytest.raises(RangeError):
            # Result ~ exp(20^3) overflows any double.
            mittag_leffler(1.0 / 3.0, 20.0)

    def test_domain_errors(self):
        for beta in (0.0, -0.1, 1.1):
            with pytest.raises(DomainError):
                mittag_leffler(beta, 0.5)

    def test_monotone_decay_on_negative_axis(self):
        vals = [mittag_leffler(1.0 / 3.0, -t) for t in np.linspace(0.0, 5.0, 21)]
        assert all(a > b > 0 for a, b in zip(vals, vals[1:]))


class TestWrightMSeries:
    @pytest.mark.parametrize("x", [0.0, 1.0, 2.0])
    def test_beta_zero_is_exp(self, x):
        assert wright_m_series(0.0, x) == pytest.approx(math.exp(-x), abs=1e-12)

    def test_half_closed_form_at_one(self):
        assert wright_m_series(0.5, 1.0) == pytest.approx(M_HALF_AT_1, abs=1e-12)

    def test_third_matches_airy_form(self):
        ref = 3.0 ** (2.0 / 3.0) * airy(2.0 * 3.0 ** (-1.0 / 3.0)).ai
        assert wright_m_series(1.0 / 3.0, 2.0) == pytest.approx(ref, abs=1e-9)

    def test_closed_forms_on_interval(self):
        xs = np.linspace(0.0, 5.0, 26)
        for x in xs:
            got_half = wright_m_series(0.5, float(x))
            ref_half = math.exp(-x * x / 4.0) / math.sqrt(math.pi)
            assert abs(got_half - ref_half) <= 1e-9
            got_third = wright_m_series(1.0 / 3.0, float(x))
            ref_third = 3.0 ** (2.0 / 3.0) * airy(float(x) * 3.0 ** (-1.0 / 3.0)).ai
            assert abs(got_third - ref_third) <= 1e-9

    def test_beyond_documented_cutoff_still_accurate(self):
        # The adaptive-precision fallback extends well past x = 8.
        for beta, x in [(0.5, 10.0), (1.0 / 3.0, 12.0)]:
            s = mp.mpf(0)
            for n in range(500):
                s += (-mp.mpf(x)) ** n / mp.factorial(n) * mp.rgamma(
                    1 - mp.mpf(beta) - mp.mpf(beta) * n
                )
            assert wright_m_series(beta, x) == pytest.approx(float(s), rel=1e-8)

    def test_pole_terms_dropped(self):
        # For beta = 1/2 every odd-index term hits a Gamma pole; the series
        # must reduce to even powers only, i.e. an even function of x.
        xs = np.linspace(0.1, 3.0, 8)
        for x in xs:
            direct = wright_m_series(0.5, float(x))
            # math.gamma handles the negative non-integer arguments of the
            # surviving even-index terms.
            even_only = sum(
                (-x) ** n / (math.factorial(n) * math.gamma(0.5 - 0.5 * n))
                for n in range(0, 40, 2)
            )
            # Tolerance limited by the plain-float oracle's own cancellation.
            assert direct == pytest.approx(even_only, rel=1e-10)

    def test_value_at_zero(self):
        assert wright_m_series(1.0 / 3.0, 0.0) == pytest.approx(
            1.0 / GAMMA_2_3, abs=1e-14
        )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            wright_m_series(1.0, 1.0)
        with pytest.raises(DomainError):
            wright_m_series(0.5, -0.5)

    def test_irrational_beta(self):
        beta = 0.613
        s = mp.mpf(0)
        for n in range(400):
            s += (-mp.mpf(4.0)) ** n / mp.factorial(n) * mp.rgamma(
                1 - mp.mpf(beta) - mp.mpf(beta) * n
            )
        assert wright_m_series(beta, 4.0) == pytest.approx(float(s), rel=1e-10)
