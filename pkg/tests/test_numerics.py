import math

import numpy as np
import pytest

from wright_stein.errors import DomainError, NonFiniteError, ToleranceNotMetError
from wright_stein.numerics import (
    QuadratureConfig,
    cell_integrals,
    gamma_fn,
    integrate,
    integrate_semi_infinite,
)
from wright_stein.specfun import airy_many

# Independent 30-digit references (high-precision series/Lanczos, computed
# once with mpmath and frozen):
#   Gamma(1/3) = 2.67893853470774763365569294098
#   2/sqrt(pi) = 1.12837916709551257389615890312
GAMMA_1_3_REF = 2.6789385347077476
TWO_OVER_SQRT_PI = 1.1283791670955126


class TestGamma:
    def test_gamma_one(self):
        assert gamma_fn(1.0) == 1.0

    def test_gamma_half(self):
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_gamma_third_vs_frozen_reference(self):
        assert gamma_fn(1.0 / 3.0) == pytest.approx(GAMMA_1_3_REF, rel=1e-12)

    def test_recurrence_on_grid(self):
        xs = np.linspace(0.1, 20.0, 200)
        for x in xs:
            lhs = gamma_fn(x + 1.0)
            rhs = x * gamma_fn(x)
            assert abs(lhs - rhs) <= 1e-12 * abs(lhs)

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
    def test_domain_error(self, bad):
        with pytest.raises(DomainError):
            gamma_fn(bad)

    def test_relative_accuracy_sweep(self):
        # Against math.lgamma-independent identity: duplication formula
        # Gamma(2x) = Gamma(x) Gamma(x+1/2) 2^(2x-1) / sqrt(pi).
        for x in np.linspace(0.2, 24.9, 120):
            lhs = gamma_fn(2 * x)
            rhs = (
                gamma_fn(x)
                * gamma_fn(x + 0.5)
                * 2.0 ** (2 * x - 1)
                / math.sqrt(math.pi)
            )
            assert abs(lhs - rhs) <= 4e-12 * abs(lhs)


class TestIntegrate:
    def test_constant(self):
        r = integrate(lambda x: np.ones_like(x), 0.0, 1.0)
        assert r.value == pytest.approx(1.0, abs=1e-13)

    def test_exponential_normalization(self):
        r = integrate(lambda x: np.exp(-x), 0.0, 40.0)
        assert r.value == pytest.approx(1.0, abs=1e-10)

    def test_first_moment_of_gaussian_family(self):
        # x e^{-x^2/4}/sqrt(pi) integrates to 2/sqrt(pi); this equals the
        # first moment identity 1/Gamma(3/2) checked in the mwright tests.
        r = integrate(
            lambda x: x * np.exp(-0.25 * x * x) / math.sqrt(math.pi), 0.0, 40.0
        )
        assert r.value == pytest.approx(TWO_OVER_SQRT_PI, abs=1e-10)

    def test_error_estimate_postcondition(self):
        cases = [
            (lambda x: np.sin(3 * x), 0.0, 5.0, (1 - math.cos(15.0)) / 3.0),
            (lambda x: np.exp(-x) * np.cos(x), 0.0, 30.0, 0.5 * (1 + math.exp(-30) * (math.sin(30) - math.cos(30)))),
            (lambda x: 1.0 / (1.0 + x * x), -4.0, 9.0, math.atan(9.0) + math.atan(4.0)),
        ]
        cfg = QuadratureConfig()
        for f, a, b, truth in cases:
            r = integrate(f, a, b, cfg)
            budget = max(cfg.abs_tol, cfg.rel_tol * abs(r.value))
            assert r.error_estimate <= budget
            assert abs(r.value - truth) <= 10 * budget
            assert r.evaluations > 0

    def test_additivity(self):
        rng = np.random.default_rng(123)
        for _ in range(5):
            a = rng.uniform(-3, 0)
            c = rng.uniform(0, 2)
            b = rng.uniform(2, 5)
            w = rng.uniform(0.5, 2.0)
            f = lambda x, w=w: np.exp(-0.3 * x * x) * np.cos(w * x)
            left = integrate(f, a, c)
            right = integrate(f, c, b)
            full = integrate(f, a, b)
            tol = left.error_estimate + right.error_estimate + full.error_estimate
            assert abs(left.value + right.value - full.value) <= tol + 1e-13

    def test_linearity(self):
        f = lambda x: np.exp(-x)
        g = lambda x: np.sin(x)
        alpha, beta = 2.5, -1.25
        combo = integrate(lambda x: alpha * f(x) + beta * g(x), 0.0, 6.0)
        parts = alpha * integrate(f, 0.0, 6.0).value + beta * integrate(g, 0.0, 6.0).value
        assert combo.value == pytest.approx(parts, abs=1e-10)

    def test_reversed_limits_rejected(self):
        with pytest.raises(DomainError):
            integrate(lambda x: x, 1.0, 0.0)

    def test_empty_interval(self):
        r = integrate(lambda x: x, 2.0, 2.0)
        assert r.value == 0.0 and r.error_estimate == 0.0

    def test_tolerance_not_met_carries_best_estimate(self):
        cfg = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=3)
        with pytest.raises(ToleranceNotMetError) as exc:
            integrate(lambda x: np.sqrt(np.abs(x)), 0.0, 1.0, cfg)
        best = exc.value.result
        assert best.value == pytest.approx(2.0 / 3.0, abs=1e-4)
        assert best.error_estimate > 0

    def test_nan_names_abscissa(self):
        def f(x):
            return np.where(x > 0.5, np.nan, 1.0)

        with pytest.raises(NonFiniteError) as exc:
            integrate(f, 0.0, 1.0)
        assert exc.value.x is not None and exc.value.x > 0.5
        assert str(exc.value.x) in str(exc.value)

    def test_scalar_only_integrand_supported(self):
        r = integrate(math.exp, 0.0, 1.0)
        assert r.value == pytest.approx(math.e - 1.0, abs=1e-10)


class TestSemiInfinite:
    def test_airy_normalization(self):
        # int_0^inf Ai = 1/3, forced by the normalization of M_{1/3} under
        # u = t 3^(-1/3); the tail beyond 40 is bounded by Ai(40)/sqrt(40).
        a40 = airy_many(np.array([40.0]))
        tail = float(a40.ai[0]) / math.sqrt(40.0)
        r = integrate_semi_infinite(lambda x: airy_many(x).ai, 0.0, tail_bound=tail)
        assert r.value == pytest.approx(1.0 / 3.0, abs=1e-8)

    def test_exponential_tail(self):
        r = integrate_semi_infinite(lambda x: np.exp(-x), 10.0)
        assert r.value == pytest.approx(math.exp(-10.0), rel=1e-9)

    def test_start_beyond_truncation(self):
        tail = 1e-31
        r = integrate_semi_infinite(lambda x: airy_many(x).ai, 50.0, tail_bound=tail)
        assert r.value == 0.0
        assert r.error_estimate == tail
        assert tail < 1e-30


class TestCellIntegrals:
    def test_matches_adaptive(self):
        edges = np.linspace(0.0, 6.0, 41)
        vals, err, _ = cell_integrals(lambda x: np.exp(-x) * np.sin(2 * x), edges)
        total = integrate(lambda x: np.exp(-x) * np.sin(2 * x), 0.0, 6.0)
        assert np.sum(vals) == pytest.approx(total.value, abs=1e-11)
        assert err < 1e-10

    def test_needs_two_edges(self):
        with pytest.raises(DomainError):
            cell_integrals(lambda x: x, np.array([1.0]))


class TestConfig:
    @pytest.mark.parametrize(
        "kw",
        [
            {"abs_tol": 0.0},
            {"rel_tol": -1e-3},
            {"truncation_point": 0.0},
            {"max_subdivisions": 0},
        ],
    )
    def test_invalid_config(self, kw):
        with pytest.raises(DomainError):
            QuadratureConfig(**kw)
