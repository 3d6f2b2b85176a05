"""Beta distribution numerics: special functions, quantile, sampling."""
import math

import numpy as np
import pytest

from nullpost import (
    BetaParams,
    RandomStream,
    beta_cdf,
    beta_mean,
    beta_pdf,
    beta_quantile,
    beta_sample,
    beta_sample_batch,
    density_grid,
    log_gamma,
)

# Extended-precision reference values (mpmath, 50 digits, frozen).
LN_SQRT_PI = 0.57236494292470008707
PDF_09_60_6 = 9.8954025414264075878
Q025_60_6 = 0.82954370951107501054
Q975_60_6 = 0.96536634778590007214


class TestBetaParams:
    def test_rejects_nonpositive_shapes(self):
        for a, b in [(0.0, 1.0), (1.0, 0.0), (-2.0, 3.0), (1.0, -1.0)]:
            with pytest.raises(ValueError):
                BetaParams(a, b)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            BetaParams(math.inf, 1.0)
        with pytest.raises(ValueError):
            BetaParams(1.0, math.nan)

    def test_mean_interior(self):
        for a, b in [(60, 6), (0.5, 0.5), (1e-3, 1e3)]:
            assert 0.0 < BetaParams(a, b).mean < 1.0


class TestLogGamma:
    def test_known_points(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
        assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-14)
        assert log_gamma(0.5) == pytest.approx(LN_SQRT_PI, abs=1e-13)

    def test_domain_error(self):
        for x in (0.0, -1.0, -0.5):
            with pytest.raises(ValueError):
                log_gamma(x)

    def test_accuracy_against_libm(self):
        # math.lgamma is an independent oracle (C library, ~1 ulp).
        xs = np.linspace(0.5, 200.0, 4001)
        worst = max(abs(log_gamma(float(x)) - math.lgamma(float(x))) for x in xs)
        assert worst <= 1e-12, f"max |error| {worst:.3e} over [0.5, 200]"

    def test_recurrence(self):
        # ln Gamma(x+1) = ln Gamma(x) + ln x
        for x in (0.7, 1.3, 5.5, 42.0, 150.25):
            assert log_gamma(x + 1.0) == pytest.approx(log_gamma(x) + math.log(x), abs=1e-11)


class TestBetaPdf:
    def test_uniform_density(self):
        assert beta_pdf(0.3, BetaParams(1, 1)) == pytest.approx(1.0, abs=1e-14)

    def test_symmetric_quadratic(self):
        # 6 x (1-x) at 0.5
        assert beta_pdf(0.5, BetaParams(2, 2)) == pytest.approx(1.5, abs=1e-13)

    def test_large_shape_value(self):
        got = beta_pdf(0.9, BetaParams(60, 6))
        assert got == pytest.approx(PDF_09_60_6, rel=1e-9)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            beta_pdf(-0.01, BetaParams(2, 2))
        with pytest.raises(ValueError):
            beta_pdf(1.01, BetaParams(2, 2))

    def test_endpoints(self):
        assert beta_pdf(0.0, BetaParams(2, 2)) == 0.0
        assert beta_pdf(1.0, BetaParams(2, 2)) == 0.0
        assert beta_pdf(0.0, BetaParams(1, 3)) == 3.0
        assert beta_pdf(1.0, BetaParams(3, 1)) == 3.0
        assert beta_pdf(0.0, BetaParams(0.5, 2)) == math.inf

    def test_integrates_to_one(self):
        # Composite Simpson after x = sin^2(t): the transformed integrand
        # 2 pdf(sin^2 t) sin t cos t is smooth for shapes >= 0.5, so the
        # quadrature is an independent normalization check.  Endpoint nodes
        # are the analytic limits (nonzero only when a shape equals 1/2);
        # every interior node exercises beta_pdf itself.
        shapes = [(0.5, 0.5), (0.5, 3), (1, 1), (2, 2), (10, 4), (60, 6), (100, 100)]
        m = 8192
        t = np.linspace(0.0, math.pi / 2.0, m + 1)
        for a, b in shapes:
            p = BetaParams(a, b)
            x = np.sin(t[1:-1]) ** 2
            f = np.array([beta_pdf(float(xi), p) for xi in x])
            g = np.empty(m + 1)
            g[1:-1] = f * 2.0 * np.sin(t[1:-1]) * np.cos(t[1:-1])
            norm = math.exp(-(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)))
            g[0] = 2.0 * norm if a == 0.5 else 0.0
            g[-1] = 2.0 * norm if b == 0.5 else 0.0
            w = np.ones(m + 1)
            w[1:-1:2] = 4.0
            w[2:-1:2] = 2.0
            integral = (math.pi / 2.0 / m / 3.0) * float(np.dot(w, g))
            assert abs(integral - 1.0) <= 1e-6, f"Beta({a},{b}) integral {integral}"


class TestBetaCdf:
    def test_identity_uniform(self):
        assert beta_cdf(0.3, BetaParams(1, 1)) == pytest.approx(0.3, abs=1e-12)

    def test_symmetry_half(self):
        assert beta_cdf(0.5, BetaParams(7, 7)) == pytest.approx(0.5, abs=1e-12)

    def test_closed_form_2_2(self):
        # x^2 (3 - 2x)
        assert beta_cdf(0.4, BetaParams(2, 2)) == pytest.approx(0.352, abs=1e-10)

    def test_exact_endpoints(self):
        p = BetaParams(60, 6)
        assert beta_cdf(0.0, p) == 0.0
        assert beta_cdf(1.0, p) == 1.0

    def test_domain_error(self):
        with pytest.raises(ValueError):
            beta_cdf(-0.1, BetaParams(2, 2))
        with pytest.raises(ValueError):
            beta_cdf(1.1, BetaParams(2, 2))

    def test_closed_forms(self):
        xs = np.linspace(0.001, 0.999, 97)
        for a in (0.5, 1.0, 2.5, 7.0, 40.0):
            for x in xs:
                assert abs(beta_cdf(float(x), BetaParams(a, 1)) - x**a) <= 1e-10
                assert abs(beta_cdf(float(x), BetaParams(1, a)) - (1 - (1 - x) ** a)) <= 1e-10
        for x in xs:
            exact = x * x * (3 - 2 * x)
            assert abs(beta_cdf(float(x), BetaParams(2, 2)) - exact) <= 1e-10

    def test_reflection_symmetry(self):
        rng = np.random.default_rng(2301)
        for _ in range(300):
            a, b = rng.uniform(0.5, 100.0, size=2)
            x = rng.uniform(0.0, 1.0)
            p = BetaParams(a, b)
            q = BetaParams(b, a)
            assert abs(beta_cdf(x, p) - (1.0 - beta_cdf(1.0 - x, q))) <= 1e-10

    def test_monotone_in_x(self):
        rng = np.random.default_rng(515)
        for _ in range(40):
            a, b = rng.uniform(0.5, 80.0, size=2)
            p = BetaParams(a, b)
            xs = np.sort(rng.uniform(0.0, 1.0, size=25))
            vals = [beta_cdf(float(x), p) for x in xs]
            assert all(v2 >= v1 for v1, v2 in zip(vals, vals[1:]))


class TestBetaQuantile:
    def test_sqrt_law(self):
        # Beta(2,1) has CDF x^2
        assert beta_quantile(0.25, BetaParams(2, 1)) == pytest.approx(0.5, abs=1e-10)

    def test_high_prior_interval(self):
        p = BetaParams(60, 6)
        assert beta_quantile(0.025, p) == pytest.approx(Q025_60_6, abs=1e-10)
        assert beta_quantile(0.975, p) == pytest.approx(Q975_60_6, abs=1e-10)

    def test_against_bisection_oracle(self):
        # Plain bisection on beta_cdf to 1e-12, independent of the Newton path.
        def bisect_quantile(u, p):
            lo, hi = 0.0, 1.0
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if beta_cdf(mid, p) < u:
                    lo = mid
                else:
                    hi = mid
                if hi - lo <= 1e-12:
                    break
            return 0.5 * (lo + hi)

        rng = np.random.default_rng(99)
        for _ in range(25):
            a, b = rng.uniform(0.5, 100.0, size=2)
            u = rng.uniform(0.01, 0.99)
            p = BetaParams(a, b)
            assert beta_quantile(u, p) == pytest.approx(bisect_quantile(u, p), abs=5e-12)

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        us = np.linspace(0.001, 0.999, 41)
        for _ in range(30):
            a, b = rng.uniform(0.5, 100.0, size=2)
            p = BetaParams(a, b)
            for u in us:
                x = beta_quantile(float(u), p)
                assert 0.0 < x < 1.0
                assert abs(beta_cdf(x, p) - u) <= 1e-9

    def test_domain_error(self):
        p = BetaParams(2, 2)
        for u in (0.0, 1.0, -0.5, 1.5):
            with pytest.raises(ValueError):
                beta_quantile(u, p)


class TestBetaMean:
    def test_values(self):
        assert beta_mean(BetaParams(60, 6)) == pytest.approx(10.0 / 11.0, abs=1e-15)
        assert beta_mean(BetaParams(8, 8)) == 0.5
        assert beta_mean(BetaParams(1, 1)) == 0.5


class TestBetaSampling:
    def test_reproducible_stream(self):
        p = BetaParams(60, 6)
        a = [beta_sample(RandomStream(42), p) for _ in range(1)]
        r1, r2 = RandomStream(42), RandomStream(42)
        xs = [beta_sample(r1, p) for _ in range(50)]
        ys = [beta_sample(r2, p) for _ in range(50)]
        assert xs == ys
        assert xs[0] == a[0]

    def test_scalar_matches_batch(self):
        p = BetaParams(3, 8)
        r1, r2 = RandomStream(9), RandomStream(9)
        batch = beta_sample_batch(r1, p, 40)
        singles = np.array([beta_sample(r2, p) for _ in range(40)])
        assert np.array_equal(batch, singles)

    def test_chunked_matches_batch(self):
        p = BetaParams(0.7, 2.5)  # exercises the shape<1 boost path
        r1, r2 = RandomStream(5), RandomStream(5)
        full = beta_sample_batch(r1, p, 1000)
        parts = np.concatenate([beta_sample_batch(r2, p, 333), beta_sample_batch(r2, p, 667)])
        assert np.array_equal(full, parts)

    def test_mean_calibration_60_6(self):
        # 1e6 draws: sample mean within 4 analytic standard errors.
        p = BetaParams(60, 6)
        draws = beta_sample_batch(RandomStream(2024), p, 1_000_000)
        se = p.sd / 1e3
        assert abs(draws.mean() - 10.0 / 11.0) <= 4.0 * se

    def test_uniform_ecdf(self):
        draws = beta_sample_batch(RandomStream(11), BetaParams(1, 1), 1_000_000)
        assert abs(np.mean(draws < 0.5) - 0.5) <= 0.002

    def test_tail_mass_self_consistency(self):
        p = BetaParams(2, 20)
        x10 = beta_quantile(0.1, p)
        draws = beta_sample_batch(RandomStream(3), p, 1_000_000)
        assert abs(np.mean(draws < x10) - 0.1) <= 0.002

    def test_draws_inside_unit_interval(self):
        for a, b in [(60, 6), (0.5, 0.5), (2, 20)]:
            draws = beta_sample_batch(RandomStream(1), BetaParams(a, b), 10_000)
            assert np.all(draws >= 0.0) and np.all(draws <= 1.0)
            assert np.all(np.isfinite(draws))


class TestDensityGrid:
    def test_shape_and_normalization(self):
        xs, dens = density_grid(BetaParams(10, 4), points=512)
        assert xs.shape == (512,) and dens.shape == (512,)
        # midpoint rule on 512 bins
        assert abs(dens.mean() - 1.0) <= 1e-3

    def test_matches_pdf(self):
        p = BetaParams(2, 20)
        xs, dens = density_grid(p, points=64)
        for x, d in zip(xs, dens):
            assert d == pytest.approx(beta_pdf(float(x), p), rel=1e-12)
