"""Regression-diagnostic checks against statsmodels/scipy oracles.

Frozen constants were computed once from statsmodels (OLS,
het_breuschpagan) and scipy.stats.kstest; both libraries are also
imported directly for independent cross-checks.
"""
import numpy as np
import pytest
import scipy.stats as sps
import statsmodels.api as sm
from statsmodels.stats.diagnostic import het_breuschpagan

from lvstrat.model import DomainError
from lvstrat.stats import breusch_pagan, ks_test_normal, ols_fit


def _homoskedastic_xy():
    rng = np.random.default_rng(42)
    x = rng.uniform(0.0, 10.0, 200)
    y = 2.0 + 0.5 * x + rng.normal(0.0, 1.0, 200)
    return x, y


def _heteroskedastic_xy():
    rng = np.random.default_rng(43)
    x = rng.uniform(0.0, 10.0, 200)
    y = 2.0 + 0.5 * x + rng.normal(0.0, 1.0, 200) * x
    return x, y


class TestOls:
    def test_exact_line(self):
        x = np.arange(10.0)
        fit = ols_fit(x, 3.0 - 2.0 * x)
        assert fit.beta0 == pytest.approx(3.0, abs=1e-12)
        assert fit.beta1 == pytest.approx(-2.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_matches_statsmodels(self):
        x, y = _homoskedastic_xy()
        fit = ols_fit(x, y)
        res = sm.OLS(y, sm.add_constant(x)).fit()
        assert fit.beta0 == pytest.approx(res.params[0], abs=1e-10)
        assert fit.beta1 == pytest.approx(res.params[1], abs=1e-10)
        assert fit.se_beta[0] == pytest.approx(res.bse[0], abs=1e-10)
        assert fit.se_beta[1] == pytest.approx(res.bse[1], abs=1e-10)
        assert fit.p_values[0] == pytest.approx(res.pvalues[0], abs=1e-10)
        assert fit.p_values[1] == pytest.approx(res.pvalues[1], abs=1e-10)
        assert fit.r_squared == pytest.approx(res.rsquared, abs=1e-12)
        assert np.allclose(fit.residuals, res.resid, atol=1e-12)

    def test_decline_fixture_recovers_slope(self):
        # simulated weekly decline: intercept ~151.4, slope ~-0.75
        rng = np.random.default_rng(5)
        x = np.arange(20, dtype=float)
        y = 151.425 - 0.75 * x + rng.normal(0.0, 5.0, 20)
        fit = ols_fit(x, y)
        assert fit.beta0 == pytest.approx(151.3961439, abs=1e-6)
        assert fit.beta1 == pytest.approx(-0.84892639, abs=1e-6)
        assert fit.se_beta[0] == pytest.approx(2.10575914, abs=1e-6)
        assert fit.se_beta[1] == pytest.approx(0.18948517, abs=1e-6)
        # the true coefficients sit within 3 standard errors
        assert abs(fit.beta0 - 151.425) < 3 * fit.se_beta[0]
        assert abs(fit.beta1 - (-0.75)) < 3 * fit.se_beta[1]

    def test_rejects_degenerate_input(self):
        with pytest.raises(DomainError):
            ols_fit([1.0, 2.0], [1.0, 2.0])
        with pytest.raises(DomainError):
            ols_fit([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


class TestBreuschPagan:
    def test_homoskedastic_frozen(self):
        x, y = _homoskedastic_xy()
        res = breusch_pagan(x, ols_fit(x, y).residuals)
        assert res.statistic == pytest.approx(0.17791535788693746, abs=1e-10)
        assert res.p_value == pytest.approx(0.6731709037006913, abs=1e-10)
        assert not res.reject_at_05

    def test_heteroskedastic_frozen(self):
        x, y = _heteroskedastic_xy()
        res = breusch_pagan(x, ols_fit(x, y).residuals)
        assert res.statistic == pytest.approx(39.851928592785214, abs=1e-8)
        assert res.p_value == pytest.approx(2.739635458209065e-10, rel=1e-6)
        assert res.reject_at_05

    def test_matches_statsmodels(self):
        for make in (_homoskedastic_xy, _heteroskedastic_xy):
            x, y = make()
            resid = sm.OLS(y, sm.add_constant(x)).fit().resid
            lm, lm_p, _, _ = het_breuschpagan(resid, sm.add_constant(x))
            mine = breusch_pagan(x, resid)
            assert mine.statistic == pytest.approx(lm, abs=1e-8)
            assert mine.p_value == pytest.approx(lm_p, rel=1e-8, abs=1e-12)

    def test_zero_residuals_degenerate(self):
        res = breusch_pagan([1.0, 2.0, 3.0, 4.0], [0.0, 0.0, 0.0, 0.0])
        assert res.statistic == 0.0
        assert res.p_value == 1.0


class TestKsNormal:
    def test_normal_sample_frozen(self):
        rng = np.random.default_rng(7)
        s = rng.normal(2.0, 3.0, 500)
        res = ks_test_normal(s)
        assert res.statistic == pytest.approx(0.030391024036566572, abs=1e-12)
        assert res.p_value == pytest.approx(0.7449307143485313, abs=1e-10)
        assert not res.reject_at_05

    def test_uniform_sample_frozen(self):
        rng = np.random.default_rng(8)
        s = rng.uniform(0.0, 1.0, 500)
        res = ks_test_normal(s)
        assert res.statistic == pytest.approx(0.06605172251991698, abs=1e-12)
        assert res.p_value == pytest.approx(0.02548449792477979, abs=1e-10)
        assert res.reject_at_05

    def test_matches_scipy_kstest(self):
        rng = np.random.default_rng(9)
        for _ in range(5):
            s = rng.normal(rng.uniform(-5, 5), rng.uniform(0.5, 4.0), 200)
            mu, sd = s.mean(), s.std(ddof=1)
            ref = sps.kstest(s, "norm", args=(mu, sd), mode="asymp")
            mine = ks_test_normal(s)
            assert mine.statistic == pytest.approx(ref.statistic, abs=1e-12)
            assert mine.p_value == pytest.approx(ref.pvalue, abs=1e-8)

    def test_rejects_tiny_or_constant_samples(self):
        with pytest.raises(DomainError):
            ks_test_normal([1.0, 2.0, 3.0])
        with pytest.raises(DomainError):
            ks_test_normal([1.0] * 10)
