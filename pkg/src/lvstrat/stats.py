"""Small-sample regression diagnostics.

Simple OLS with coefficient t-tests, the Breusch-Pagan test in the
studentized (Koenker) n*R^2 form, and the plain Kolmogorov-Smirnov
normality check with parameters estimated from the sample.

Note: the KS p-value here is the uncorrected asymptotic one. With
estimated parameters it is anti-conservative (the Lilliefors correction
is deliberately not applied; the uncorrected procedure is the one being
reproduced).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .distributions import chi_squared_sf, kolmogorov_sf, normal_cdf, student_t_sf
from .model import DomainError


@dataclass(frozen=True)
class OlsFit:
    beta0: float
    beta1: float
    residuals: np.ndarray
    r_squared: float
    se_beta: tuple[float, float]
    t_stats: tuple[float, float]
    p_values: tuple[float, float]


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float

    @property
    def reject_at_05(self) -> bool:
        return self.p_value < 0.05


def ols_fit(x: Sequence[float], y: Sequence[float]) -> OlsFit:
    """Least-squares fit of y = beta0 + beta1*x with two-sided t-tests."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("x and y must be 1-d sequences of equal length")
    n = len(x)
    if n < 3:
        raise DomainError("need at least 3 points")
    xbar = x.mean()
    ybar = y.mean()
    sxx = float(np.sum((x - xbar) ** 2))
    if sxx == 0.0:
        raise DomainError("x is constant")
    sxy = float(np.sum((x - xbar) * (y - ybar)))
    beta1 = sxy / sxx
    beta0 = ybar - beta1 * xbar
    resid = y - beta0 - beta1 * x
    ssr = float(np.sum(resid ** 2))
    syy = float(np.sum((y - ybar) ** 2))
    r2 = 1.0 if syy == 0.0 else 1.0 - ssr / syy
    sigma2 = ssr / (n - 2)
    se1 = math.sqrt(sigma2 / sxx)
    se0 = math.sqrt(sigma2 * (1.0 / n + xbar * xbar / sxx))
    t0 = beta0 / se0 if se0 > 0.0 else math.inf * np.sign(beta0)
    t1 = beta1 / se1 if se1 > 0.0 else math.inf * np.sign(beta1)
    p0 = 2.0 * student_t_sf(abs(t0), n - 2) if math.isfinite(t0) else 0.0
    p1 = 2.0 * student_t_sf(abs(t1), n - 2) if math.isfinite(t1) else 0.0
    return OlsFit(beta0, beta1, resid, r2, (se0, se1), (t0, t1), (p0, p1))


def breusch_pagan(x: Sequence[float], residuals: Sequence[float]) -> TestResult:
    """LM = n * R^2 from regressing squared residuals on x; chi-squared(1) tail."""
    x = np.asarray(x, dtype=float)
    e = np.asarray(residuals, dtype=float)
    if x.shape != e.shape or x.ndim != 1:
        raise DomainError("x and residuals must be 1-d sequences of equal length")
    n = len(x)
    if n < 4:
        raise DomainError("need at least 4 points")
    e2 = e ** 2
    syy = float(np.sum((e2 - e2.mean()) ** 2))
    sxx = float(np.sum((x - x.mean()) ** 2))
    if sxx == 0.0:
        raise DomainError("x is constant")
    if syy == 0.0:
        # degenerate auxiliary regression (e.g. residuals identically zero)
        return TestResult(0.0, 1.0)
    sxy = float(np.sum((x - x.mean()) * (e2 - e2.mean())))
    r2 = (sxy * sxy) / (sxx * syy)
    lm = n * r2
    return TestResult(lm, chi_squared_sf(lm, 1))


def _ks_statistic(sample: np.ndarray, cdf: Callable[[float], float]) -> float:
    srt = np.sort(sample)
    n = len(srt)
    cdfs = np.array([cdf(float(s)) for s in srt])
    i = np.arange(1, n + 1)
    d_plus = float(np.max(i / n - cdfs))
    d_minus = float(np.max(cdfs - (i - 1) / n))
    return max(d_plus, d_minus)


def ks_test_normal(sample: Sequence[float]) -> TestResult:
    """Sup-distance to the normal fitted by sample mean and sd (ddof=1)."""
    s = np.asarray(sample, dtype=float)
    if s.ndim != 1 or len(s) < 5:
        raise DomainError("need a 1-d sample of at least 5 points")
    mu = float(s.mean())
    sd = float(s.std(ddof=1))
    if sd == 0.0:
        raise DomainError("sample variance is zero")
    d = _ks_statistic(s, lambda q: normal_cdf(q, mu, sd))
    return TestResult(d, kolmogorov_sf(math.sqrt(len(s)) * d))
