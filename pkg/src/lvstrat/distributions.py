"""Distribution functions backing the regression diagnostics.

Hand-rolled so the test suite can check them against an independent
reference implementation: normal CDF via erf, chi-squared and Student-t
tails via the regularized incomplete gamma/beta functions, and the
Kolmogorov asymptotic survival function via its alternating series.
"""
from __future__ import annotations

import math

from .model import DomainError

_EPS = 1e-15
_MAX_ITER = 500


def normal_cdf(x: float, mu: float = 0.0, sigma: float = 1.0) -> float:
    if sigma <= 0.0:
        raise DomainError("sigma must be > 0")
    return 0.5 * math.erfc(-(x - mu) / (sigma * math.sqrt(2.0)))


def _gamma_p_series(a: float, x: float) -> float:
    # lower regularized incomplete gamma by series, for x < a + 1
    ap = a
    total = 1.0 / a
    delta = total
    for _ in range(_MAX_ITER):
        ap += 1.0
        delta *= x / ap
        total += delta
        if abs(delta) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))

def _gamma_q_contfrac(a: float, x: float) -> float:
    # upper regularized incomplete gamma by continued fraction, for x >= a + 1
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def chi_squared_sf(x: float, df: int) -> float:
    """Upper tail of the chi-squared distribution with df degrees of freedom."""
    if df <= 0:
        raise DomainError("df must be a positive count")
    if x <= 0.0:
        return 1.0
    a = 0.5 * df
    half_x = 0.5 * x
    if half_x < a + 1.0:
        return 1.0 - _gamma_p_series(a, half_x)
    return _gamma_q_contfrac(a, half_x)


def kolmogorov_sf(x: float) -> float:
    """Asymptotic Kolmogorov survival function Q(x) = 2 sum (-1)^(k-1) exp(-2 k^2 x^2)."""
    if x <= 0.0:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, _MAX_ITER):
        term = sign * math.exp(-2.0 * k * k * x * x)
        total += term
        if abs(term) < _EPS:
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def _beta_contfrac(a: float, b: float, x: float) -> float:
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def _betainc(a: float, b: float, x: float) -> float:
    # regularized incomplete beta I_x(a, b)
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    front = math.exp(math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                     + a * math.log(x) + b * math.log(1.0 - x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_contfrac(a, b, x) / a
    return 1.0 - front * _beta_contfrac(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: int) -> float:
    """Upper tail of the Student-t distribution with df degrees of freedom."""
    if df <= 0:
        raise DomainError("df must be a positive count")
    p = 0.5 * _betainc(0.5 * df, 0.5, df / (df + t * t))
    return p if t >= 0.0 else 1.0 - p
