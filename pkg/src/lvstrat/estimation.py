"""From raw engagement observations to model inputs.

The aggression density for a period is the first actor's share of total
engagement, a_t = n_t / (n_t + d_t); the per-period values feed a normal
model of the aggression parameter.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .model import DomainError

CSV_COLUMNS = ("period", "n_engagement", "d_engagement")


@dataclass(frozen=True)
class EngagementRow:
    period: str
    n_t: float
    d_t: float


@dataclass(frozen=True)
class EngagementSeries:
    rows: tuple[EngagementRow, ...]

    def __post_init__(self):
        for r in self.rows:
            if r.n_t < 0 or r.d_t < 0:
                raise DomainError(f"negative count in period {r.period!r}")


@dataclass(frozen=True)
class AggressionModel:
    """Normal model of the aggression parameter, clamped to [0, 1] on draw."""

    mean: float
    sd: float

    def __post_init__(self):
        if not (0.0 <= self.mean <= 1.0):
            raise DomainError("mean must be in [0, 1]")
        if not (0.0 <= self.sd < 0.5):
            raise DomainError("sd must be in [0, 0.5)")


@dataclass(frozen=True)
class AggressionFit:
    """Fit summary; the sample (n-1) sd parameterizes the model, both sds reported."""

    model: AggressionModel
    per_period: tuple[tuple[str, float], ...]
    sd_sample: float
    sd_population: float


def aggression_density(n_t: float, d_t: float) -> float:
    if n_t < 0 or d_t < 0:
        raise DomainError("engagement counts must be nonnegative")
    total = n_t + d_t
    if total <= 0:
        raise DomainError("both engagement counts are zero")
    return n_t / total


def estimate_reach(accounts: float, engagement_rate: float, posts_per_week: float) -> float:
    """Expected weekly reach: accounts * engagement rate * posts per week."""
    if accounts < 0 or engagement_rate < 0 or posts_per_week < 0:
        raise DomainError("inputs must be nonnegative")
    return accounts * engagement_rate * posts_per_week


def weekly_to_daily(weekly: float) -> float:
    if weekly < 0:
        raise DomainError("weekly reach must be nonnegative")
    return weekly / 7.0


def fit_aggression_model(series: EngagementSeries) -> AggressionFit:
    """Per-period a_t plus sample mean/sd (n-1 denominator) as a normal model."""
    usable = [(r.period, aggression_density(r.n_t, r.d_t)) for r in series.rows]
    if len(usable) < 2:
        raise DomainError("need at least 2 rows to fit")
    values = np.array([a for _, a in usable])
    mean = float(values.mean())
    sd_sample = float(values.std(ddof=1))
    sd_population = float(values.std(ddof=0))
    return AggressionFit(AggressionModel(mean, sd_sample), tuple(usable),
                         sd_sample, sd_population)


def sample_aggression(model: AggressionModel, seed: int) -> float:
    """One seeded draw from the normal model, clamped to [0, 1]."""
    if model.sd == 0.0:
        return model.mean
    draw = float(np.random.default_rng(seed).normal(model.mean, model.sd))
    return min(1.0, max(0.0, draw))


def read_engagement_csv(path: str | Path) -> EngagementSeries:
    """Read the `period,n_engagement,d_engagement` schema; reject bad rows by number."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DomainError("empty engagement file") from None
        header = [h.strip() for h in header]
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise DomainError(f"missing column(s): {', '.join(missing)}")
        idx = {c: header.index(c) for c in CSV_COLUMNS}
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec or all(not f.strip() for f in rec):
                continue
            try:
                n_t = float(rec[idx["n_engagement"]])
                d_t = float(rec[idx["d_engagement"]])
            except (ValueError, IndexError):
                raise DomainError(f"row {lineno}: unparseable engagement counts") from None
            if n_t < 0 or d_t < 0:
                raise DomainError(f"row {lineno}: negative engagement count")
            if n_t + d_t == 0:
                raise DomainError(f"row {lineno}: both engagement counts are zero")
            rows.append(EngagementRow(rec[idx["period"]].strip(), n_t, d_t))
    if not rows:
        raise DomainError("no data rows")
    return EngagementSeries(tuple(rows))
