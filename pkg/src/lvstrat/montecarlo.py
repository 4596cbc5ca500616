"""Ensemble simulation over the stochastic aggression model.

Each run draws its own constant aggression value from a per-run
substream of the seed, integrates, and the report aggregates extinction
outcomes. Substreams are derived from (seed, run index), so the report
is independent of execution order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimation import AggressionModel
from .integrate import IntegrationOptions, TerminationKind, integrate
from .model import DomainError, ModelParams, State

QUANTILE_LEVELS = (0.05, 0.25, 0.50, 0.75, 0.95)


@dataclass(frozen=True)
class EnsembleReport:
    n_runs: int
    seed: int
    extinction_fraction_v: float
    extinction_time_quantiles: tuple[float, ...] | None  # 5/25/50/75/95%
    nonconverged: int
    other_outcomes: int  # horizon reached or u-extinction


def _draw_a(model: AggressionModel, seed: int, run_index: int) -> float:
    if model.sd == 0.0:
        return model.mean
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(run_index,)))
    return min(1.0, max(0.0, float(rng.normal(model.mean, model.sd))))


def run_ensemble(initial: State, c1: float, p: float, model: AggressionModel,
                 opts: IntegrationOptions, n_runs: int, seed: int) -> EnsembleReport:
    """Integrate n_runs trajectories with per-run aggression draws."""
    if n_runs < 1:
        raise DomainError("n_runs must be >= 1")
    ext_times: list[float] = []
    nonconverged = 0
    other = 0
    for i in range(n_runs):
        a = _draw_a(model, seed, i)
        m = ModelParams(a=a, p=p, c1=c1)
        traj = integrate(initial, m, opts)
        kind = traj.termination.kind
        if kind is TerminationKind.EXTINCTION_V:
            ext_times.append(traj.termination.time)
        elif kind is TerminationKind.NUMERICAL_FAILURE:
            nonconverged += 1
        else:
            other += 1
    if ext_times:
        srt = np.sort(np.array(ext_times))
        quantiles = tuple(float(q) for q in np.quantile(srt, QUANTILE_LEVELS))
    else:
        quantiles = None
    return EnsembleReport(
        n_runs=n_runs,
        seed=seed,
        extinction_fraction_v=len(ext_times) / n_runs,
        extinction_time_quantiles=quantiles,
        nonconverged=nonconverged,
        other_outcomes=other,
    )
