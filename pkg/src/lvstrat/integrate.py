"""Trajectory integration with extinction-event location.

Wraps the selected kernel backend (see lvstrat.kernels) behind value
types. Extinction of a population is declared when its density crosses
``extinction_eps`` from above; the crossing time is located on the dense
output. The v = 0 edge is absorbing: in continue-past-extinction mode
the integration carries on in u alone once v reaches zero.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import ClassicParams, DomainError, ModelParams, State


class TerminationKind(enum.Enum):
    HORIZON_REACHED = "horizon"
    EXTINCTION_U = "extinction_u"
    EXTINCTION_V = "extinction_v"
    NUMERICAL_FAILURE = "failure"


_TERM_BY_CODE = {
    kernels.TERM_HORIZON: TerminationKind.HORIZON_REACHED,
    kernels.TERM_EXTINCT_U: TerminationKind.EXTINCTION_U,
    kernels.TERM_EXTINCT_V: TerminationKind.EXTINCTION_V,
    kernels.TERM_FAILURE: TerminationKind.NUMERICAL_FAILURE,
}


@dataclass(frozen=True)
class Termination:
    kind: TerminationKind
    time: float


@dataclass(frozen=True)
class IntegrationOptions:
    t_end: float = 50.0
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_step: float | None = None  # defaults to 0.01 * t_end
    extinction_eps: float = 1e-3
    record_interval: float = 0.1
    stop_at_extinction: bool = True

    def __post_init__(self):
        if not self.t_end > 0.0:
            raise DomainError("t_end must be > 0")
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise DomainError("tolerances must be > 0")
        if not (0.0 < self.extinction_eps < 0.1):
            raise DomainError("extinction_eps must be in (0, 0.1)")
        if not self.record_interval > 0.0:
            raise DomainError("record_interval must be > 0")
        if self.max_step is not None and not self.max_step > 0.0:
            raise DomainError("max_step must be > 0")

    @property
    def effective_max_step(self) -> float:
        return self.max_step if self.max_step is not None else 0.01 * self.t_end


@dataclass(frozen=True)
class Trajectory:
    """Discrete realization of a phase-plane solution curve."""

    times: np.ndarray
    states: np.ndarray  # shape (n, 2), columns u and v
    termination: Termination
    extinction_time_u: float | None = None
    extinction_time_v: float | None = None

    @property
    def u(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def v(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def terminal(self) -> State:
        return State(float(self.states[-1, 0]), float(self.states[-1, 1]))


def integrate(initial: State, m: ModelParams, opts: IntegrationOptions) -> Trajectory:
    """Integrate the strategic field from ``initial`` over [0, t_end]."""
    ts, us, vs, code, t_term, ext_u, ext_v = kernels.integrate_kernel(
        kernels.FIELD_STRATEGIC,
        m.a, m.p, m.c1, 0.0,
        initial.u, initial.v,
        opts.t_end, opts.rel_tol, opts.abs_tol,
        opts.effective_max_step, opts.record_interval,
        opts.extinction_eps, opts.stop_at_extinction, True,
    )
    return Trajectory(
        times=ts,
        states=np.column_stack([us, vs]),
        termination=Termination(_TERM_BY_CODE[code], float(t_term)),
        extinction_time_u=None if math.isnan(ext_u) else float(ext_u),
        extinction_time_v=None if math.isnan(ext_v) else float(ext_v),
    )


def integrate_classic(prey0: float, predator0: float, cp: ClassicParams,
                      opts: IntegrationOptions) -> Trajectory:
    """Integrate the classic predator-prey field (no events, no clamping)."""
    if prey0 < 0.0 or predator0 < 0.0:
        raise DomainError("populations must be nonnegative")
    ts, ps, qs, code, t_term, _, _ = kernels.integrate_kernel(
        kernels.FIELD_CLASSIC,
        cp.a_birth, cp.b, cp.delta, cp.n,
        prey0, predator0,
        opts.t_end, opts.rel_tol, opts.abs_tol,
        opts.effective_max_step, opts.record_interval,
        opts.extinction_eps, False, False,
    )
    return Trajectory(
        times=ts,
        states=np.column_stack([ps, qs]),
        termination=Termination(_TERM_BY_CODE[code], float(t_term)),
    )


class Population(enum.Enum):
    U = "u"
    V = "v"


def extinction_time(traj: Trajectory, which: Population) -> float | None:
    """Termination time if the trajectory ended in the selected extinction."""
    kind = traj.termination.kind
    if which is Population.U and kind is TerminationKind.EXTINCTION_U:
        return traj.termination.time
    if which is Population.V and kind is TerminationKind.EXTINCTION_V:
        return traj.termination.time
    return None


def classic_conserved(prey: float, predator: float, cp: ClassicParams) -> float:
    """First integral H = delta*P - n*ln P + b*Q - a_birth*ln Q of the classic system."""
    if prey <= 0.0 or predator <= 0.0:
        raise DomainError("conserved quantity needs strictly positive populations")
    return (cp.delta * prey - cp.n * math.log(prey)
            + cp.b * predator - cp.a_birth * math.log(predator))
