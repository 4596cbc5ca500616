"""Phase-plane analysis of the strategic system.

Nullclines, equilibria with eigenvalue classification, the four
sign-region labels A1-A4, omega-limit estimation by simulation, the
A3 trapping check, and the aggression-choice advice table.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .integrate import IntegrationOptions, Trajectory, integrate
from .model import DomainError, ModelParams, State, strategic_field

_NULL_EIG_TOL = 1e-10
_SIGN_TOL = 1e-12


class EquilibriumKind(enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    SADDLE = "saddle"
    DEGENERATE = "degenerate_null_eigenvalue"


@dataclass(frozen=True)
class EquilibriumReport:
    point: State
    eigenvalues: tuple[complex, complex]
    kind: EquilibriumKind


@dataclass(frozen=True)
class RegionLabel:
    label: str  # A1..A4
    on_boundary: bool


class Advice(enum.Enum):
    INDIFFERENT = "indifferent"
    SMALL_A = "small_a"
    LARGE_A = "large_a"
    ZERO_THEN_LARGE_A = "zero_then_large_a"


def jacobian(s: State, m: ModelParams) -> np.ndarray:
    """Linearization of the strategic field at s."""
    return np.array([
        [1.0 - 2.0 * s.u - s.v - m.a * m.c1, -s.u],
        [-m.p * s.v - m.a, m.p * (1.0 - s.u - 2.0 * s.v)],
    ])


def _eigenvalues_2x2(j: np.ndarray) -> tuple[complex, complex]:
    # roots of the characteristic polynomial; no iterative solver needed
    tr = j[0, 0] + j[1, 1]
    det = j[0, 0] * j[1, 1] - j[0, 1] * j[1, 0]
    disc = cmath.sqrt(complex(tr * tr - 4.0 * det))
    return (0.5 * (tr + disc), 0.5 * (tr - disc))


def _classify(eigs: tuple[complex, complex]) -> EquilibriumKind:
    re1, re2 = eigs[0].real, eigs[1].real
    if abs(re1) < _NULL_EIG_TOL or abs(re2) < _NULL_EIG_TOL:
        return EquilibriumKind.DEGENERATE
    if re1 > 0.0 and re2 > 0.0:
        return EquilibriumKind.SOURCE
    if re1 < 0.0 and re2 < 0.0:
        return EquilibriumKind.SINK
    return EquilibriumKind.SADDLE


def _report(point: State, m: ModelParams) -> EquilibriumReport:
    eigs = _eigenvalues_2x2(jacobian(point, m))
    return EquilibriumReport(point, eigs, _classify(eigs))


def saddle_point(m: ModelParams) -> State | None:
    """Closed-form interior saddle, present only when a*c1 is in (0, 1)."""
    ac = m.a * m.c1
    if not (0.0 < ac < 1.0):
        return None
    pc = m.p * m.c1
    v = (1.0 - ac) / (1.0 + pc)
    return State(v * pc, v)


def find_equilibria(m: ModelParams) -> list[EquilibriumReport]:
    """Equilibria of the strategic system with eigenvalues and kind."""
    reports = [_report(State(0.0, 0.0), m), _report(State(0.0, 1.0), m)]
    interior = saddle_point(m)
    if interior is not None:
        reports.append(_report(interior, m))
    return reports


def nullcline_v(v: float, m: ModelParams) -> float:
    """u-coordinate sigma(v) where dv/dt vanishes."""
    if not (0.0 <= v <= 1.0):
        raise DomainError(f"v must be in [0, 1], got {v}")
    denom = m.p * v + m.a
    if denom == 0.0:
        raise DomainError("sigma(v) undefined at a=0, v=0")
    return 1.0 - (m.p * v * v + m.a) / denom


@dataclass(frozen=True)
class UNullcline:
    """The du/dt = 0 locus: the axis u = 0 plus (when a*c1 < 1) the line u+v = line_sum."""

    line_sum: float | None

    @property
    def has_line(self) -> bool:
        return self.line_sum is not None


def nullcline_u(m: ModelParams) -> UNullcline:
    ac = m.a * m.c1
    return UNullcline(1.0 - ac if ac < 1.0 else None)


def classify_region(s: State, m: ModelParams) -> RegionLabel:
    """Sign-region label from (sign du/dt, sign dv/dt).

    The four sets use non-strict inequalities, so points on a nullcline
    satisfy more than one; the lowest-index label wins and the state is
    flagged as on a boundary.
    """
    d = strategic_field(s, m)
    du_nonpos = d.du_dt <= _SIGN_TOL
    du_nonneg = d.du_dt >= -_SIGN_TOL
    dv_nonpos = d.dv_dt <= _SIGN_TOL
    dv_nonneg = d.dv_dt >= -_SIGN_TOL
    boundary = abs(d.du_dt) <= _SIGN_TOL or abs(d.dv_dt) <= _SIGN_TOL
    if du_nonpos and dv_nonneg:
        return RegionLabel("A1", boundary)
    if du_nonpos and dv_nonpos:
        return RegionLabel("A2", boundary)
    if du_nonneg and dv_nonpos:
        return RegionLabel("A3", boundary)
    return RegionLabel("A4", boundary)


@dataclass(frozen=True)
class OmegaLimitEstimate:
    converged: bool
    state: State | None
    final_displacement: float


def omega_limit(initial: State, m: ModelParams, horizon: float = 100.0,
                tol: float = 1e-6) -> OmegaLimitEstimate:
    """Terminal-state estimate of the omega-limit by integrating to the horizon.

    Converged when the state moves less than tol over the final 10% of
    the horizon (absorbing boundaries per the integrator).
    """
    opts = IntegrationOptions(t_end=horizon, stop_at_extinction=False,
                              record_interval=horizon / 1000.0)
    traj = integrate(initial, m, opts)
    window = traj.times >= 0.9 * horizon
    pts = traj.states[window]
    if len(pts) == 0:
        return OmegaLimitEstimate(False, None, math.inf)
    terminal = pts[-1]
    disp = float(np.max(np.hypot(pts[:, 0] - terminal[0], pts[:, 1] - terminal[1])))
    if disp < tol:
        return OmegaLimitEstimate(True, State(float(terminal[0]), float(terminal[1])), disp)
    return OmegaLimitEstimate(False, None, disp)


@dataclass(frozen=True)
class TrappingViolation:
    initial: State
    time: float
    state: State
    label: str


@dataclass(frozen=True)
class TrappingReport:
    n_samples: int
    violations: tuple[TrappingViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_a3_trapping(m: ModelParams, n_samples: int, horizon: float,
                      seed: int = 0, margin: float = 1e-6,
                      initial_states: list[State] | None = None) -> TrappingReport:
    """Sample interior A3 starts and look for any later state outside A3.

    A3 is closed (du/dt >= 0, dv/dt <= 0), so a violation means a
    demonstrably positive dv/dt or negative du/dt along a trajectory.
    Violations indicate an integration-tolerance problem, not a model
    property. When A3 has no strict interior (a = 0 degenerates it to
    nullcline segments), pass explicit ``initial_states`` instead.
    """
    if m.a * m.c1 == 1.0:
        raise DomainError("trapping check requires a*c1 != 1")
    violations: list[TrappingViolation] = []
    opts = IntegrationOptions(t_end=horizon, record_interval=horizon / 500.0)

    if initial_states is not None:
        starts = list(initial_states)
        n_samples = len(starts)
    else:
        rng = np.random.default_rng(seed)
        starts = []
        attempts = 0
        while len(starts) < n_samples:
            attempts += 1
            if attempts > 10000 * max(1, n_samples):
                raise DomainError("could not sample the interior of A3")
            s = State(float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 1.0)))
            d = strategic_field(s, m)
            if d.du_dt > margin and d.dv_dt < -margin:
                starts.append(s)

    for s in starts:
        traj = integrate(s, m, opts)
        for t, (u, v) in zip(traj.times, traj.states):
            d2 = strategic_field(State(float(u), float(v)), m)
            # exits A3 only if strictly outside its closure
            if d2.du_dt < -1e-9 or d2.dv_dt > 1e-9:
                violations.append(TrappingViolation(
                    s, float(t), State(float(u), float(v)),
                    classify_region(State(float(u), float(v)), m).label))
                break
    return TrappingReport(n_samples, tuple(violations))


def strategy_advice(p: float, s: State) -> Advice:
    """Recommended aggression choice given the rival's fitness and the state."""
    if not p > 0.0:
        raise DomainError("p must be > 0")
    saturated = s.u + s.v > 1.0
    if p == 1.0:
        return Advice.INDIFFERENT
    if p < 1.0:
        return Advice.LARGE_A if saturated else Advice.SMALL_A
    return Advice.ZERO_THEN_LARGE_A if saturated else Advice.LARGE_A
