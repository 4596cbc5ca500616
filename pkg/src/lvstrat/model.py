"""Model parameters, phase-plane states, and the two vector fields.

The strategic system on the unit square:

    du/dt = u(1 - u - v) - a*c1*u
    dv/dt = p*v(1 - u - v) - a*u

and the classic predator-prey system:

    dP/dt = P(a_birth - b*Q)
    dQ/dt = Q(-n + delta*P)

All types are immutable values and all operations are pure functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

_STATE_TOL = 1e-12


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class ModelParams:
    """Strategic-competition parameters: aggression a, fitness p, kill ratio c1."""

    a: float
    p: float
    c1: float

    def __post_init__(self):
        if not (0.0 <= self.a <= 1.0):
            raise DomainError(f"aggression a must be in [0, 1], got {self.a}")
        if not self.p > 0.0:
            raise DomainError(f"fitness p must be > 0, got {self.p}")
        if not self.c1 > 0.0:
            raise DomainError(f"kill ratio c1 must be > 0, got {self.c1}")

    @property
    def c2(self) -> float:
        """Kill ratio of the second population; always exactly 1/c1."""
        return 1.0 / self.c1

    @property
    def ac(self) -> float:
        """The product a*c1 that selects the equilibrium regime."""
        return self.a * self.c1


@dataclass(frozen=True)
class State:
    """Density pair (u, v) in the unit square."""

    u: float
    v: float

    def __post_init__(self):
        if not (-_STATE_TOL <= self.u <= 1.0 + _STATE_TOL
                and -_STATE_TOL <= self.v <= 1.0 + _STATE_TOL):
            raise DomainError(f"state ({self.u}, {self.v}) outside [0,1]^2")


@dataclass(frozen=True)
class ClassicParams:
    """Classic predator-prey rates; all strictly positive."""

    a_birth: float
    b: float
    delta: float
    n: float

    def __post_init__(self):
        for name in ("a_birth", "b", "delta", "n"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class Derivative:
    du_dt: float
    dv_dt: float


def strategic_field(s: State, m: ModelParams) -> Derivative:
    """Right-hand side of the strategic system at state s."""
    shared = 1.0 - s.u - s.v
    du = s.u * shared - m.a * m.c1 * s.u
    dv = m.p * s.v * shared - m.a * s.u
    if not (math.isfinite(du) and math.isfinite(dv)):
        raise DomainError("non-finite derivative")
    return Derivative(du, dv)


def classic_field(prey: float, predator: float, cp: ClassicParams) -> Derivative:
    """Right-hand side of the classic predator-prey system."""
    if prey < 0.0 or predator < 0.0:
        raise DomainError("populations must be nonnegative")
    return Derivative(prey * (cp.a_birth - cp.b * predator),
                      predator * (-cp.n + cp.delta * prey))


def normalize_counts(raw_u: float, raw_v: float) -> State:
    """Turn a pair of raw counts into a density State summing to 1."""
    if raw_u < 0.0 or raw_v < 0.0:
        raise DomainError("counts must be nonnegative")
    total = raw_u + raw_v
    if total <= 0.0:
        raise DomainError("cannot normalize two zero counts")
    return State(raw_u / total, raw_v / total)
