"""Strategic-aggression Lotka-Volterra competition toolkit.

Simulation of the two-population density model with an aggression
strategy parameter, phase-plane analysis, aggression estimation from
engagement data, regression diagnostics, and seeded Monte Carlo
ensembles.
"""
from .analysis import (
    Advice,
    EquilibriumKind,
    EquilibriumReport,
    RegionLabel,
    check_a3_trapping,
    classify_region,
    find_equilibria,
    jacobian,
    nullcline_u,
    nullcline_v,
    omega_limit,
    saddle_point,
    strategy_advice,
)
from .estimation import (
    AggressionModel,
    EngagementSeries,
    aggression_density,
    estimate_reach,
    fit_aggression_model,
    read_engagement_csv,
    sample_aggression,
    weekly_to_daily,
)
from .integrate import (
    IntegrationOptions,
    Population,
    Termination,
    TerminationKind,
    Trajectory,
    classic_conserved,
    extinction_time,
    integrate,
    integrate_classic,
)
from .kernels import BACKEND
from .model import (
    ClassicParams,
    Derivative,
    DomainError,
    ModelParams,
    State,
    classic_field,
    normalize_counts,
    strategic_field,
)
from .montecarlo import EnsembleReport, run_ensemble
from .scenario import Scenario, load_scenario, parse_scenario, serialize_scenario
from .stats import OlsFit, TestResult, breusch_pagan, ks_test_normal, ols_fit

__version__ = "0.1.0"
