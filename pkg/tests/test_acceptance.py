"""End-to-end acceptance gate.

Thirteen criteria, one test and one printed PASS line each. Each test
exercises the public API or CLI the way an analyst would, with
tolerances wide enough to absorb threshold and sampling choices but
tight enough to catch regressions.
"""
import numpy as np
import pytest

from lvstrat.analysis import (
    EquilibriumKind,
    check_a3_trapping,
    find_equilibria,
    nullcline_v,
    saddle_point,
)
from lvstrat.cli import main
from lvstrat.data import engagement_csv_path, scenario_path
from lvstrat.estimation import (
    AggressionModel,
    estimate_reach,
    fit_aggression_model,
    read_engagement_csv,
)
from lvstrat.integrate import (
    IntegrationOptions,
    TerminationKind,
    classic_conserved,
    integrate,
    integrate_classic,
)
from lvstrat.model import ClassicParams, ModelParams, State, strategic_field
from lvstrat.montecarlo import run_ensemble
from lvstrat.scenario import load_scenario
from lvstrat.stats import breusch_pagan, ks_test_normal, ols_fit


def _simulate(name):
    sc = load_scenario(scenario_path(name))
    return sc, integrate(sc.initial_state(), sc.model_params(),
                         sc.integration_options())


def _extinction_time(name):
    _, traj = _simulate(name)
    assert traj.termination.kind is TerminationKind.EXTINCTION_V
    return traj.termination.time


def _report(num, text):
    print(f"ACCEPTANCE {num:2d} PASS: {text}")


def test_01_influencer_extinction_window():
    t = _extinction_time("influencer")
    assert 5.0 <= t <= 9.0
    _report(1, f"influencer rival extinction at t = {t:.4f} in [5, 9]")


def test_02_mitigation_faster_than_influencer():
    t_mit = _extinction_time("mitigation")
    t_inf = _extinction_time("influencer")
    assert 3.5 <= t_mit <= 6.5
    assert t_mit < t_inf
    _report(2, f"mitigation extinction at t = {t_mit:.4f} in [3.5, 6.5], "
               f"earlier than influencer ({t_inf:.4f})")


def test_03_rival_spike_extinction_window():
    t = _extinction_time("taliban_spike_98_influencer")
    assert 7.0 <= t <= 11.0
    _report(3, f"v0 = 0.98 spike extinction at t = {t:.4f} in [7, 11]")


def test_04_own_spike_extinction_window():
    t = _extinction_time("nato_spike_90_influencer")
    assert 1.0 <= t <= 2.0
    _report(4, f"u0 = 0.9 spike extinction at t = {t:.4f} in [1, 2]")


def test_05_inaction_stationary():
    sc, traj = _simulate("inaction")
    assert traj.termination.kind is TerminationKind.HORIZON_REACHED
    s0 = sc.initial_state()
    disp = float(np.hypot(traj.u - s0.u, traj.v - s0.v).max())
    assert disp < 1e-6
    _report(5, f"inaction start on u+v = 1 stays put; max displacement "
               f"{disp:.2e} < 1e-6 over t_end = {sc.t_end:g}")


def test_06_own_spike_inaction_asymmetric_decay():
    sc, traj = _simulate("nato_spike_90_inaction")
    assert sc.t_end == 100.0
    assert traj.termination.kind is TerminationKind.HORIZON_REACHED
    s0 = sc.initial_state()
    u_ratio = traj.u[-1] / s0.u
    v_ratio = traj.v[-1] / s0.v
    assert u_ratio < 0.35
    assert v_ratio > 0.8
    _report(6, f"inaction after u-spike: u shrinks to {u_ratio:.4f} of start "
               f"(< 0.35) while v keeps {v_ratio:.4f} (> 0.8)")


def _random_params(rng, regime):
    while True:
        a = rng.uniform(0.05, 1.0)
        p = rng.uniform(0.05, 2.0)
        if regime == "interior":
            c1 = rng.uniform(0.05, 0.999) / a
            if c1 <= 0 or a * c1 >= 1.0:
                continue
        elif regime == "above":
            c1 = rng.uniform(1.001, 3.0) / a
        else:
            c1 = 1.0 / a
        return ModelParams(a=a, p=p, c1=c1)


def test_07_equilibrium_taxonomy():
    rng = np.random.default_rng(2024)
    mismatches = 0
    for _ in range(100):
        kinds = [r.kind for r in find_equilibria(_random_params(rng, "interior"))]
        if kinds != [EquilibriumKind.SOURCE, EquilibriumKind.SINK,
                     EquilibriumKind.SADDLE]:
            mismatches += 1
    for _ in range(100):
        kinds = [r.kind for r in find_equilibria(_random_params(rng, "above"))]
        if kinds != [EquilibriumKind.SADDLE, EquilibriumKind.SINK]:
            mismatches += 1
    for _ in range(100):
        kinds = [r.kind for r in find_equilibria(_random_params(rng, "one"))]
        if kinds[0] is not EquilibriumKind.DEGENERATE or \
                kinds[1] is not EquilibriumKind.SINK:
            mismatches += 1
    assert mismatches == 0
    _report(7, "equilibrium taxonomy matched in 300/300 random parameter sets "
               "(100 per a*c1 regime)")


def test_08_saddle_and_nullcline_consistency():
    rng = np.random.default_rng(2025)
    for _ in range(100):
        m = _random_params(rng, "interior")
        d = strategic_field(saddle_point(m), m)
        assert abs(d.du_dt) < 1e-10
        assert abs(d.dv_dt) < 1e-10
    for _ in range(1000):
        m = _random_params(rng, "interior")
        v = rng.uniform(0.0, 1.0)
        assert nullcline_v(v, m) == pytest.approx(
            m.p * v * (1.0 - v) / (m.p * v + m.a), abs=1e-14)
    _report(8, "closed-form saddle stationary to 1e-10 (100 draws); "
               "sigma(v) identity holds to 1e-14 (1000 draws)")


def test_09_a3_trapping():
    m = ModelParams(a=0.814112, p=0.149, c1=0.175)
    report = check_a3_trapping(m, n_samples=200, horizon=50.0, seed=0)
    assert report.n_samples == 200
    assert report.ok
    _report(9, "0 exits from the A3 sign-region in 200 sampled starts, "
               "horizon 50")


def test_10_integrator_conservation_oracle():
    cp = ClassicParams(a_birth=1.0, b=0.5, delta=0.25, n=0.3)
    opts = IntegrationOptions(t_end=100.0, rel_tol=1e-9, abs_tol=1e-12,
                              max_step=0.1, record_interval=0.5)
    traj = integrate_classic(2.0, 1.0, cp, opts)
    h = np.array([classic_conserved(p, q, cp) for p, q in traj.states])
    drift = float(np.max(np.abs(h - h[0])) / abs(h[0]))
    assert drift < 1e-6
    _report(10, f"conserved quantity drift {drift:.2e} < 1e-6 relative over "
                f"t in [0, 100]")


def test_11_estimation_chain():
    fit = fit_aggression_model(read_engagement_csv(engagement_csv_path()))
    assert fit.model.mean == pytest.approx(0.814112, abs=1e-6)
    assert fit.sd_sample == pytest.approx(0.027464, abs=1e-6)
    reach = estimate_reach(120000, 0.029, 3)
    assert reach == 10440.0
    _report(11, f"fixture aggression mean {fit.model.mean:.6f} / "
                f"sd {fit.sd_sample:.6f} within 1e-6; reach(120000, 0.029, 3) "
                f"= {reach:g} exactly")


def test_12_stats_oracles():
    # OLS against the normal-equation oracle
    rng = np.random.default_rng(42)
    x = rng.uniform(0.0, 10.0, 200)
    y = 2.0 + 0.5 * x + rng.normal(0.0, 1.0, 200)
    fit = ols_fit(x, y)
    design = np.column_stack([np.ones_like(x), x])
    beta = np.linalg.solve(design.T @ design, design.T @ y)
    assert fit.beta0 == pytest.approx(beta[0], abs=1e-10)
    assert fit.beta1 == pytest.approx(beta[1], abs=1e-10)

    # frozen reference p-values (computed once with statsmodels/scipy)
    bp = breusch_pagan(x, fit.residuals)
    assert bp.p_value == pytest.approx(0.6731709037006913, abs=1e-6)
    rng7 = np.random.default_rng(7)
    ks = ks_test_normal(rng7.normal(2.0, 3.0, 500))
    assert ks.p_value == pytest.approx(0.7449307143485313, abs=1e-6)

    # decline-curve generator fixture: recover the coefficients within 3 se
    rng5 = np.random.default_rng(5)
    xd = np.arange(20, dtype=float)
    yd = 151.425 - 0.75 * xd + rng5.normal(0.0, 5.0, 20)
    fd = ols_fit(xd, yd)
    assert abs(fd.beta0 - 151.425) < 3 * fd.se_beta[0]
    assert abs(fd.beta1 - (-0.75)) < 3 * fd.se_beta[1]
    _report(12, "OLS matches normal equations to 1e-10; BP/KS p-values match "
                "frozen oracles to 1e-6; decline fixture recovers both "
                "coefficients within 3 se")


def test_13_ensemble_determinism(tmp_path):
    sc_path = scenario_path("influencer_stochastic")
    digests = []
    for sub in ("run1", "run2"):
        out = tmp_path / sub
        out.mkdir()
        assert main(["ensemble", str(sc_path), "--runs", "40",
                     "--out", str(out)]) == 0
        digests.append(
            (out / "influencer_stochastic_ensemble.txt").read_bytes())
    assert digests[0] == digests[1]

    # degenerate sd = 0 ensemble median equals the single-run time exactly
    sc = load_scenario(scenario_path("influencer"))
    opts = sc.integration_options()
    single = integrate(sc.initial_state(), sc.model_params(), opts)
    report = run_ensemble(sc.initial_state(), sc.c1, sc.p,
                          AggressionModel(sc.a, 0.0), opts, n_runs=7, seed=0)
    assert report.extinction_time_quantiles[2] == single.termination.time
    _report(13, "seeded ensemble report byte-identical across runs; sd = 0 "
                "ensemble median equals the deterministic time exactly")
