"""Command-line front end: scenario files in, artifact files out.

Subcommands: simulate, analyze, estimate, ensemble, stats. All outputs
are deterministic for fixed inputs and seeds. Times are reported in
dimensionless model units throughout.

Exit codes: 0 success, 2 invalid configuration or input schema,
3 numerical failure (summary still written).
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import svgplot
from .analysis import classify_region, find_equilibria, nullcline_u, nullcline_v, omega_limit
from .estimation import AggressionModel, fit_aggression_model, read_engagement_csv
from .integrate import IntegrationOptions, TerminationKind, Trajectory, integrate
from .kernels import BACKEND
from .model import DomainError, ModelParams, State
from .montecarlo import QUANTILE_LEVELS, run_ensemble
from .scenario import Scenario, ScenarioError, load_scenario
from .stats import breusch_pagan, ks_test_normal, ols_fit

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _write_kv(path: Path, items: list[tuple[str, object]]) -> None:
    lines = [f"{k} = {_fmt(v) if isinstance(v, float) else v}" for k, v in items]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_trajectory_csv(path: Path, traj: Trajectory) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        fh.write("t,u,v\n")
        for t, (u, v) in zip(traj.times, traj.states):
            fh.write(f"{_fmt(t)},{_fmt(u)},{_fmt(v)}\n")


def _region_sequence(traj: Trajectory, m: ModelParams) -> list[str]:
    seq: list[str] = []
    for u, v in traj.states:
        label = classify_region(State(float(u), float(v)), m).label
        if not seq or seq[-1] != label:
            seq.append(label)
    return seq


def cmd_simulate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        sc = load_scenario(args.scenario)
        m = sc.model_params(args.seed)
        initial = sc.initial_state()
        opts = sc.integration_options()
    except (ScenarioError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    traj = integrate(initial, m, opts)
    omega = omega_limit(initial, m, horizon=opts.t_end)

    want_svg = args.format in ("svg", "both")
    want_csv = args.format in ("csv", "both")
    if "trajectory" in sc.outputs and want_csv:
        _write_trajectory_csv(out / f"{sc.name}_trajectory.csv", traj)
    if "phase" in sc.outputs and want_svg:
        (out / f"{sc.name}_phase.svg").write_text(
            svgplot.phase_svg(traj.times, traj.states), encoding="utf-8")
    if "time" in sc.outputs and want_svg:
        (out / f"{sc.name}_time.svg").write_text(
            svgplot.time_svg(traj.times, traj.states, opts.t_end), encoding="utf-8")

    term = traj.termination
    items: list[tuple[str, object]] = [
        ("scenario", sc.name),
        ("a", float(m.a)),
        ("p", float(m.p)),
        ("c1", float(m.c1)),
        ("u0", float(initial.u)),
        ("v0", float(initial.v)),
        ("termination", term.kind.value),
        ("termination_time_model_units", float(term.time)),
        ("terminal_u", float(traj.states[-1, 0])),
        ("terminal_v", float(traj.states[-1, 1])),
        ("omega_limit_converged", omega.converged),
        ("region_sequence", ",".join(_region_sequence(traj, m))),
    ]
    if omega.state is not None:
        items.insert(-1, ("omega_limit_u", float(omega.state.u)))
        items.insert(-1, ("omega_limit_v", float(omega.state.v)))
    _write_kv(out / f"{sc.name}_summary.txt", items)

    if term.kind is TerminationKind.NUMERICAL_FAILURE:
        print(f"numerical failure at t = {term.time}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_analyze(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        m = ModelParams(a=args.a, p=args.p, c1=args.c1)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    items: list[tuple[str, object]] = [("a", m.a), ("p", m.p), ("c1", m.c1), ("ac", m.ac)]
    for i, rep in enumerate(find_equilibria(m)):
        items.append((f"equilibrium_{i}_u", float(rep.point.u)))
        items.append((f"equilibrium_{i}_v", float(rep.point.v)))
        items.append((f"equilibrium_{i}_kind", rep.kind.value))
        items.append((f"equilibrium_{i}_eigenvalues",
                      f"{rep.eigenvalues[0]:.12g} {rep.eigenvalues[1]:.12g}"))
    _write_kv(out / "equilibria.txt", items)

    n = args.grid
    uline = nullcline_u(m)
    with (out / "nullclines.csv").open("w", newline="", encoding="utf-8") as fh:
        fh.write("v,sigma_v,u_line\n")
        for k in range(n + 1):
            v = k / n
            try:
                sigma = _fmt(nullcline_v(v, m))
            except DomainError:
                sigma = ""
            u_line = ""
            if uline.has_line and 0.0 <= uline.line_sum - v <= 1.0:
                u_line = _fmt(uline.line_sum - v)
            fh.write(f"{_fmt(v)},{sigma},{u_line}\n")

    with (out / "regions.csv").open("w", newline="", encoding="utf-8") as fh:
        fh.write("u,v,label\n")
        for i in range(n):
            u = (i + 0.5) / n
            for j in range(n):
                v = (j + 0.5) / n
                label = classify_region(State(u, v), m).label
                fh.write(f"{_fmt(u)},{_fmt(v)},{label}\n")
    return EXIT_OK


def cmd_estimate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        series = read_engagement_csv(args.csv)
        fit = fit_aggression_model(series)
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    items: list[tuple[str, object]] = [(f"a_{period}", a) for period, a in fit.per_period]
    items += [
        ("mean", fit.model.mean),
        ("sd_sample", fit.sd_sample),
        ("sd_population", fit.sd_population),
    ]
    _write_kv(out / "aggression_report.txt", items)
    return EXIT_OK


def cmd_ensemble(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        sc = load_scenario(args.scenario)
        initial = sc.initial_state()
        opts = sc.integration_options()
        model = sc.aggression_model()
        if model is None:
            model = AggressionModel(mean=sc.a, sd=0.0)
        seed = args.seed if args.seed is not None else (sc.seed or 0)
        report = run_ensemble(initial, sc.c1, sc.p, model, opts, args.runs, seed)
    except (ScenarioError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    items: list[tuple[str, object]] = [
        ("scenario", sc.name),
        ("n_runs", report.n_runs),
        ("seed", report.seed),
        ("extinction_fraction_v", float(report.extinction_fraction_v)),
        ("nonconverged", report.nonconverged),
        ("other_outcomes", report.other_outcomes),
    ]
    if report.extinction_time_quantiles is not None:
        for level, q in zip(QUANTILE_LEVELS, report.extinction_time_quantiles):
            items.append((f"extinction_time_q{int(level * 100):02d}", float(q)))
    _write_kv(out / f"{sc.name}_ensemble.txt", items)
    return EXIT_OK


def _read_xy_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader, [])]
        if "x" not in header or "y" not in header:
            raise DomainError("missing column(s): expected header with x and y")
        ix, iy = header.index("x"), header.index("y")
        xs, ys = [], []
        for lineno, rec in enumerate(reader, start=2):
            if not rec or all(not f.strip() for f in rec):
                continue
            try:
                xs.append(float(rec[ix]))
                ys.append(float(rec[iy]))
            except (ValueError, IndexError):
                raise DomainError(f"row {lineno}: unparseable x/y values") from None
    return np.array(xs), np.array(ys)


def cmd_stats(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        x, y = _read_xy_csv(args.csv)
        fit = ols_fit(x, y)
        bp = breusch_pagan(x, fit.residuals)
        try:
            ks = ks_test_normal(fit.residuals)
            ks_items = [("ks_statistic", ks.statistic),
                        ("ks_p_value", ks.p_value),
                        ("ks_reject_at_05", ks.reject_at_05)]
        except DomainError:
            ks_items = [("ks_statistic", "undefined_zero_variance")]
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    items: list[tuple[str, object]] = [
        ("beta0", fit.beta0),
        ("beta1", fit.beta1),
        ("r_squared", fit.r_squared),
        ("se_beta0", fit.se_beta[0]),
        ("se_beta1", fit.se_beta[1]),
        ("t_beta0", fit.t_stats[0]),
        ("t_beta1", fit.t_stats[1]),
        ("p_beta0", fit.p_values[0]),
        ("p_beta1", fit.p_values[1]),
        ("bp_statistic", bp.statistic),
        ("bp_p_value", bp.p_value),
        ("bp_reject_at_05", bp.reject_at_05),
    ] + ks_items
    _write_kv(out / "stats_report.txt", items)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvstrat",
        description="Strategic-aggression Lotka-Volterra toolkit "
                    f"(kernel backend: {BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="integrate a scenario file")
    p_sim.add_argument("scenario")
    p_sim.add_argument("--out", default=".")
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--format", choices=("csv", "svg", "both"), default="both")
    p_sim.set_defaults(func=cmd_simulate)

    p_an = sub.add_parser("analyze", help="equilibria, nullclines, region raster")
    p_an.add_argument("--a", type=float, required=True)
    p_an.add_argument("--p", type=float, required=True)
    p_an.add_argument("--c1", type=float, required=True)
    p_an.add_argument("--grid", type=int, default=200)
    p_an.add_argument("--out", default=".")
    p_an.set_defaults(func=cmd_analyze)

    p_est = sub.add_parser("estimate", help="aggression model from engagement CSV")
    p_est.add_argument("csv")
    p_est.add_argument("--out", default=".")
    p_est.set_defaults(func=cmd_estimate)

    p_ens = sub.add_parser("ensemble", help="Monte Carlo ensemble over a scenario")
    p_ens.add_argument("scenario")
    p_ens.add_argument("--runs", type=int, default=1000)
    p_ens.add_argument("--seed", type=int, default=None)
    p_ens.add_argument("--out", default=".")
    p_ens.set_defaults(func=cmd_ensemble)

    p_st = sub.add_parser("stats", help="OLS + heteroskedasticity/normality diagnostics")
    p_st.add_argument("csv")
    p_st.add_argument("--out", default=".")
    p_st.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
