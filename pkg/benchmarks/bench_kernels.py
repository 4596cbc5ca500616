#!/usr/bin/env python3
"""Compare the compiled integration kernel against the pure-Python twin.

Runs the same workloads through both backends and reports wall-clock
medians plus speedup. Usage:

    python benchmarks/bench_kernels.py [--repeats N]
"""
import argparse
import statistics
import time

from lvstrat import _kernel_py
from lvstrat.kernels import FIELD_CLASSIC, FIELD_STRATEGIC

try:
    from lvstrat import _kernel_cy
except ImportError:
    _kernel_cy = None

WORKLOADS = {
    "strategic extinction (t_end=50)": dict(
        field_id=FIELD_STRATEGIC, q0=0.814112, q1=0.149, q2=0.175, q3=0.0,
        u0=0.13669, v0=0.8633, t_end=50.0, rel_tol=1e-8, abs_tol=1e-10,
        max_step=0.5, record_interval=0.1, extinction_eps=1e-3,
        stop_at_extinction=True, check_events=True),
    "strategic full horizon (t_end=200)": dict(
        field_id=FIELD_STRATEGIC, q0=0.2, q1=0.149, q2=0.175, q3=0.0,
        u0=0.13669, v0=0.8633, t_end=200.0, rel_tol=1e-8, abs_tol=1e-10,
        max_step=2.0, record_interval=0.1, extinction_eps=1e-3,
        stop_at_extinction=False, check_events=True),
    "classic oscillator tight tol (t_end=100)": dict(
        field_id=FIELD_CLASSIC, q0=1.0, q1=0.5, q2=0.25, q3=0.3,
        u0=2.0, v0=1.0, t_end=100.0, rel_tol=1e-9, abs_tol=1e-12,
        max_step=0.1, record_interval=0.5, extinction_eps=1e-3,
        stop_at_extinction=True, check_events=False),
}


def bench(fn, kwargs, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(**kwargs)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    print(f"{'workload':45s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, kwargs in WORKLOADS.items():
        t_py = bench(_kernel_py.integrate_kernel, kwargs, args.repeats)
        if _kernel_cy is None:
            print(f"{name:45s} {t_py * 1e3:9.3f}ms {'n/a':>10s} {'n/a':>8s}")
            continue
        t_cy = bench(_kernel_cy.integrate_kernel, kwargs, args.repeats)
        print(f"{name:45s} {t_py * 1e3:9.3f}ms {t_cy * 1e3:9.3f}ms "
              f"{t_py / t_cy:7.1f}x")
    if _kernel_cy is None:
        print("\ncompiled kernel not built; showing pure-Python times only")


if __name__ == "__main__":
    main()
