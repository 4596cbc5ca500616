"""Agreement between the compiled kernel and its pure-Python twin."""
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from lvstrat import _kernel_py
from lvstrat.kernels import (
    BACKEND,
    FIELD_CLASSIC,
    FIELD_STRATEGIC,
    TERM_EXTINCT_V,
    TERM_HORIZON,
)

try:
    from lvstrat import _kernel_cy
except ImportError:
    _kernel_cy = None

needs_compiled = pytest.mark.skipif(
    _kernel_cy is None, reason="compiled kernel not built")

STRATEGIC_ARGS = dict(
    field_id=FIELD_STRATEGIC, q0=0.814112, q1=0.149, q2=0.175, q3=0.0,
    u0=0.13669, v0=0.8633, t_end=50.0, rel_tol=1e-8, abs_tol=1e-10,
    max_step=0.5, record_interval=0.1, extinction_eps=1e-3,
    stop_at_extinction=True, check_events=True,
)

CLASSIC_ARGS = dict(
    field_id=FIELD_CLASSIC, q0=1.0, q1=0.5, q2=0.25, q3=0.3,
    u0=2.0, v0=1.0, t_end=30.0, rel_tol=1e-9, abs_tol=1e-12,
    max_step=0.3, record_interval=0.5, extinction_eps=1e-3,
    stop_at_extinction=True, check_events=False,
)


@needs_compiled
class TestBackendAgreement:
    def test_strategic_run_identical(self):
        py = _kernel_py.integrate_kernel(**STRATEGIC_ARGS)
        cy = _kernel_cy.integrate_kernel(**STRATEGIC_ARGS)
        assert cy[3] == py[3] == TERM_EXTINCT_V
        assert cy[4] == py[4]  # extinction time, bit-for-bit
        assert np.array_equal(np.asarray(cy[0]), np.asarray(py[0]))
        assert np.array_equal(np.asarray(cy[1]), np.asarray(py[1]))
        assert np.array_equal(np.asarray(cy[2]), np.asarray(py[2]))

    def test_classic_run_identical(self):
        py = _kernel_py.integrate_kernel(**CLASSIC_ARGS)
        cy = _kernel_cy.integrate_kernel(**CLASSIC_ARGS)
        assert cy[3] == py[3] == TERM_HORIZON
        assert np.array_equal(np.asarray(cy[1]), np.asarray(py[1]))
        assert np.array_equal(np.asarray(cy[2]), np.asarray(py[2]))

    def test_continue_mode_event_times_identical(self):
        args = dict(STRATEGIC_ARGS, stop_at_extinction=False)
        py = _kernel_py.integrate_kernel(**args)
        cy = _kernel_cy.integrate_kernel(**args)
        assert cy[3] == py[3] == TERM_HORIZON
        assert math.isnan(py[5]) and math.isnan(cy[5])  # u never went extinct
        assert cy[6] == py[6]

    def test_default_backend_is_compiled(self):
        if os.environ.get("LVSTRAT_PURE_PY"):
            pytest.skip("pure-Python backend forced via environment")
        assert BACKEND == "cython"


class TestBackendSelection:
    def test_env_override_forces_python(self):
        code = ("import lvstrat.kernels as k; print(k.BACKEND)")
        env = dict(os.environ, LVSTRAT_PURE_PY="1")
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "python"

    def test_python_backend_functional(self):
        res = _kernel_py.integrate_kernel(**STRATEGIC_ARGS)
        assert res[3] == TERM_EXTINCT_V
        assert 5.0 < res[4] < 9.0
