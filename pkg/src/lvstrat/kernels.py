"""Select the integration kernel backend.

The compiled Cython kernel is preferred; the pure-Python twin is used
when the extension is unavailable or LVSTRAT_PURE_PY is set (any value).
"""
from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("LVSTRAT_PURE_PY"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND = _impl.BACKEND

FIELD_STRATEGIC = _kernel_py.FIELD_STRATEGIC
FIELD_CLASSIC = _kernel_py.FIELD_CLASSIC
TERM_HORIZON = _kernel_py.TERM_HORIZON
TERM_EXTINCT_U = _kernel_py.TERM_EXTINCT_U
TERM_EXTINCT_V = _kernel_py.TERM_EXTINCT_V
TERM_FAILURE = _kernel_py.TERM_FAILURE

integrate_kernel = _impl.integrate_kernel
