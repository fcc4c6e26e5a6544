"""Kernel backend selection.

The compiled extension ``eacount._kernels`` is used when it imports; set
``EACOUNT_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("EACOUNT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

apply_table = _active.apply_table
count_fixed_tables = _active.count_fixed_tables
induced_map = _active.induced_map
orbit_labels = _active.orbit_labels


def available_backends():
    out = {"python": python_backend}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
