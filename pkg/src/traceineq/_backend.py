"""Select the Jacobi kernel at import time.

``TRACEINEQ_BACKEND=python`` forces the pure-Python kernel; ``compiled``
makes a missing extension an ImportError instead of a silent fallback.
"""
import os

from . import _jacobi_py

try:
    from . import _jacobi_ext
except ImportError:  # extension not built
    _jacobi_ext = None

KERNELS = {"python": _jacobi_py.jacobi_sweeps}
if _jacobi_ext is not None:
    KERNELS["compiled"] = _jacobi_ext.jacobi_sweeps


def _select(requested):
    if requested == "auto":
        return "compiled" if "compiled" in KERNELS else "python"
    if requested not in KERNELS:
        raise ImportError(f"Jacobi backend {requested!r} unavailable (have {sorted(KERNELS)})")
    return requested


BACKEND = _select(os.environ.get("TRACEINEQ_BACKEND", "auto"))
jacobi_sweeps = KERNELS[BACKEND]
