"""Hot-kernel dispatch: compiled extension if available, Python fallback.

The only kernel is :func:`integrate_shape_ode`, the per-candidate collar
integrator that dominates optimizer runtime.  ``BACKEND`` records which
implementation was selected at import time ("compiled" or "python").
Both backends implement the identical scheme; ``benchmarks/bench_kernels.py``
compares their speed and agreement.
"""

from . import _kernels_py

try:
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; pure-Python fallback
    _impl = _kernels_py
    BACKEND = "python"

integrate_shape_ode = _impl.integrate_shape_ode


def available_backends() -> dict:
    """Map backend name -> kernel module, for benchmarks and tests."""
    out = {"python": _kernels_py}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out
