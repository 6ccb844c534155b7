"""Hot-loop kernels with backend selection at import time.

The compiled Cython extension is preferred; the pure-Python module provides
the identical interface and exact semantics (the compiled kernels are only
called through guards that keep every intermediate inside the C integer
range, see geometry.kernel_safe).
"""

try:
    from conesectors import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from conesectors import _kernels_py as _impl

    BACKEND = "python"

scan_cone_2d = _impl.scan_cone_2d
first_common_2d = _impl.first_common_2d
first_in_a_not_in_b_2d = _impl.first_in_a_not_in_b_2d
commutation_violations = _impl.commutation_violations
