"""Backend selection for the GF(p)[[z]] kernels.

The compiled extension is used when it imports; set QTJANTZEN_PURE=1 to force
the numpy implementation.
"""
import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py
if os.environ.get("QTJANTZEN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled
        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass


def smith(A, p):
    return _impl.smith(A, p)


def series_matmul(A, B, p):
    import numpy as np
    return _impl.series_matmul(np.ascontiguousarray(A, dtype=np.int64),
                               np.ascontiguousarray(B, dtype=np.int64), p)


def get_backend(name):
    """Module implementing the kernels for name in {'python', 'compiled'}."""
    if name == "python":
        return _kernel_py
    from . import _kernel
    return _kernel
