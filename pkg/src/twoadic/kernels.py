"""Hot-loop kernels, compiled when available.

The compiled module is built from ``_kernels.pyx`` at install time. Set
``TWOADIC_PURE=1`` to force the pure-Python implementations.
"""

import os

from . import _kernels_py

if os.environ.get("TWOADIC_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

# compiled scan works in uint64; wider prefixes use the Python scan
_COMPILED_SCAN_MAX = 62


def adic_scan(x, n):
    if _impl is not _kernels_py and n <= _COMPILED_SCAN_MAX:
        return _impl.adic_scan(x, n)
    return _kernels_py.adic_scan(x, n)


def bm_profile(bits):
    return _impl.bm_profile(bits)


__all__ = ["BACKEND", "adic_scan", "bm_profile"]
