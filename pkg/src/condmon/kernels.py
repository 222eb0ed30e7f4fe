"""Kernel backend selection.

The compiled extension is used when it imports; setting
``CONDMON_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _kernels_py

if os.environ.get("CONDMON_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
distance_matrix = _impl.distance_matrix
distance_row = _impl.distance_row
bottleneck = _impl.bottleneck
components_at = _impl.components_at
