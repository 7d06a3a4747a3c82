"""Backend selection for the raster kernels.

The compiled module is used when it was built; otherwise the numpy twin.
Set ``COMPACT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("COMPACT_PURE_PYTHON", "") not in ("", "0"):
    backend = _kernels_py
else:
    try:
        from . import _ckernels as backend
    except ImportError:  # extension not built
        backend = _kernels_py

NAME = backend.NAME
footprint = backend.footprint
paint = backend.paint
overlap = backend.overlap
stats = backend.stats
a1 = backend.a1
a1_gain = backend.a1_gain

RECT, BLOCK, CIRCLE = _kernels_py.RECT, _kernels_py.BLOCK, _kernels_py.CIRCLE
