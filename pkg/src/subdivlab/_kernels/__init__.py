"""Hot convolution/subdivision kernels with a compiled core.

The Cython extension ``_ckernels`` is used when it was built; otherwise the
numpy implementation in ``_pykernels`` is loaded.  Set
``SUBDIVLAB_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("SUBDIVLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND = _active.BACKEND
conv_int = _active.conv_int
subdivide_int = _active.subdivide_int
conv_float = _active.conv_float
subdivide_float = _active.subdivide_float
dconv_int = _active.dconv_int
dconv_float = _active.dconv_float

__all__ = ["BACKEND", "conv_int", "subdivide_int", "conv_float", "subdivide_float", "dconv_int", "dconv_float",
           "python_backend", "compiled_backend"]
