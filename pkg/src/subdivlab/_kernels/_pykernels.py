"""Reference kernels in numpy.

Arrays are stacks of matrices with shape ``(length, rows, cols)``.  The
``*_int`` kernels take ``dtype=object`` arrays of Python ints; the ``*_float``
kernels take complex128 arrays.  Both families share one implementation here
because numpy dispatches object and complex matmul the same way.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def _conv(x, y, dtype):
    lx, s, _ = x.shape
    ly, _, t = y.shape
    out = np.zeros((lx + ly - 1, s, t), dtype=dtype)
    if dtype is object:
        out[...] = 0
    if ly <= lx:
        for j in range(ly):
            out[j:j + lx] += x @ y[j]
    else:
        for i in range(lx):
            out[i:i + ly] += x[i] @ y
    return out


def _subdivide(v, a, dtype):
    lv, s, _ = v.shape
    la, _, r = a.shape
    out = np.zeros((2 * (lv - 1) + la, s, r), dtype=dtype)
    if dtype is object:
        out[...] = 0
    for t in range(la):
        out[t:t + 2 * lv - 1:2] += v @ a[t]
    return out


def conv_int(x, y):
    """Matrix-valued convolution ``out[i+j] += x[i] @ y[j]`` on Python ints."""
    return _conv(x, y, object)


def subdivide_int(v, a):
    """``out[2k+t] += v[k] @ a[t]`` on Python ints (factor 2 applied by caller)."""
    return _subdivide(v, a, object)


def conv_float(x, y):
    return _conv(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex), complex)


def subdivide_float(v, a):
    return _subdivide(np.asarray(v, dtype=complex), np.asarray(a, dtype=complex), complex)


def _dconv(x, y, step, dtype):
    lx, s, _ = x.shape
    ly, _, t = y.shape
    out = np.zeros((step * (lx - 1) + ly, s, t), dtype=dtype)
    if dtype is object:
        out[...] = 0
    for i in range(lx):
        out[step * i:step * i + ly] += x[i] @ y
    return out


def dconv_int(x, y, step):
    """Dilated convolution ``out[step*i + j] += x[i] @ y[j]`` on Python ints."""
    return _dconv(x, y, step, object)


def dconv_float(x, y, step):
    return _dconv(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex), step, complex)
