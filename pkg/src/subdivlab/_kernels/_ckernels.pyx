# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled convolution and subdivision kernels.

Same contracts as ``_pykernels``.  The integer kernels walk Python-int object
arrays with C loops (no numpy dispatch per tap); the float kernels use typed
complex memoryviews.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def conv_int(object x, object y):
    cdef Py_ssize_t lx = x.shape[0], s = x.shape[1], r = x.shape[2]
    cdef Py_ssize_t ly = y.shape[0], t = y.shape[2]
    cdef Py_ssize_t i, j, p, q, k
    cdef list xs = x.reshape(-1).tolist()
    cdef list ys = y.reshape(-1).tolist()
    cdef Py_ssize_t n = lx + ly - 1
    cdef list out = [0] * (n * s * t)
    cdef object acc, xv
    cdef Py_ssize_t xo, yo, oo
    for i in range(lx):
        xo = i * s * r
        for j in range(ly):
            yo = j * r * t
            oo = (i + j) * s * t
            for p in range(s):
                for k in range(r):
                    xv = xs[xo + p * r + k]
                    if xv == 0:
                        continue
                    for q in range(t):
                        out[oo + p * t + q] = out[oo + p * t + q] + xv * ys[yo + k * t + q]
    res = np.empty(n * s * t, dtype=object)
    res[:] = out
    return res.reshape(n, s, t)


def subdivide_int(object v, object a):
    cdef Py_ssize_t lv = v.shape[0], s = v.shape[1], r = v.shape[2]
    cdef Py_ssize_t la = a.shape[0]
    cdef Py_ssize_t k, tap, p, m, q
    cdef list vs = v.reshape(-1).tolist()
    cdef list as_ = a.reshape(-1).tolist()
    cdef Py_ssize_t n = 2 * (lv - 1) + la
    cdef list out = [0] * (n * s * r)
    cdef object vv
    cdef Py_ssize_t vo, ao, oo
    for k in range(lv):
        vo = k * s * r
        for tap in range(la):
            ao = tap * r * r
            oo = (2 * k + tap) * s * r
            for p in range(s):
                for m in range(r):
                    vv = vs[vo + p * r + m]
                    if vv == 0:
                        continue
                    for q in range(r):
                        out[oo + p * r + q] = out[oo + p * r + q] + vv * as_[ao + m * r + q]
    res = np.empty(n * s * r, dtype=object)
    res[:] = out
    return res.reshape(n, s, r)


def conv_float(x, y):
    cdef double complex[:, :, ::1] xv = np.ascontiguousarray(x, dtype=complex)
    cdef double complex[:, :, ::1] yv = np.ascontiguousarray(y, dtype=complex)
    cdef Py_ssize_t lx = xv.shape[0], s = xv.shape[1], r = xv.shape[2]
    cdef Py_ssize_t ly = yv.shape[0], t = yv.shape[2]
    out_arr = np.zeros((lx + ly - 1, s, t), dtype=complex)
    cdef double complex[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, p, k, q
    cdef double complex xe
    for i in range(lx):
        for j in range(ly):
            for p in range(s):
                for k in range(r):
                    xe = xv[i, p, k]
                    for q in range(t):
                        out[i + j, p, q] += xe * yv[j, k, q]
    return out_arr


def subdivide_float(v, a):
    cdef double complex[:, :, ::1] vv = np.ascontiguousarray(v, dtype=complex)
    cdef double complex[:, :, ::1] av = np.ascontiguousarray(a, dtype=complex)
    cdef Py_ssize_t lv = vv.shape[0], s = vv.shape[1], r = vv.shape[2]
    cdef Py_ssize_t la = av.shape[0]
    out_arr = np.zeros((2 * (lv - 1) + la, s, r), dtype=complex)
    cdef double complex[:, :, ::1] out = out_arr
    cdef Py_ssize_t k, tap, p, m, q
    cdef double complex e
    for k in range(lv):
        for tap in range(la):
            for p in range(s):
                for m in range(r):
                    e = vv[k, p, m]
                    for q in range(r):
                        out[2 * k + tap, p, q] += e * av[tap, m, q]
    return out_arr


def dconv_int(object x, object y, Py_ssize_t step):
    cdef Py_ssize_t lx = x.shape[0], s = x.shape[1], r = x.shape[2]
    cdef Py_ssize_t ly = y.shape[0], t = y.shape[2]
    cdef Py_ssize_t i, j, p, k, q
    cdef list xs = x.reshape(-1).tolist()
    cdef list ys = y.reshape(-1).tolist()
    cdef Py_ssize_t n = step * (lx - 1) + ly
    cdef list out = [0] * (n * s * t)
    cdef object xv
    cdef Py_ssize_t xo, yo, oo
    for i in range(lx):
        xo = i * s * r
        for j in range(ly):
            yo = j * r * t
            oo = (step * i + j) * s * t
            for p in range(s):
                for k in range(r):
                    xv = xs[xo + p * r + k]
                    if xv == 0:
                        continue
                    for q in range(t):
                        out[oo + p * t + q] = out[oo + p * t + q] + xv * ys[yo + k * t + q]
    res = np.empty(n * s * t, dtype=object)
    res[:] = out
    return res.reshape(n, s, t)


def dconv_float(x, y, Py_ssize_t step):
    cdef double complex[:, :, ::1] xv = np.ascontiguousarray(x, dtype=complex)
    cdef double complex[:, :, ::1] yv = np.ascontiguousarray(y, dtype=complex)
    cdef Py_ssize_t lx = xv.shape[0], s = xv.shape[1], r = xv.shape[2]
    cdef Py_ssize_t ly = yv.shape[0], t = yv.shape[2]
    out_arr = np.zeros((step * (lx - 1) + ly, s, t), dtype=complex)
    cdef double complex[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, j, p, k, q
    cdef double complex xe
    for i in range(lx):
        for j in range(ly):
            for p in range(s):
                for k in range(r):
                    xe = xv[i, p, k]
                    for q in range(t):
                        out[step * i + j, p, q] += xe * yv[j, k, q]
    return out_arr
