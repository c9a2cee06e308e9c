"""Finitely supported matrix sequences on the integers.

A :class:`MatrixSequence` maps ``k`` to an ``s x r`` matrix and is zero
outside an explicit window ``[lo, hi]``.  Two storage variants exist:

* exact: integer numerator arrays (``dtype=object`` Python ints) for the real
  and imaginary parts over one common positive denominator.  Keeping a single
  denominator lets convolution and subdivision run as pure integer kernels.
* float: a ``complex128`` array.

Operations never mix variants; convert explicitly with :meth:`to_float`.
Every result is trimmed so that its first and last matrices are nonzero.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .scalar import GaussianRational, gauss, to_exact

__all__ = ["MatrixSequence", "MixedVariantError", "convolve", "delta", "difference", "coset",
           "symbol_eval", "upsample", "dilated_convolve", "subdivide_raw", "interleave", "kron_scalar",
           "hstack", "vstack", "scalar_sequence", "vector_sequence"]


class MixedVariantError(TypeError):
    """Raised when exact and float sequences meet in one operation."""


def _int_array(shape):
    out = np.empty(shape, dtype=object)
    out[...] = 0
    return out


def _any_nonzero(arr) -> bool:
    return bool(np.any(arr != 0))


class MatrixSequence:
    """Immutable finitely supported ``s x r`` matrix sequence.

    Use the constructors :meth:`from_matrices`, :meth:`from_float`,
    :func:`delta` rather than calling ``__init__`` directly.
    """

    __slots__ = ("start", "_re", "_im", "_den", "_data")

    def __init__(self, start, *, re=None, im=None, den=1, data=None, _trim=True):
        self.start = int(start)
        self._re = re
        self._im = im
        self._den = den
        self._data = data
        if _trim:
            self._normalize()

    # ------------------------------------------------------------------
    # construction
    @classmethod
    def from_matrices(cls, mats, start=0):
        """Build from a list of matrices (nested lists or arrays).

        Entries may be ints, Fractions, GaussianRationals, or scalar strings
        (exact variant), or floats/complex (float variant).  Mixing raises.
        """
        mats = list(mats)
        if not mats:
            raise ValueError("at least one coefficient matrix is required")
        flat = []
        for m in mats:
            arr = np.asarray(m, dtype=object)
            if arr.ndim == 0:
                arr = arr.reshape(1, 1)
            elif arr.ndim == 1:
                arr = arr.reshape(1, -1)
            flat.append(arr.tolist())
        floaty = any(isinstance(x, (float, complex, np.floating, np.complexfloating))
                     for m in flat for row in m for x in row)
        if floaty:
            if any(isinstance(x, (Fraction, GaussianRational, str)) for m in flat for row in m for x in row):
                raise MixedVariantError("coefficients mix exact and float scalars")
            return cls.from_float(np.array(flat, dtype=complex), start)
        exact = [[[to_exact(x) for x in row] for row in m] for m in flat]
        return cls._from_exact_nested(exact, start)

    @classmethod
    def _from_exact_nested(cls, exact, start):
        L = len(exact)
        s = len(exact[0])
        r = len(exact[0][0])
        den = 1
        has_im = False
        for m in exact:
            if len(m) != s or any(len(row) != r for row in m):
                raise ValueError("ragged coefficient matrices")
            for row in m:
                for x in row:
                    if isinstance(x, GaussianRational):
                        has_im = True
                        den = math.lcm(den, x.re.denominator, x.im.denominator)
                    else:
                        den = math.lcm(den, x.denominator)
        re = _int_array((L, s, r))
        im = _int_array((L, s, r)) if has_im else None
        for k, m in enumerate(exact):
            for p, row in enumerate(m):
                for q, x in enumerate(row):
                    if isinstance(x, GaussianRational):
                        re[k, p, q] = x.re.numerator * (den // x.re.denominator)
                        im[k, p, q] = x.im.numerator * (den // x.im.denominator)
                    else:
                        re[k, p, q] = x.numerator * (den // x.denominator)
        return cls(start, re=re, im=im, den=den)

    @classmethod
    def from_float(cls, data, start=0):
        data = np.array(data, dtype=complex)
        if data.ndim == 1:
            data = data[:, None, None]
        return cls(start, data=data)

    @classmethod
    def from_ints(cls, re, start=0, den=1, im=None):
        """Wrap integer numerator arrays directly (exact variant)."""
        return cls(start, re=re, im=im, den=den)

    @classmethod
    def zeros(cls, s, r, exact=True):
        if exact:
            return cls(0, re=_int_array((1, s, r)), den=1)
        return cls(0, data=np.zeros((1, s, r), dtype=complex))

    # ------------------------------------------------------------------
    # normalization
    def _normalize(self):
        if self._data is not None:
            arr = self._data
            nz = np.flatnonzero(np.any(arr.reshape(arr.shape[0], -1) != 0, axis=1))
            if nz.size == 0:
                self._data = arr[:1] * 0
                self.start = 0
            else:
                self._data = arr[nz[0]:nz[-1] + 1]
                self.start += int(nz[0])
            return
        re, im = self._re, self._im
        if im is not None and not _any_nonzero(im):
            im = None
        mask = np.any((re != 0).reshape(re.shape[0], -1), axis=1)
        if im is not None:
            mask |= np.any((im != 0).reshape(im.shape[0], -1), axis=1)
        nz = np.flatnonzero(mask)
        if nz.size == 0:
            self._re = _int_array((1,) + re.shape[1:])
            self._im = None
            self._den = 1
            self.start = 0
            return
        lo, hi = int(nz[0]), int(nz[-1]) + 1
        re = re[lo:hi]
        if im is not None:
            im = im[lo:hi]
        self.start += lo
        den = int(self._den)
        if den < 0:
            re, den = -re, -den
            if im is not None:
                im = -im
        if den != 1:
            vals = re.ravel().tolist()
            if im is not None:
                vals += im.ravel().tolist()
            g = math.gcd(den, *vals)
            if g > 1:
                re = re // g
                if im is not None:
                    im = im // g
                den //= g
        self._re, self._im, self._den = re, im, den

    # ------------------------------------------------------------------
    # basic properties
    @property
    def exact(self) -> bool:
        return self._data is None

    @property
    def rows(self) -> int:
        return (self._re if self.exact else self._data).shape[1]

    @property
    def cols(self) -> int:
        return (self._re if self.exact else self._data).shape[2]

    @property
    def shape(self):
        return self.rows, self.cols

    def __len__(self):
        return (self._re if self.exact else self._data).shape[0]

    @property
    def stop(self) -> int:
        """Last index of the support window (inclusive)."""
        return self.start + len(self) - 1

    @property
    def support(self):
        return self.start, self.stop

    @property
    def den(self) -> int:
        return self._den

    @property
    def numerators(self):
        """``(re, im)`` integer arrays of the exact variant (``im`` may be None)."""
        self._require_exact()
        return self._re, self._im

    @property
    def is_real(self) -> bool:
        if self.exact:
            return self._im is None
        return not np.any(self._data.imag != 0)

    def is_zero(self) -> bool:
        if self.exact:
            return not _any_nonzero(self._re) and self._im is None
        return not np.any(self._data != 0)

    def _require_exact(self):
        if not self.exact:
            raise MixedVariantError("operation requires an exact sequence")

    # ------------------------------------------------------------------
    # element access
    def _entry(self, k, p, q):
        re = Fraction(int(self._re[k, p, q]), self._den)
        if self._im is None:
            return re
        return gauss(re, Fraction(int(self._im[k, p, q]), self._den))

    def __getitem__(self, k):
        """Coefficient matrix at integer index ``k`` (zero outside the window)."""
        i = k - self.start
        s, r = self.shape
        if not self.exact:
            if 0 <= i < len(self):
                return self._data[i].copy()
            return np.zeros((s, r), dtype=complex)
        if 0 <= i < len(self):
            return [[self._entry(i, p, q) for q in range(r)] for p in range(s)]
        return [[Fraction(0)] * r for _ in range(s)]

    def coeffs(self):
        """List of ``(k, matrix)`` pairs over the support window."""
        return [(k, self[k]) for k in range(self.start, self.stop + 1)]

    def entries(self, p=0, q=0):
        """Scalar sequence ``k -> self[k][p][q]`` as a list over the window."""
        if not self.exact:
            return list(self._data[:, p, q])
        return [self._entry(i, p, q) for i in range(len(self))]

    def to_float(self) -> "MatrixSequence":
        if not self.exact:
            return self
        data = _ints_to_float(self._re, self._den)
        if self._im is not None:
            data = data + 1j * _ints_to_float(self._im, self._den)
        return MatrixSequence(self.start, data=data.astype(complex))

    def float_array(self) -> np.ndarray:
        return self.to_float()._data

    # ------------------------------------------------------------------
    # comparison
    def __eq__(self, other):
        if not isinstance(other, MatrixSequence):
            return NotImplemented
        if self.exact != other.exact or self.shape != other.shape:
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.start != other.start or len(self) != len(other):
            return False
        if not self.exact:
            return bool(np.array_equal(self._data, other._data))
        if self._den != other._den or (self._im is None) != (other._im is None):
            return False
        if not np.array_equal(self._re, other._re):
            return False
        return self._im is None or bool(np.array_equal(self._im, other._im))

    __hash__ = None

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"MatrixSequence({kind}, {self.rows}x{self.cols}, support=[{self.start}, {self.stop}])"

    # ------------------------------------------------------------------
    # linear structure
    def _check_same(self, other):
        if not isinstance(other, MatrixSequence):
            raise TypeError("expected a MatrixSequence")
        if self.exact != other.exact:
            raise MixedVariantError("cannot combine exact and float sequences")

    def _aligned(self, other):
        lo = min(self.start, other.start)
        hi = max(self.stop, other.stop)
        return lo, hi

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def _combine(self, other, sign):
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        lo, hi = self._aligned(other)
        n = hi - lo + 1
        s, r = self.shape
        if not self.exact:
            out = np.zeros((n, s, r), dtype=complex)
            out[self.start - lo:self.start - lo + len(self)] += self._data
            out[other.start - lo:other.start - lo + len(other)] += sign * other._data
            return MatrixSequence(lo, data=out)
        den = math.lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        re = _int_array((n, s, r))
        re[self.start - lo:self.start - lo + len(self)] += self._re * fa
        re[other.start - lo:other.start - lo + len(other)] += other._re * (sign * fb)
        im = None
        if self._im is not None or other._im is not None:
            im = _int_array((n, s, r))
            if self._im is not None:
                im[self.start - lo:self.start - lo + len(self)] += self._im * fa
            if other._im is not None:
                im[other.start - lo:other.start - lo + len(other)] += other._im * (sign * fb)
        return MatrixSequence(lo, re=re, im=im, den=den)

    def __neg__(self):
        if not self.exact:
            return MatrixSequence(self.start, data=-self._data)
        return MatrixSequence(self.start, re=-self._re, im=None if self._im is None else -self._im,
                              den=self._den)

    def scale(self, c) -> "MatrixSequence":
        """Multiply every coefficient by the scalar ``c``."""
        if not self.exact:
            if isinstance(c, (Fraction, GaussianRational)):
                c = complex(c)
            return MatrixSequence(self.start, data=self._data * c)
        if isinstance(c, (float, complex)):
            raise MixedVariantError("cannot scale an exact sequence by a float")
        c = to_exact(c)
        if isinstance(c, GaussianRational):
            cre, cim = c.re, c.im
        else:
            cre, cim = c, Fraction(0)
        d = math.lcm(cre.denominator, cim.denominator)
        a = cre.numerator * (d // cre.denominator)
        b = cim.numerator * (d // cim.denominator)
        re0, im0 = self._re, self._im
        re = re0 * a if im0 is None else re0 * a - im0 * b
        im = None
        if b != 0 or im0 is not None:
            im = re0 * b if im0 is None else re0 * b + im0 * a
        return MatrixSequence(self.start, re=re, im=im, den=self._den * d)

    def shift(self, k: int) -> "MatrixSequence":
        """The sequence ``j -> self(j - k)``."""
        return MatrixSequence(self.start + k, re=self._re, im=self._im, den=self._den,
                              data=self._data, _trim=False)

    def restrict(self, lo: int, hi: int) -> "MatrixSequence":
        """Zero every coefficient outside ``[lo, hi]``."""
        a, b = max(lo, self.start), min(hi, self.stop)
        s, r = self.shape
        if a > b:
            return MatrixSequence.zeros(s, r, self.exact)
        i, j = a - self.start, b - self.start + 1
        if not self.exact:
            return MatrixSequence(a, data=self._data[i:j])
        return MatrixSequence(a, re=self._re[i:j], im=None if self._im is None else self._im[i:j],
                              den=self._den)

    def padded(self, lo: int, hi: int):
        """Dense array of the coefficients on ``[lo, hi]`` (exact: Fractions)."""
        n = hi - lo + 1
        s, r = self.shape
        if not self.exact:
            out = np.zeros((n, s, r), dtype=complex)
            a, b = max(lo, self.start), min(hi, self.stop)
            if a <= b:
                out[a - lo:b - lo + 1] = self._data[a - self.start:b - self.start + 1]
            return out
        return [self[k] for k in range(lo, hi + 1)]

    # ------------------------------------------------------------------
    # matrix structure
    def transpose(self) -> "MatrixSequence":
        if not self.exact:
            return MatrixSequence(self.start, data=np.ascontiguousarray(self._data.transpose(0, 2, 1)))
        t = lambda x: None if x is None else np.ascontiguousarray(x.transpose(0, 2, 1))
        return MatrixSequence(self.start, re=t(self._re), im=t(self._im), den=self._den)

    def conj(self) -> "MatrixSequence":
        if not self.exact:
            return MatrixSequence(self.start, data=self._data.conj())
        return MatrixSequence(self.start, re=self._re, im=None if self._im is None else -self._im,
                              den=self._den)

    def reverse(self) -> "MatrixSequence":
        """The sequence ``k -> self(-k)``."""
        if not self.exact:
            return MatrixSequence(-self.stop, data=self._data[::-1].copy())
        rv = lambda x: None if x is None else x[::-1].copy()
        return MatrixSequence(-self.stop, re=rv(self._re), im=rv(self._im), den=self._den)

    def adjoint(self) -> "MatrixSequence":
        """``k -> self(-k)^*``; its symbol is the conjugate transpose symbol."""
        return self.reverse().transpose().conj()

    def select(self, rows=None, cols=None) -> "MatrixSequence":
        """Sub-sequence of the given row and column index lists."""
        rows = list(range(self.rows)) if rows is None else list(rows)
        cols = list(range(self.cols)) if cols is None else list(cols)
        ix = np.ix_(range(len(self)), rows, cols)
        if not self.exact:
            return MatrixSequence(self.start, data=self._data[ix])
        return MatrixSequence(self.start, re=self._re[ix],
                              im=None if self._im is None else self._im[ix], den=self._den)

    def column(self, q: int) -> "MatrixSequence":
        return self.select(cols=[q])

    def row(self, p: int) -> "MatrixSequence":
        return self.select(rows=[p])

    # ------------------------------------------------------------------
    # algebra
    def convolve(self, other) -> "MatrixSequence":
        return convolve(self, other)

    def coset(self, gamma: int) -> "MatrixSequence":
        return coset(self, gamma)

    def upsample(self, factor: int = 2) -> "MatrixSequence":
        return upsample(self, factor)

    def symbol(self, xi):
        return symbol_eval(self, xi)

    def max_abs_log2(self) -> float:
        """``log2`` of the largest entry modulus (``-inf`` for zero)."""
        if self.is_zero():
            return float("-inf")
        if not self.exact:
            return float(np.log2(np.max(np.abs(self._data))))
        if self._im is None:
            m = max(abs(int(x)) for x in self._re.ravel().tolist())
            return math.log2(m) - math.log2(self._den)
        sq = self._re * self._re + self._im * self._im
        m = max(int(x) for x in sq.ravel().tolist())
        return 0.5 * math.log2(m) - math.log2(self._den)

    def sum(self):
        """``sum_k self(k)``, i.e. the symbol at zero, as a matrix."""
        if not self.exact:
            return self._data.sum(axis=0)
        s, r = self.shape
        re = self._re.sum(axis=0)
        im = None if self._im is None else self._im.sum(axis=0)
        return [[gauss(Fraction(int(re[p, q]), self._den),
                       0 if im is None else Fraction(int(im[p, q]), self._den))
                 for q in range(r)] for p in range(s)]


def _ints_to_float(arr, den):
    """Convert big-integer numerators over ``den`` to float without overflow."""
    flat = arr.ravel().tolist()
    d = int(den)
    if d.bit_length() < 1000 and all(abs(x).bit_length() < 1000 for x in flat):
        out = np.array([x / d for x in flat], dtype=float)
    else:
        out = np.array([float(Fraction(x, d)) for x in flat], dtype=float)
    return out.reshape(arr.shape)


# ----------------------------------------------------------------------
# module-level operations


def delta(r: int, s: int | None = None, exact: bool = True, shift: int = 0) -> MatrixSequence:
    """``delta I`` (identity at ``shift``), or ``s x r`` with ones on the diagonal."""
    s = r if s is None else s
    if exact:
        re = _int_array((1, s, r))
        for i in range(min(s, r)):
            re[0, i, i] = 1
        return MatrixSequence(shift, re=re, den=1)
    data = np.zeros((1, s, r), dtype=complex)
    for i in range(min(s, r)):
        data[0, i, i] = 1
    return MatrixSequence(shift, data=data)


def _mul_complex_ints(kernel, a_re, a_im, b_re, b_im):
    re = kernel(a_re, b_re)
    im = None
    if a_im is not None and b_im is not None:
        re = re - kernel(a_im, b_im)
    if a_im is not None:
        im = kernel(a_im, b_re)
    if b_im is not None:
        t = kernel(a_re, b_im)
        im = t if im is None else im + t
    return re, im


def convolve(u: MatrixSequence, v: MatrixSequence) -> MatrixSequence:
    """``(u * v)(j) = sum_k u(j - k) v(k)`` for ``s x r`` and ``r x t`` sequences."""
    u._check_same(v)
    if u.cols != v.rows:
        raise ValueError(f"inner dimensions differ: {u.shape} * {v.shape}")
    start = u.start + v.start
    if not u.exact:
        return MatrixSequence(start, data=_kernels.conv_float(u._data, v._data))
    re, im = _mul_complex_ints(_kernels.conv_int, u._re, u._im, v._re, v._im)
    return MatrixSequence(start, re=re, im=im, den=u._den * v._den)


def dilated_convolve(a: MatrixSequence, v: MatrixSequence, step: int) -> MatrixSequence:
    """``j -> sum_t a(t) v(j - step t)``, the convolution with ``a`` upsampled by ``step``."""
    a._check_same(v)
    if a.cols != v.rows:
        raise ValueError(f"inner dimensions differ: {a.shape} * {v.shape}")
    if step < 1:
        raise ValueError("step must be positive")
    start = step * a.start + v.start
    if not a.exact:
        return MatrixSequence(start, data=_kernels.dconv_float(a._data, v._data, step))
    kern = lambda x, y: _kernels.dconv_int(x, y, step)  # noqa: E731
    re, im = _mul_complex_ints(kern, a._re, a._im, v._re, v._im)
    return MatrixSequence(start, re=re, im=im, den=a._den * v._den)


def subdivide_raw(v: MatrixSequence, a: MatrixSequence) -> MatrixSequence:
    """``j -> sum_k v(k) a(j - 2k)`` (the subdivision sum without the factor 2)."""
    v._check_same(a)
    if v.cols != a.rows:
        raise ValueError(f"data has {v.cols} columns but mask is {a.rows}x{a.cols}")
    start = 2 * v.start + a.start
    if not v.exact:
        return MatrixSequence(start, data=_kernels.subdivide_float(v._data, a._data))
    re, im = _mul_complex_ints(_kernels.subdivide_int, v._re, v._im, a._re, a._im)
    return MatrixSequence(start, re=re, im=im, den=v._den * a._den)


def coset(a: MatrixSequence, gamma: int) -> MatrixSequence:
    """``k -> a(gamma + 2k)``."""
    first = -((gamma - a.start) // 2)  # smallest k with gamma + 2k >= start
    while gamma + 2 * first < a.start:
        first += 1
    i0 = gamma + 2 * first - a.start
    if i0 >= len(a):
        return MatrixSequence.zeros(a.rows, a.cols, a.exact)
    if not a.exact:
        return MatrixSequence(first, data=a._data[i0::2].copy())
    return MatrixSequence(first, re=a._re[i0::2].copy(),
                          im=None if a._im is None else a._im[i0::2].copy(), den=a._den)


def upsample(a: MatrixSequence, factor: int = 2) -> MatrixSequence:
    """Place ``a(k)`` at ``factor * k``; the symbol becomes ``a^(factor xi)``."""
    n = (len(a) - 1) * factor + 1
    s, r = a.shape
    if not a.exact:
        out = np.zeros((n, s, r), dtype=complex)
        out[::factor] = a._data
        return MatrixSequence(factor * a.start, data=out)
    re = _int_array((n, s, r))
    re[::factor] = a._re
    im = None
    if a._im is not None:
        im = _int_array((n, s, r))
        im[::factor] = a._im
    return MatrixSequence(factor * a.start, re=re, im=im, den=a._den)


def interleave(even: MatrixSequence, odd: MatrixSequence) -> MatrixSequence:
    """Inverse of the coset split: ``k -> even((k)/2)`` or ``odd((k-1)/2)``."""
    return upsample(even) + upsample(odd).shift(1)


def difference(u: MatrixSequence, j: int = 1) -> MatrixSequence:
    """Apply the forward difference ``delta - delta(. - 1)`` ``j`` times."""
    if j < 0:
        raise ValueError("difference order must be nonnegative")
    if j == 0:
        return u
    coeffs = [(-1) ** k * math.comb(j, k) for k in range(j + 1)]
    if u.exact:
        re = _int_array((j + 1, 1, 1))
        for k, c in enumerate(coeffs):
            re[k, 0, 0] = c
        nab = MatrixSequence(0, re=re, den=1)
    else:
        nab = MatrixSequence.from_float(np.array(coeffs, dtype=complex))
    if u.rows == 1:
        return convolve(nab, u)
    # scalar sequence acting on each entry
    return convolve(kron_scalar(nab, u.rows), u)


def kron_scalar(c: MatrixSequence, n: int) -> MatrixSequence:
    """Scalar sequence ``c`` times the ``n x n`` identity."""
    if c.shape != (1, 1):
        raise ValueError("expected a scalar sequence")
    if not c.exact:
        data = c._data[:, 0, 0][:, None, None] * np.eye(n)[None]
        return MatrixSequence(c.start, data=data)
    re = _int_array((len(c), n, n))
    im = None if c._im is None else _int_array((len(c), n, n))
    for i in range(n):
        re[:, i, i] = c._re[:, 0, 0]
        if im is not None:
            im[:, i, i] = c._im[:, 0, 0]
    return MatrixSequence(c.start, re=re, im=im, den=c._den)


def symbol_eval(u: MatrixSequence, xi: float) -> np.ndarray:
    """``sum_k u(k) exp(-i k xi)`` as a complex ``s x r`` array."""
    data = u.float_array()
    ks = np.arange(u.start, u.stop + 1)
    w = np.exp(-1j * ks * float(xi))
    return np.tensordot(w, data, axes=(0, 0))


def hstack(seqs: Sequence[MatrixSequence]) -> MatrixSequence:
    """Concatenate sequences with equal row counts along columns."""
    return _stack(seqs, axis=2)


def vstack(seqs: Sequence[MatrixSequence]) -> MatrixSequence:
    return _stack(seqs, axis=1)


def _stack(seqs, axis):
    seqs = list(seqs)
    exact = seqs[0].exact
    if any(s.exact != exact for s in seqs):
        raise MixedVariantError("cannot stack exact and float sequences")
    lo = min(s.start for s in seqs)
    hi = max(s.stop for s in seqs)
    n = hi - lo + 1
    if not exact:
        parts = [s.padded(lo, hi) for s in seqs]
        return MatrixSequence(lo, data=np.concatenate(parts, axis=axis))
    den = 1
    for s in seqs:
        den = math.lcm(den, s._den)
    res, ims = [], []
    any_im = any(s._im is not None for s in seqs)
    for s in seqs:
        f = den // s._den
        re = _int_array((n,) + s._re.shape[1:])
        re[s.start - lo:s.start - lo + len(s)] = s._re * f
        res.append(re)
        if any_im:
            im = _int_array((n,) + s._re.shape[1:])
            if s._im is not None:
                im[s.start - lo:s.start - lo + len(s)] = s._im * f
            ims.append(im)
    return MatrixSequence(lo, re=np.concatenate(res, axis=axis),
                          im=np.concatenate(ims, axis=axis) if any_im else None, den=den)


def scalar_sequence(values: Iterable, start: int = 0) -> MatrixSequence:
    """Convenience constructor for a ``1 x 1`` sequence."""
    return MatrixSequence.from_matrices([[[v]] for v in values], start)


def vector_sequence(vectors: Iterable, start: int = 0) -> MatrixSequence:
    """Column-vector (``r x 1``) sequence from a list of length-``r`` lists."""
    return MatrixSequence.from_matrices([[[x] for x in v] for v in vectors], start)
