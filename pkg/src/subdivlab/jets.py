"""Truncated Taylor expansions (jets) of matrix symbols at 0 and pi.

A :class:`Jet` of order ``m`` stores the Taylor coefficients
``c_j = f^(j)(base) / j!`` for ``j = 0..m`` of an ``s x r`` matrix function of
``xi``.  Arithmetic never reads past order ``m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import is_zero_matrix, matadd, matmul, matscale, matsub, zeros
from .scalar import I, format_scalar, gauss, to_exact
from .sequence import MatrixSequence

__all__ = ["Jet", "FilterJet", "jet_of", "jet_mul", "jet_scale_arg", "leading_degree", "BASE_ZERO",
           "BASE_PI", "JetMismatchError"]

BASE_ZERO = "0"
BASE_PI = "pi"


class JetMismatchError(ValueError):
    """Shapes, base points or orders of two jets are incompatible."""


def _ipow(j):
    """``i**j`` exactly."""
    return (Fraction(1), I, Fraction(-1), -I)[j % 4]


@dataclass(frozen=True)
class Jet:
    """Taylor coefficients ``c_0..c_m`` of an ``s x r`` matrix symbol.

    Parameters
    ----------
    coeffs : sequence of s x r nested lists
        ``coeffs[j]`` is the coefficient of ``xi**j``.
    base : {"0", "pi"}
        Expansion point.
    """

    coeffs: tuple
    base: str = BASE_ZERO

    def __post_init__(self):
        if self.base not in (BASE_ZERO, BASE_PI):
            raise ValueError(f"unsupported base point {self.base!r}")
        cs = tuple(tuple(tuple(to_exact(x) for x in row) for row in c) for c in self.coeffs)
        if not cs:
            raise ValueError("a jet needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_entries(cls, entries, base=BASE_ZERO):
        """Row-vector-style constructor from per-entry coefficient lists.

        ``entries`` is an ``s x r`` nested list whose leaves are coefficient
        lists ``[c_0, c_1, ...]``; shorter lists are padded with zeros up to the
        longest one.
        """
        s = len(entries)
        r = len(entries[0])
        m = max(len(entries[p][q]) for p in range(s) for q in range(r)) - 1
        coeffs = []
        for j in range(m + 1):
            coeffs.append([[entries[p][q][j] if j < len(entries[p][q]) else 0 for q in range(r)]
                           for p in range(s)])
        return cls(tuple(coeffs), base)

    @classmethod
    def constant(cls, mat, order, base=BASE_ZERO):
        s, r = len(mat), len(mat[0])
        return cls(tuple([mat] + [zeros(s, r)] * order), base)

    @classmethod
    def identity(cls, r, order, base=BASE_ZERO):
        return cls.constant([[Fraction(int(i == j)) for j in range(r)] for i in range(r)], order, base)

    @classmethod
    def monomial_i(cls, k, order):
        """Scalar jet of ``(i xi)**k``."""
        cs = [[[Fraction(0)]] for _ in range(order + 1)]
        if k <= order:
            cs[k] = [[_ipow(k)]]
        return cls(tuple(cs))

    # -- basic properties ----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def shape(self):
        return len(self.coeffs[0]), len(self.coeffs[0][0])

    def coeff(self, j):
        """Coefficient matrix of ``xi**j`` as nested lists."""
        return [list(row) for row in self.coeffs[j]]

    def entry(self, p, q) -> "Jet":
        return Jet(tuple(((c[p][q],),) for c in self.coeffs), self.base)

    def entry_coeffs(self, p=0, q=0):
        return [c[p][q] for c in self.coeffs]

    def select(self, rows=None, cols=None) -> "Jet":
        s, r = self.shape
        rows = range(s) if rows is None else rows
        cols = range(r) if cols is None else cols
        return Jet(tuple([[c[p][q] for q in cols] for p in rows] for c in self.coeffs), self.base)

    def truncate(self, m: int) -> "Jet":
        if m > self.order:
            raise JetMismatchError(f"cannot truncate order {self.order} jet to order {m}")
        return Jet(self.coeffs[:m + 1], self.base)

    def extend(self, m: int) -> "Jet":
        """Zero-pad to order ``m`` (only meaningful for polynomials)."""
        s, r = self.shape
        extra = tuple(zeros(s, r) for _ in range(m - self.order))
        return Jet(self.coeffs + extra, self.base)

    def vanishes_through(self, j: int) -> bool:
        """True when coefficients ``0..j`` are all zero."""
        return all(is_zero_matrix(self.coeffs[k]) for k in range(min(j, self.order) + 1))

    def first_difference(self, other: "Jet"):
        """Smallest index where the coefficients differ, or ``None``."""
        for k in range(min(self.order, other.order) + 1):
            if [list(r) for r in self.coeffs[k]] != [list(r) for r in other.coeffs[k]]:
                return k
        return None

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Jet):
            raise TypeError("expected a Jet")
        if self.base != other.base:
            raise JetMismatchError("jets expanded at different base points")

    def __add__(self, other):
        self._check(other)
        m = min(self.order, other.order)
        return Jet(tuple(matadd(self.coeffs[k], other.coeffs[k]) for k in range(m + 1)), self.base)

    def __sub__(self, other):
        self._check(other)
        m = min(self.order, other.order)
        return Jet(tuple(matsub(self.coeffs[k], other.coeffs[k]) for k in range(m + 1)), self.base)

    def __neg__(self):
        return Jet(tuple(matscale(-1, c) for c in self.coeffs), self.base)

    def scale(self, c) -> "Jet":
        c = to_exact(c)
        return Jet(tuple(matscale(c, m) for m in self.coeffs), self.base)

    def __mul__(self, other):
        return jet_mul(self, other)

    def scale_arg(self, lam) -> "Jet":
        return jet_scale_arg(self, lam)

    def reciprocal(self) -> "Jet":
        """``1 / f`` for a scalar jet with nonzero constant term."""
        if self.shape != (1, 1):
            raise JetMismatchError("reciprocal is defined for scalar jets only")
        f = self.entry_coeffs()
        if f[0] == 0:
            raise ZeroDivisionError("jet has zero constant term")
        g = [1 / f[0]]
        for k in range(1, self.order + 1):
            acc = sum((f[i] * g[k - i] for i in range(1, k + 1)), Fraction(0))
            g.append(-acc / f[0])
        return Jet(tuple([[x]] for x in g), self.base)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.base == other.base and self.order == other.order and self.first_difference(other) is None

    def __hash__(self):
        return hash((self.base, self.coeffs))

    # -- display ------------------------------------------------------------
    def as_strings(self):
        """Per-entry coefficient string lists, ``out[p][q][j]``."""
        s, r = self.shape
        return [[[format_scalar(c[p][q]) for c in self.coeffs] for q in range(r)] for p in range(s)]

    def entry_polynomial(self, p=0, q=0) -> str:
        """Human-readable truncated polynomial in ``xi`` for one entry."""
        terms = []
        for j, c in enumerate(self.entry_coeffs(p, q)):
            if c == 0:
                continue
            cs = format_scalar(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if j == 0:
                terms.append(cs)
            else:
                mono = "xi" if j == 1 else f"xi^{j}"
                terms.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(xi^{self.order + 1})"


class FilterJet(Jet):
    """A ``1 x r`` jet at 0 representing the moments of a matching filter."""

    def __post_init__(self):
        super().__post_init__()
        if self.base != BASE_ZERO or self.shape[0] != 1:
            raise JetMismatchError("a filter jet is a 1 x r jet at base 0")

    @classmethod
    def from_jet(cls, jet: Jet) -> "FilterJet":
        return cls(jet.coeffs, jet.base)

    @classmethod
    def from_entries(cls, entries, base=BASE_ZERO):
        """``entries[q]`` is the coefficient list of filter entry ``q``."""
        return cls.from_jet(Jet.from_entries([list(entries)], base))

    @property
    def r(self) -> int:
        return self.shape[1]

    def value_at_zero(self):
        return list(self.coeffs[0][0])

    def is_normalized(self) -> bool:
        v = self.value_at_zero()
        nz = [x for x in v if x != 0]
        return bool(nz) and nz[0] == 1

    def normalized(self) -> "FilterJet":
        v = self.value_at_zero()
        nz = [x for x in v if x != 0]
        if not nz:
            raise ValueError("filter vanishes at zero")
        return FilterJet.from_jet(self.scale(1 / nz[0]))

    def truncate(self, m):
        return FilterJet.from_jet(Jet.truncate(self, m))

    def scale(self, c):
        return FilterJet.from_jet(Jet.scale(self, c))


# ----------------------------------------------------------------------


def jet_of(u: MatrixSequence, base: str = BASE_ZERO, order: int = 0) -> Jet:
    """Jet of the symbol of ``u``: ``c_j = sum_k u(k) (-ik)^j sigma^k / j!``.

    ``sigma`` is 1 at base 0 and -1 at base pi.
    """
    if order < 0:
        raise ValueError("jet order must be nonnegative")
    if base in (0, "0"):
        base = BASE_ZERO
    if base not in (BASE_ZERO, BASE_PI):
        raise ValueError(f"unsupported base point {base!r}")
    if not u.exact:
        raise TypeError("jets are computed from exact sequences only")
    re, im = u.numerators
    den = u.den
    s, r = u.shape
    ks = [u.start + i for i in range(len(u))]
    signs = [(-1) ** (k % 2) if base == BASE_PI else 1 for k in ks]
    weights = np.empty(len(ks), dtype=object)
    weights[:] = signs
    kk = np.empty(len(ks), dtype=object)
    kk[:] = ks
    coeffs = []
    for j in range(order + 1):
        mre = np.tensordot(weights, re, axes=(0, 0))
        mim = None if im is None else np.tensordot(weights, im, axes=(0, 0))
        factor = _ipow(3 * j) / math.factorial(j)  # (-i)^j / j!
        c = []
        for p in range(s):
            row = []
            for q in range(r):
                val = gauss(Fraction(int(mre[p, q]), den),
                            0 if mim is None else Fraction(int(mim[p, q]), den))
                row.append(val * factor)
            c.append(row)
        coeffs.append(c)
        weights = weights * kk
    return Jet(tuple(coeffs), base)


def jet_mul(f: Jet, g: Jet) -> Jet:
    """Cauchy product truncated at the common order."""
    f._check(g)
    if f.shape[1] != g.shape[0]:
        raise JetMismatchError(f"cannot multiply {f.shape} by {g.shape} jets")
    m = min(f.order, g.order)
    s, t = f.shape[0], g.shape[1]
    out = []
    for k in range(m + 1):
        acc = zeros(s, t)
        for i in range(k + 1):
            fi, gk = f.coeffs[i], g.coeffs[k - i]
            if is_zero_matrix(fi) or is_zero_matrix(gk):
                continue
            acc = matadd(acc, matmul(fi, gk))
        out.append(acc)
    res = Jet(tuple(out), f.base)
    if isinstance(f, FilterJet) and res.shape[0] == 1:
        return FilterJet.from_jet(res)
    return res


def jet_scale_arg(f: Jet, lam) -> Jet:
    """Jet of ``xi -> f(lam xi)`` (base 0 only)."""
    if f.base != BASE_ZERO:
        raise JetMismatchError("argument scaling is defined at base 0 only")
    lam = to_exact(lam)
    out = []
    p = Fraction(1)
    for c in f.coeffs:
        out.append(matscale(p, c))
        p = p * lam
    res = Jet(tuple(out), f.base)
    return FilterJet.from_jet(res) if isinstance(f, FilterJet) else res


def leading_degree(f: Jet, m: int):
    """``(j, beta_j)``: first nonzero index ``j <= m`` (else ``m``), ``beta_j = c_j / i^j``."""
    if f.shape != (1, 1):
        raise JetMismatchError("leading degree is defined for scalar jets")
    if f.order < m:
        raise JetMismatchError(f"jet order {f.order} is below {m}")
    cs = f.entry_coeffs()
    for j in range(m + 1):
        if cs[j] != 0:
            return j, cs[j] / _ipow(j)
    return m, cs[m] / _ipow(m)


def ipow(j: int):
    """Public exact ``i**j``."""
    return _ipow(j)
