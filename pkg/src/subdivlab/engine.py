"""Subdivision and transition operators, and exact samples of refinable
functions on dyadic grids.

Conventions: data sequences are rows (``s x r``) and the subdivision operator
acts on the right,

    (S_a w)(j) = 2 sum_k w(k) a(j - 2k),

while the transition operator acts on column sequences ``u`` (``r x 1``),

    (T_a u)(j) = 2 sum_k a(k) u(2j - k).

The refinable function is then sampled from the eigenvectors of ``T_a``:
``phi^(j)(2^-n k) = 2^{jn} (S_a^n(delta I) * u_{phi,j})(k)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .errors import AmbiguousEigenvectorError, NormalizationFailure, ResourceLimitError
from .jets import FilterJet, ipow, jet_mul, jet_of
from .linalg import charpoly, nullspace, root_multiplicity
from .masks import Mask
from .scalar import to_exact
from .sequence import (MatrixSequence, convolve, delta, dilated_convolve, subdivide_raw,
                       vector_sequence)

__all__ = ["SubdivisionIterate", "TransitionMatrix", "DyadicSamples", "subdivide_step", "iterate",
           "cascade", "transition_step", "transition_matrix", "phi_integer_samples", "dyadic_values",
           "limit_function_samples", "max_level", "MAX_LEVEL_DEFAULT", "MAX_ENTRIES"]

MAX_LEVEL_DEFAULT = 16
# upper bound on the number of scalar entries of one iterate
MAX_ENTRIES = 1 << 25


def max_level() -> int:
    """The level guard, ``SUBDIVLAB_MAX_LEVEL`` or 16."""
    raw = os.environ.get("SUBDIVLAB_MAX_LEVEL")
    if not raw:
        return MAX_LEVEL_DEFAULT
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"SUBDIVLAB_MAX_LEVEL must be an integer, got {raw!r}") from None
    if val < 0:
        raise ValueError("SUBDIVLAB_MAX_LEVEL must be nonnegative")
    return val


def _check_level(n: int, length: int, entries_per_position: int):
    cap = max_level()
    if n > cap:
        raise ResourceLimitError(f"level {n} exceeds the guard {cap} (set SUBDIVLAB_MAX_LEVEL)")
    size = ((1 << n) * length) * entries_per_position
    if size > MAX_ENTRIES:
        raise ResourceLimitError(f"level {n} would hold about {size} entries (limit {MAX_ENTRIES})")


def _mask_seq(a) -> MatrixSequence:
    return a.seq if isinstance(a, Mask) else a


# ----------------------------------------------------------------------
# subdivision


@dataclass(frozen=True)
class SubdivisionIterate:
    """``S_a^n w_0``; for ``w_0 = delta I`` this is ``2^n a_n``."""

    level: int
    seq: MatrixSequence

    @property
    def support(self):
        return self.seq.support


def subdivide_step(a, w: MatrixSequence) -> MatrixSequence:
    """``(S_a w)(j) = 2 sum_k w(k) a(j - 2k)``."""
    seq = _mask_seq(a)
    if w.cols != seq.rows:
        raise ValueError(f"data has {w.cols} columns but the mask is {seq.rows}x{seq.cols}")
    return subdivide_raw(w, seq).scale(2 if w.exact else 2.0)


def iterate(a, w0: MatrixSequence, n: int) -> SubdivisionIterate:
    """Apply :func:`subdivide_step` ``n`` times (``n >= 0``)."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    seq = _mask_seq(a)
    _check_level(n, len(w0) + len(seq), w0.rows * w0.cols)
    w = w0
    for _ in range(n):
        w = subdivide_step(seq, w)
    return SubdivisionIterate(n, w)


def cascade(a, u: MatrixSequence, n: int) -> List[MatrixSequence]:
    """``[S_a^k(delta I) * u for k in 0..n]`` for a column (or matrix) sequence ``u``.

    Uses ``a_k^(xi) = a^(2^{k-1} xi) a_{k-1}^(xi)``, so each level is one
    convolution with the mask dilated by ``2^{k-1}``; no matrix iterate is
    formed.
    """
    seq = _mask_seq(a)
    if u.rows != seq.cols:
        raise ValueError(f"test sequence has {u.rows} rows but the mask is {seq.rows}x{seq.cols}")
    _check_level(n, len(u) + len(seq), u.rows * u.cols)
    two = 2 if u.exact else 2.0
    out = [u]
    v = u
    for k in range(1, n + 1):
        v = dilated_convolve(seq, v, 1 << (k - 1)).scale(two)
        out.append(v)
    return out


# ----------------------------------------------------------------------
# transition operator


def transition_step(a, u: MatrixSequence) -> MatrixSequence:
    """``(T_a u)(j) = 2 sum_k a(k) u(2j - k)``."""
    seq = _mask_seq(a)
    if u.rows != seq.cols:
        raise ValueError(f"sequence has {u.rows} rows but the mask is {seq.rows}x{seq.cols}")
    full = convolve(seq, u)
    lo = -((-full.start) // 2)
    hi = full.stop // 2
    if lo > hi:
        return MatrixSequence.zeros(u.rows, u.cols, u.exact)
    if not full.exact:
        data = np.stack([full[2 * j] for j in range(lo, hi + 1)]) * 2.0
        return MatrixSequence(lo, data=data)
    mats = [full[2 * j] for j in range(lo, hi + 1)]
    return MatrixSequence.from_matrices(mats, lo).scale(2)


@dataclass(frozen=True)
class TransitionMatrix:
    """Dense matrix of ``T_a`` on sequences supported in the mask support.

    Rows and columns are ordered position-major: index ``(k - lo) * r + p``
    holds component ``p`` at position ``k``.
    """

    mask: Mask
    window: tuple
    matrix: tuple  # exact rows

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def as_float(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.matrix])

    def eigenvalues(self) -> np.ndarray:
        """Float eigenvalues sorted by decreasing modulus, then real part."""
        ev = np.linalg.eigvals(self.as_float())
        ev = np.where(np.abs(ev.imag) < 1e-13, ev.real + 0j, ev)
        order = sorted(range(len(ev)), key=lambda i: (-abs(ev[i]), -ev[i].real, -ev[i].imag))
        return ev[order]

    def apply(self, u: MatrixSequence) -> MatrixSequence:
        """Apply the dense matrix to a column sequence supported in the window."""
        lo, hi = self.window
        vec = self.to_vector(u)
        out = [sum((c * x for c, x in zip(row, vec)), Fraction(0)) for row in self.matrix]
        return self.from_vector(out)

    def to_vector(self, u: MatrixSequence) -> list:
        lo, hi = self.window
        if not u.is_zero() and (u.start < lo or u.stop > hi):
            raise ValueError(f"sequence support {u.support} is outside the window {self.window}")
        r = self.mask.r
        vec = []
        for k in range(lo, hi + 1):
            col = u[k]
            vec.extend(col[p][0] for p in range(r))
        return vec

    def from_vector(self, vec) -> MatrixSequence:
        lo, _ = self.window
        r = self.mask.r
        cols = [vec[i * r:(i + 1) * r] for i in range(len(vec) // r)]
        return vector_sequence(cols, lo)

    def eigenspace(self, lam) -> list:
        """Exact basis of ``ker(M - lam I)``, each as a column sequence."""
        lam = to_exact(lam)
        n = self.dim
        rows = [[self.matrix[i][k] - (lam if i == k else 0) for k in range(n)] for i in range(n)]
        return [self.from_vector(v) for v in nullspace(rows, n)]

    def algebraic_multiplicity(self, lam) -> int:
        """Exact multiplicity of ``lam`` as a root of the characteristic polynomial."""
        return root_multiplicity(charpoly([list(row) for row in self.matrix]), to_exact(lam))


def transition_matrix(a: Mask) -> TransitionMatrix:
    """``T_a`` restricted to the invariant window ``[N-, N+]`` (the mask support)."""
    seq = a.seq
    lo, hi = seq.support
    r = a.r
    n = (hi - lo + 1) * r
    zero = Fraction(0)
    M = [[zero] * n for _ in range(n)]
    for j in range(lo, hi + 1):
        for l in range(lo, hi + 1):
            blk = seq[2 * j - l]
            for p in range(r):
                for q in range(r):
                    M[(j - lo) * r + p][(l - lo) * r + q] = 2 * blk[p][q]
    return TransitionMatrix(a, (lo, hi), tuple(tuple(row) for row in M))


# ----------------------------------------------------------------------
# refinable function samples


@dataclass(frozen=True)
class DyadicSamples:
    """Values ``f(2^-n k)`` (``s x 1`` each) of a derivative of order ``deriv``.

    ``values`` holds ``k -> f(2^-n k)``; positions outside its window are zero.
    """

    deriv: int
    level: int
    values: MatrixSequence
    seed: Optional[MatrixSequence] = None

    def at_index(self, k: int):
        return [row[0] for row in self.values[k]]

    def at(self, x):
        """Sample at a dyadic point of this level."""
        x = to_exact(x) * (1 << self.level)
        if x.denominator != 1:
            raise ValueError(f"{x / (1 << self.level)} is not on the level-{self.level} grid")
        return self.at_index(int(x))

    def grid(self, lo=None, hi=None):
        """``[(x, values)]`` for ``k`` in ``[lo, hi]`` (default the stored window)."""
        lo = self.values.start if lo is None else lo
        hi = self.values.stop if hi is None else hi
        scale = 1 << self.level
        return [(Fraction(k, scale), self.at_index(k)) for k in range(lo, hi + 1)]


def _moments(v: FilterJet, u: MatrixSequence, j: int):
    """Taylor coefficients ``0..j`` of ``v^ u^``."""
    jet = jet_mul(v.truncate(j), jet_of(u, order=j))
    return [jet.coeff(k)[0][0] for k in range(j + 1)]


def phi_integer_samples(a: Mask, v: FilterJet, j: int = 0) -> MatrixSequence:
    """``u_{phi,j} = phi^(j)`` on the integers, as an exact ``r x 1`` sequence.

    The eigenvector of ``T_a`` for ``2^-j`` is found by an exact nullspace
    solve and scaled so that ``v^ u^ = (i xi)^j + ...``.

    Raises
    ------
    AmbiguousEigenvectorError
        ``2^-j`` is not an eigenvalue, or its eigenspace is not one-dimensional.
    NormalizationFailure
        The moment ``[v^ u^]^(j)(0)`` vanishes.
    """
    if j < 0:
        raise ValueError("derivative order must be nonnegative")
    if v.order < j:
        raise ValueError(f"filter jet of order {v.order} cannot normalize a derivative of order {j}")
    T = transition_matrix(a)
    lam = Fraction(1, 1 << j)
    basis = T.eigenspace(lam)
    if len(basis) != 1:
        what = "not an eigenvalue" if not basis else f"an eigenvalue with a {len(basis)}-dimensional eigenspace"
        raise AmbiguousEigenvectorError(f"2^-{j} is {what} of the transition operator")
    u = basis[0]
    coeffs = _moments(v, u, j)
    if coeffs[j] == 0:
        raise NormalizationFailure(f"the order-{j} moment of v^ u^ vanishes for the 2^-{j} eigenvector")
    return u.scale(ipow(j) / coeffs[j])


def dyadic_values(a: Mask, v: FilterJet, j: int, n: int, seed: Optional[MatrixSequence] = None) -> DyadicSamples:
    """``phi^(j)(2^-n k) = 2^{(j+1)n} (a_n * u_{phi,j})(k)``, exactly.

    ``a_n`` is formed by ``n`` subdivision steps applied to ``delta I``.
    """
    u = phi_integer_samples(a, v, j) if seed is None else seed
    it = iterate(a, delta(a.r), n).seq
    vals = convolve(it, u).scale(Fraction(1 << (j * n)))
    return DyadicSamples(j, n, vals, u)


def limit_function_samples(a: Mask, v: FilterJet, w0: MatrixSequence, j: int, n: int,
                           window: Optional[int] = None,
                           seed: Optional[MatrixSequence] = None) -> DyadicSamples:
    """Samples of ``eta^(j)`` with ``eta = sum_l w0(l) phi(. - l)`` at ``2^-n k``.

    ``eta^(j)(2^-n k) = 2^{jn} ((S_a^n w0) * u_{phi,j})(k)``; ``w0`` is an
    ``s x r`` sequence.  With ``window = K`` the result is restricted to
    ``|2^-n k| <= K``.
    """
    u = phi_integer_samples(a, v, j) if seed is None else seed
    wn = iterate(a, w0, n).seq
    vals = convolve(wn, u).scale(Fraction(1 << (j * n)))
    if window is not None:
        lim = window << n
        vals = vals.restrict(-lim, lim)
    return DyadicSamples(j, n, vals, u)
