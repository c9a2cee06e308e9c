"""Strongly invertible transforms and the normal form of matching filters.

A matrix sequence ``U`` is strongly invertible when ``det U^(xi)`` is a
nonzero monomial ``c e^{-ik xi}``; its inverse is then again finitely
supported.  :func:`build_U1` produces such a ``U`` with
``v^(xi) U^(xi) = [1, 0, ..., 0] + O(xi^{m+1})``, which turns any matching
filter into the scalar-type filter ``[1, 0, ..., 0]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .jets import FilterJet, Jet, ipow, jet_mul, jet_of
from .linalg import solve
from .masks import Mask
from .scalar import to_exact
from .sequence import MatrixSequence, convolve, delta, hstack, upsample, vstack

__all__ = ["StronglyInvertible", "NotStronglyInvertibleError", "build_U1", "similarity_transform",
           "seq_det", "seq_adjugate"]


class NotStronglyInvertibleError(ValueError):
    """The determinant symbol is not a nonzero monomial."""


def _entry(U: MatrixSequence, p: int, q: int) -> MatrixSequence:
    return U.select([p], [q])


def _zero1(exact=True) -> MatrixSequence:
    return MatrixSequence.zeros(1, 1, exact)


def _assemble(rows: List[List[MatrixSequence]]) -> MatrixSequence:
    """Block matrix of ``1 x 1`` sequences."""
    return vstack([hstack(row) for row in rows])


def seq_det(U: MatrixSequence) -> MatrixSequence:
    """Determinant of a square matrix sequence as a scalar sequence (Laplace expansion)."""
    n = U.rows
    if U.cols != n:
        raise ValueError("determinant of a non-square sequence")
    ents = [[_entry(U, p, q) for q in range(n)] for p in range(n)]
    return _det_entries(ents)


def _det_entries(ents) -> MatrixSequence:
    n = len(ents)
    if n == 1:
        return ents[0][0]
    if n == 2:
        return convolve(ents[0][0], ents[1][1]) - convolve(ents[0][1], ents[1][0])
    total = None
    for q in range(n):
        if ents[0][q].is_zero():
            continue
        minor = [row[:q] + row[q + 1:] for row in ents[1:]]
        term = convolve(ents[0][q], _det_entries(minor))
        if q % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else _zero1()


def seq_adjugate(U: MatrixSequence) -> MatrixSequence:
    """Adjugate (transposed cofactor matrix) of a square matrix sequence."""
    n = U.rows
    if n == 1:
        return delta(1)
    ents = [[_entry(U, p, q) for q in range(n)] for p in range(n)]
    adj = [[None] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            minor = [row[:q] + row[q + 1:] for i, row in enumerate(ents) if i != p]
            c = _det_entries(minor)
            adj[q][p] = -c if (p + q) % 2 else c
    return _assemble(adj)


@dataclass(frozen=True)
class StronglyInvertible:
    """A strongly invertible ``r x r`` sequence with its inverse.

    ``det_coeff`` and ``det_index`` describe ``det U^ = det_coeff e^{-i det_index xi}``.
    ``permutation`` records the column swap applied to the filter before the
    construction in :func:`build_U1` (identity otherwise); ``order`` is the
    jet order ``m`` it was built for (``None`` when constructed directly).
    """

    U: MatrixSequence
    inverse: MatrixSequence
    det_coeff: object
    det_index: int
    permutation: Tuple[int, ...] = ()
    order: Optional[int] = None

    @classmethod
    def from_sequence(cls, U: MatrixSequence, permutation=(), order=None) -> "StronglyInvertible":
        if not U.exact:
            raise TypeError("strong invertibility is checked on exact sequences")
        d = seq_det(U)
        if d.is_zero() or len(d) != 1:
            raise NotStronglyInvertibleError("determinant symbol is not a nonzero monomial")
        k = d.start
        c = d[k][0][0]
        inv = seq_adjugate(U).scale(1 / c).shift(-k)
        if convolve(U, inv) != delta(U.rows):
            raise AssertionError("adjugate inverse failed to invert")  # cannot happen
        return cls(U, inv, c, k, tuple(permutation) or tuple(range(U.rows)), order)

    @property
    def r(self) -> int:
        return self.U.rows

    def column(self, q: int) -> MatrixSequence:
        return self.U.column(q)

    def det(self) -> MatrixSequence:
        return seq_det(self.U)


def _realize(target: List, m: int) -> MatrixSequence:
    """Scalar sequence on ``{0..m}`` whose symbol has the Taylor coefficients ``target[0..m]``.

    Solves ``sum_k c_k (-ik)^p / p! = target_p`` (a Vandermonde system on
    distinct nodes, hence uniquely solvable).
    """
    A = [[ipow(3 * p) * Fraction(k ** p, math.factorial(p)) for k in range(m + 1)]
         for p in range(m + 1)]
    coeffs = solve(A, [to_exact(t) for t in target[:m + 1]])
    return MatrixSequence.from_matrices([[[c]] for c in coeffs], 0)


def build_U1(v: FilterJet, m: int) -> StronglyInvertible:
    """Strongly invertible ``U1`` with ``v^ U1^ = [1, 0, ..., 0] + O(xi^{m+1})`` and ``det = +-1``.

    Parameters
    ----------
    v : FilterJet
        Matching filter jet of order at least ``m`` with ``v^(0) != 0``.
    m : int
        Jet order of the normal form.

    Notes
    -----
    With ``u_1^ = 1/v_1^`` and ``u_l^ = v_l^/v_1^`` realized on ``{0..m}``,
    ``g`` solves ``(1 - u_1^/u_1^(0))^{m+1} = 1 - u_1^ g^`` and

        U1 = [[u1 + u2, delta - (u1 + u2) * g, -u3, ..., -ur],
              [-delta,  g,                       0, ...,   0],
              [0,       0,                       I_{r-2}      ]].

    If ``v_1^(0) = 0`` the first column is swapped with the first column
    having a nonzero value, and the rows of ``U1`` are swapped back.
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    if v.order < m:
        raise ValueError(f"filter jet of order {v.order} is too short for order {m}")
    r = v.r
    v0 = v.value_at_zero()
    q0 = next((q for q in range(r) if v0[q] != 0), None)
    if q0 is None:
        raise ValueError("filter vanishes at zero")
    perm = list(range(r))
    perm[0], perm[q0] = perm[q0], perm[0]
    if r == 1:
        if m != 0:
            raise ValueError("for r = 1 strong invertibility limits the normal form to m = 0")
        U = delta(1).scale(1 / v0[0])
        return StronglyInvertible.from_sequence(U, perm, 0)
    ents = [v.entry(0, perm[q]).truncate(m) for q in range(r)]
    t1 = ents[0].reciprocal()
    targets = [t1.entry_coeffs()] + [jet_mul(ents[q], t1).entry_coeffs() for q in range(1, r)]
    us = [_realize(t, m) for t in targets]
    c = targets[0][0]
    x = us[0].scale(1 / c)
    g = _zero1()
    power = delta(1)
    for k in range(1, m + 2):
        term = power.scale(math.comb(m + 1, k) * (-1) ** (k + 1))
        g = g + term
        power = convolve(power, x)
    g = g.scale(1 / c)
    A = us[0] + us[1]
    one = delta(1)
    zero = _zero1()
    rows = [[A, one - convolve(A, g)] + [-us[q] for q in range(2, r)],
            [-one, g] + [zero] * (r - 2)]
    for p in range(2, r):
        rows.append([zero] * p + [one] + [zero] * (r - p - 1))
    U = _assemble(rows)
    if perm[0] != 0:
        order = list(range(r))
        order[0], order[q0] = q0, 0
        U = U.select(rows=order)
    res = StronglyInvertible.from_sequence(U, perm, m)
    check = jet_mul(v.truncate(m), jet_of(U, order=m))
    target = Jet.constant([[Fraction(int(q == 0)) for q in range(r)]], m)
    if check != target:
        raise AssertionError("normal form identity failed")  # cannot happen
    return res


def similarity_transform(a0: Mask, U: StronglyInvertible) -> Mask:
    """Mask with symbol ``U^(2 xi) a0^(xi) U^(xi)^{-1}``."""
    if a0.r != U.r:
        raise ValueError(f"mask size {a0.r} differs from transform size {U.r}")
    seq = convolve(convolve(upsample(U.U, 2), a0.seq), U.inverse)
    return Mask(seq)
