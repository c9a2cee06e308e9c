"""Smoothness exponents from norm growth of subdivision iterates.

For a generator basis ``B`` of the moment-annihilation space ``V_{j-1}`` (all
``u`` with ``v^ u^ = O(xi^j)``),

    rho_j(a)_p = max_{u in B} lim_n ||S_a^n(delta I) * u||_p^{1/n},
    sm_p(a) = 1/p - log2 rho_{sr(a)}(a)_p.

The ``p = 2`` norms come from an exact autocorrelation recursion: with
``H_0 = u * u^*`` and ``H_n(j) = (a * H_{n-1} * a^*)(2j)`` one has
``||a_n * u||_2^2 = tr H_n(0)``, so every level costs a fixed-size
convolution.  ``p = inf`` norms use the exact vector cascade.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .engine import cascade
from .jets import FilterJet, jet_mul, jet_of
from .masks import Mask, sum_rule_order
from .normal_form import StronglyInvertible, build_U1
from .scalar import GaussianRational
from .sequence import MatrixSequence, convolve, delta, difference

__all__ = ["GeneratorBasis", "MemberEstimate", "RhoEstimate", "SmoothnessReport", "generator_basis",
           "rho_estimate", "rho_j", "sm_report", "log2_exact", "RATIO_WINDOW", "DEFAULT_LEVELS"]

RATIO_WINDOW = 4
DEFAULT_LEVELS = 18


def log2_exact(x) -> float:
    """``log2`` of a positive exact rational, accurate for huge numerators/denominators."""
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError("log2 of a non-real value")
        x = x.re
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log2 of a non-positive value")
    return math.log2(x.numerator) - math.log2(x.denominator)


@dataclass(frozen=True)
class GeneratorBasis:
    """``{nabla^j u_1, u_2, ..., u_r}`` generating ``V_{j-1}`` for the filter ``v``."""

    order: int
    members: Tuple[MatrixSequence, ...]
    filter: FilterJet
    transform: Optional[StronglyInvertible] = None

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def check(self) -> bool:
        """Exact membership: ``v^ u^`` vanishes through order ``j - 1`` for every member."""
        j = self.order
        if j == 0:
            return True
        v = self.filter.truncate(j - 1)
        return all(jet_mul(v, jet_of(u, order=j - 1)).vanishes_through(j - 1) for u in self.members)


def generator_basis(v: FilterJet, j: int, U1: Optional[StronglyInvertible] = None) -> GeneratorBasis:
    """Generators of ``V_{j-1}`` from the columns of a normal-form transform.

    ``U1`` defaults to :func:`~subdivlab.normal_form.build_U1` at order
    ``max(j - 1, 0)``; a supplied transform must have been built to at least
    that order.
    """
    if j < 0:
        raise ValueError("order must be nonnegative")
    r = v.r
    need = max(j - 1, 0)
    if r == 1:
        U1 = U1 or build_U1(v.truncate(0), 0)
        return GeneratorBasis(j, (difference(U1.column(0), j),), v, U1)
    if v.order < need:
        raise ValueError(f"filter jet of order {v.order} cannot define V_{j - 1}")
    if U1 is None:
        U1 = build_U1(v, need)
    elif U1.order is not None and U1.order < need:
        raise ValueError(f"normal form of order {U1.order} is insufficient for order {j}")
    members = [difference(U1.column(0), j)] + [U1.column(q) for q in range(1, r)]
    basis = GeneratorBasis(j, tuple(members), v, U1)
    if not basis.check():
        raise ValueError("transform does not annihilate the filter moments")
    return basis


@dataclass(frozen=True)
class MemberEstimate:
    """Norm history of one basis member.

    ``log2_norms[n]`` is ``log2 ||S_a^n(delta I) * u||_p`` for ``n = 0..n_max``
    (``-inf`` once the iterate vanishes).
    """

    log2_norms: Tuple[float, ...]
    ratio: float
    root: float
    spread: float

    @property
    def log2_ratio(self) -> float:
        return math.log2(self.ratio) if self.ratio > 0 else float("-inf")


@dataclass(frozen=True)
class RhoEstimate:
    """``rho_j`` estimate: max over members of the mean ratio ``s_{n+1}/s_n`` over the last levels."""

    p: float
    order: int
    n_max: int
    members: Tuple[MemberEstimate, ...]

    @property
    def rho(self) -> float:
        return max(m.ratio for m in self.members)

    @property
    def log2_rho(self) -> float:
        r = self.rho
        return math.log2(r) if r > 0 else float("-inf")

    @property
    def spread(self) -> float:
        """Spread (in log2) of the per-level ratios of the dominant member."""
        best = max(self.members, key=lambda m: m.ratio)
        return best.spread


def _l2_log_norms(a: MatrixSequence, u: MatrixSequence, n_max: int):
    """``log2 ||S_a^n(delta I) * u||_2`` for ``n = 0..n_max`` via autocorrelation."""
    H = convolve(u, u.adjoint())
    a_star = a.adjoint()
    out = []
    for n in range(n_max + 1):
        if n:
            H = convolve(convolve(a, H), a_star).coset(0)
        tr = sum((H[0][p][p] for p in range(H.rows)), Fraction(0))
        if tr == 0:
            out.append(float("-inf"))
        else:
            out.append(n + 0.5 * log2_exact(tr))
    return out


def _linf_log_norms(a: MatrixSequence, u: MatrixSequence, n_max: int):
    return [v.max_abs_log2() for v in cascade(a, u, n_max)]


def _member_estimate(logs, window: int) -> MemberEstimate:
    n_max = len(logs) - 1
    if logs[-1] == float("-inf"):
        return MemberEstimate(tuple(logs), 0.0, 0.0, 0.0)
    w = min(window, n_max)
    diffs = [logs[n + 1] - logs[n] for n in range(n_max - w, n_max)]
    ratio = sum(2.0 ** d for d in diffs) / len(diffs)
    root = 2.0 ** (logs[-1] / n_max) if n_max else float("nan")
    return MemberEstimate(tuple(logs), ratio, root, max(diffs) - min(diffs))


def rho_estimate(a: Mask, basis: GeneratorBasis, p=2, n_max: int = DEFAULT_LEVELS,
                 window: int = RATIO_WINDOW) -> RhoEstimate:
    """Estimate ``rho_j(a)_p`` for ``p`` in ``{2, inf}``.

    Parameters
    ----------
    a : Mask
    basis : GeneratorBasis
        From :func:`generator_basis`.
    p : 2 or float('inf')
    n_max : int
        Highest level, at least 4.
    window : int
        Number of trailing level ratios averaged.
    """
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    if p == 2:
        fn = _l2_log_norms
    elif p in (math.inf, "inf"):
        fn = _linf_log_norms
        p = math.inf
    else:
        raise ValueError("p must be 2 or inf")
    members = tuple(_member_estimate(fn(a.seq, u, n_max), window) for u in basis.members)
    return RhoEstimate(p, basis.order, n_max, members)


def rho_j(a: Mask, v: FilterJet, j: int, p=2, n_max: int = DEFAULT_LEVELS) -> RhoEstimate:
    """``rho_j(a, v)_p`` with the canonical generator basis of order ``j``."""
    return rho_estimate(a, generator_basis(v, j), p, n_max)


@dataclass(frozen=True)
class SmoothnessReport:
    """``sm_2`` and the ``sm_inf`` bracket ``[sm_2 - 1/2, sm_2]``.

    ``tolerance`` is the estimator's nominal accuracy on ``sm_2`` (from the
    ratio spread); ``notes`` carries diagnostics.
    """

    sr: int
    filter: FilterJet
    rho2: RhoEstimate
    sm2: float
    sm_inf_bracket: Tuple[float, float]
    tolerance: float
    rho_inf: Optional[RhoEstimate] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def bracket_floor(self) -> int:
        """Largest integer ``j`` with ``j <= sm_2`` (derivative orders above it are refused)."""
        return math.floor(self.sm2 + 1e-9)

    @property
    def default_order(self) -> int:
        """Largest integer strictly below the bracket midpoint."""
        mid = 0.5 * (self.sm_inf_bracket[0] + self.sm_inf_bracket[1])
        return math.ceil(mid) - 1


def sm_report(a: Mask, n_max: int = DEFAULT_LEVELS, p_inf_levels: Optional[int] = None) -> SmoothnessReport:
    """Sum-rule order, ``rho_{sr}`` at ``p = 2`` and the derived smoothness data.

    With ``p_inf_levels`` the ``p = inf`` estimate at that depth is added as a
    direct lower-bound check ``sm_inf >= -log2 rho_inf``.
    """
    res = sum_rule_order(a)
    notes = []
    if res.capped:
        notes.append(f"sum-rule search stopped at the cap {res.order}")
    if res.order < 1:
        raise ValueError("mask satisfies no sum rules; smoothness exponents are undefined")
    basis = generator_basis(res.filter, res.order)
    est = rho_estimate(a, basis, 2, n_max)
    if est.rho <= 0:
        sm2 = math.inf
        notes.append("all iterates vanish; sm_2 is infinite")
    else:
        sm2 = 0.5 - est.log2_rho
    tol = max(est.spread, 1e-6)
    rho_inf = None
    if p_inf_levels:
        rho_inf = rho_estimate(a, basis, math.inf, p_inf_levels)
    return SmoothnessReport(res.order, res.filter, est, sm2, (sm2 - 0.5, sm2), tol, rho_inf, tuple(notes))
