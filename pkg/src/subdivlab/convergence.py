"""Error curves, rate fits and convergence verdicts.

For a test sequence ``u`` with ``v^ u^ = beta (i xi)^j + ...`` the error

    E_u(n) = sup_k | 2^{jn} (S_a^n(delta I) * u)(k) - beta phi^(j)(2^-n k) |

is computed exactly as ``2^{jn} ||S_a^n(delta I) * (u - beta u_{phi,j})||_inf``,
using that ``phi^(j)(2^-n k) = 2^{jn} (S_a^n(delta I) * u_{phi,j})(k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .engine import cascade, phi_integer_samples
from .errors import AnalysisError, DegenerateInputError
from .jets import FilterJet, ipow, jet_mul, jet_of, leading_degree
from .masks import Mask
from .scalar import GaussianRational
from .sequence import MatrixSequence
from .smoothness import GeneratorBasis, SmoothnessReport, log2_exact

__all__ = ["ErrorCurve", "RateFit", "TauStarEstimate", "Verdict", "error_curve", "fit_rate",
           "running_slopes", "tau_star_estimate", "convergence_verdict", "DEFAULT_TAIL",
           "CONSISTENT", "INCONSISTENT", "INCONCLUSIVE"]

DEFAULT_TAIL = 5
CONSISTENT = "consistent-with-C^m-convergence"
INCONSISTENT = "inconsistent"
INCONCLUSIVE = "inconclusive"


def _sup_exact(v: MatrixSequence):
    """Exact ``max |entry|`` for real data; ``max |entry|^2`` flagged for complex data."""
    re, im = v.numerators
    den = v.den
    if im is None:
        m = max((abs(int(x)) for x in re.ravel().tolist()), default=0)
        return Fraction(m, den), False
    sq = re * re + im * im
    m = max((int(x) for x in sq.ravel().tolist()), default=0)
    return Fraction(m, den * den), True


@dataclass(frozen=True)
class ErrorCurve:
    """``E_u(n)`` for ``n = 1..n_max``.

    ``errors[n-1]`` is exact (a Fraction) when the data are real; for complex
    data it is the float modulus.  ``neg_log2[n-1] = -log2 E_u(n)`` (``inf``
    when the error vanishes).
    """

    deriv: int
    beta: object
    levels: Tuple[int, ...]
    errors: Tuple[object, ...]
    neg_log2: Tuple[float, ...]
    nu: Optional[float] = None

    def slope(self, tail: int = DEFAULT_TAIL) -> "RateFit":
        return fit_rate(self, tail)


def error_curve(a: Mask, v: FilterJet, u: MatrixSequence, n_max: int, j: Optional[int] = None,
                m: Optional[int] = None, seed: Optional[MatrixSequence] = None,
                nu: Optional[float] = None) -> ErrorCurve:
    """Exact error curve of the test sequence ``u`` (``r x 1``).

    Parameters
    ----------
    a, v : Mask, FilterJet
        Mask and a matching filter jet of order at least ``j``.
    u : MatrixSequence
        Exact column sequence.
    n_max : int
        Last level.
    j : int, optional
        Derivative order.  Defaults to the leading degree of ``v^ u^`` capped
        at ``m``.
    m : int, optional
        Cap for the leading degree (required when ``j`` is omitted), normally
        the largest integer below the ``sm_inf`` bracket midpoint.
    seed : MatrixSequence, optional
        Precomputed ``u_{phi,j}``.
    nu : float, optional
        Theoretical rate stored with the curve.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not u.exact:
        raise TypeError("error curves need an exact test sequence")
    if j is None:
        if m is None:
            raise ValueError("give either the derivative order j or the cap m")
        cap = min(m, v.order)
        j, beta = leading_degree(jet_mul(v.truncate(cap), jet_of(u, order=cap)), cap)
    else:
        if v.order < j:
            raise ValueError(f"filter jet of order {v.order} cannot resolve derivative order {j}")
        cs = jet_mul(v.truncate(j), jet_of(u, order=j)).entry_coeffs()
        beta = cs[j] / ipow(j)
        if beta == 0 and m is not None and j < m:
            raise DegenerateInputError(f"v^ u^ has no (i xi)^{j} term; use a higher derivative order")
    w = u
    if beta != 0:
        uphi = phi_integer_samples(a, v, j) if seed is None else seed
        w = u - uphi.scale(beta)
    errors, logs = [], []
    scale = Fraction(1 << j) if j else Fraction(1)
    for n, vn in enumerate(cascade(a, w, n_max)):
        if n == 0:
            continue
        sup, squared = _sup_exact(vn)
        if sup == 0:
            errors.append(Fraction(0))
            logs.append(math.inf)
            continue
        lg = log2_exact(sup)
        if squared:
            lg *= 0.5
        lg += j * n
        errors.append(2.0 ** lg if squared else sup * scale ** n)
        logs.append(-lg)
    return ErrorCurve(j, beta, tuple(range(1, n_max + 1)), tuple(errors), tuple(logs), nu)


@dataclass(frozen=True)
class RateFit:
    """Least-squares slope of ``-log2 E_u(n)`` over the last ``tail`` levels.

    ``exact`` marks vanishing errors in the window (exact reproduction); the
    slope is then ``inf``.
    """

    slope: float
    tail: int
    exact: bool = False


def fit_rate(curve: ErrorCurve, tail: int = DEFAULT_TAIL) -> RateFit:
    if tail < 3:
        raise ValueError("tail must cover at least 3 levels")
    if len(curve.levels) < tail:
        raise ValueError(f"curve has {len(curve.levels)} levels, fewer than the tail {tail}")
    ys = curve.neg_log2[-tail:]
    xs = curve.levels[-tail:]
    if any(math.isinf(y) for y in ys):
        return RateFit(math.inf, tail, exact=True)
    slope = float(np.polyfit(np.array(xs, dtype=float), np.array(ys, dtype=float), 1)[0])
    return RateFit(slope, tail)


def running_slopes(curve: ErrorCurve) -> List[Optional[float]]:
    """Successive differences of ``-log2 E_u(n)`` (``None`` at the first level or when undefined)."""
    out: List[Optional[float]] = [None]
    for y0, y1 in zip(curve.neg_log2, curve.neg_log2[1:]):
        out.append(None if math.isinf(y0) or math.isinf(y1) else y1 - y0)
    return out


@dataclass(frozen=True)
class TauStarEstimate:
    """Fitted decay exponent of windowed sup-norms.

    ``log2_norms[i]`` belongs to ``levels[i]``; ``tau`` is minus the fitted
    slope over the tail (``None`` when the norms vanish in the tail).
    """

    levels: Tuple[int, ...]
    log2_norms: Tuple[float, ...]
    tau: Optional[float]
    monotone: bool


def tau_star_estimate(iterates: Sequence[MatrixSequence], K: int, first_level: int = 0,
                      tail: int = DEFAULT_TAIL) -> TauStarEstimate:
    """``tau`` with ``sup_{|k| <= 2^n K} |v_n(k)| ~ 2^{-tau n}``.

    ``iterates[i]`` is the level ``first_level + i`` sequence.
    """
    if len(iterates) < 6:
        raise ValueError("at least 6 levels are needed")
    levels, logs = [], []
    for i, v in enumerate(iterates):
        n = first_level + i
        lim = K << n
        levels.append(n)
        logs.append(v.restrict(-lim, lim).max_abs_log2())
    if all(math.isinf(x) for x in logs):
        raise DegenerateInputError("all iterates vanish on the window")
    tail = min(tail, len(levels))
    ys = logs[-tail:]
    if any(math.isinf(y) for y in ys):
        return TauStarEstimate(tuple(levels), tuple(logs), None, False)
    slope = float(np.polyfit(np.array(levels[-tail:], dtype=float), np.array(ys, dtype=float), 1)[0])
    monotone = all(y1 <= y0 + 1e-12 for y0, y1 in zip(ys, ys[1:]))
    return TauStarEstimate(tuple(levels), tuple(logs), -slope, monotone)


@dataclass(frozen=True)
class Verdict:
    """Finite-level evidence about ``C^m`` convergence; never a proof."""

    verdict: str
    m: int
    slopes: Tuple[float, ...] = ()
    bracket: Optional[Tuple[float, float]] = None
    diagnostics: Tuple[str, ...] = field(default_factory=tuple)


def convergence_verdict(a: Mask, v: FilterJet, basis: GeneratorBasis, m: int, n_max: int = 10,
                        smoothness: Optional[SmoothnessReport] = None,
                        tail: int = DEFAULT_TAIL) -> Verdict:
    """Check that ``2^{mn} S_a^n(delta I) * u`` approaches ``beta_m phi^(m)`` for every generator.

    The verdict is ``inconsistent`` when a curve grows in the tail, the
    eigenvector for ``2^-m`` is unavailable, or the ``sm_inf`` bracket lies
    below ``m``; ``consistent`` when every curve decreases with positive
    fitted slope and the bracket does not exclude ``C^m``; otherwise
    ``inconclusive``.
    """
    diags = []
    bracket = None
    if smoothness is not None:
        bracket = smoothness.sm_inf_bracket
        if bracket[1] <= m:
            diags.append(f"sm_inf <= sm_2 = {bracket[1]:.4f} does not exceed m = {m}")
            return Verdict(INCONSISTENT, m, (), bracket, tuple(diags))
    slopes = []
    try:
        seed = phi_integer_samples(a, v, m)
    except AnalysisError as exc:
        diags.append(f"no refinable samples for derivative order {m}: {exc}")
        return Verdict(INCONSISTENT, m, (), bracket, tuple(diags))
    decreasing = True
    for i, u in enumerate(basis.members):
        curve = error_curve(a, v, u, n_max, j=m, seed=seed)
        fit = fit_rate(curve, min(tail, n_max))
        slopes.append(fit.slope)
        ys = [y for y in curve.neg_log2[-tail:] if not math.isinf(y)]
        if fit.slope < 0.1 or any(y1 < y0 - 1e-9 for y0, y1 in zip(ys, ys[1:])):
            decreasing = False
            diags.append(f"generator {i}: tail slope {fit.slope:.4f}")
    if any(s < -0.1 for s in slopes):
        return Verdict(INCONSISTENT, m, tuple(slopes), bracket, tuple(diags))
    if decreasing and (bracket is None or bracket[1] > m):
        return Verdict(CONSISTENT, m, tuple(slopes), bracket, tuple(diags))
    return Verdict(INCONCLUSIVE, m, tuple(slopes), bracket, tuple(diags))
