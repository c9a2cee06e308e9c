"""Mask-level analysis: spectra of the summed mask, matching filters, sum rules,
linear mask design and scheme classification.

All decisions that feed later exact computations are themselves exact: the
eigenvalue-1 structure of ``a(0) := sum_k a(k)`` is settled from the exact
characteristic polynomial, float eigenvalues are reported for display and for
the modulus comparisons ``|lambda| < 2^-m``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (AnalysisError, EigenvalueNotSimpleError, InfeasibleDesignError,
                     SingularRecursionError)
from .jets import BASE_PI, BASE_ZERO, FilterJet, Jet, ipow, jet_mul, jet_of, jet_scale_arg
from .linalg import (InconsistentSystemError, charpoly, eye, matsub, nullspace, root_multiplicity,
                     solve_affine, transpose)
from .scalar import GaussianRational, to_exact
from .sequence import MatrixSequence

__all__ = ["Mask", "Symmetry", "SpectralReport", "SchemeClass", "SumRuleResult", "DesignedFamily",
           "spectral_report", "matching_filter_moments", "verify_matching_filter", "sum_rule_order",
           "design_mask", "classify_scheme", "FilterWarning"]

EIGEN_TOL = 1e-9
DEFAULT_SR_CAP = 16


class FilterWarning(UserWarning):
    """Filter moments computed although the spectral condition for their uniqueness fails."""


@dataclass(frozen=True)
class Symmetry:
    """``a(2c - k) = S a(k) S^-1`` with ``S = diag(signs)`` and half-integer ``c``."""

    center: Fraction
    signs: tuple

    def __post_init__(self):
        c = Fraction(self.center)
        if (2 * c).denominator != 1:
            raise ValueError("symmetry center must be a half-integer")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("symmetry signs must be +1 or -1")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))

    def mirror(self, k: int) -> int:
        return int(2 * self.center) - k


@dataclass(frozen=True)
class Mask:
    """An exact square matrix mask with optional symmetry descriptor."""

    seq: MatrixSequence
    symmetry: Optional[Symmetry] = None

    def __post_init__(self):
        if not self.seq.exact:
            raise TypeError("masks hold exact scalars")
        if self.seq.rows != self.seq.cols:
            raise ValueError("mask coefficients must be square")
        if self.symmetry is not None:
            if len(self.symmetry.signs) != self.r:
                raise ValueError("symmetry sign count differs from mask size")
            if not self.satisfies_symmetry(self.symmetry):
                raise ValueError("mask does not satisfy its symmetry descriptor")

    @classmethod
    def from_matrices(cls, mats, start=0, symmetry=None):
        return cls(MatrixSequence.from_matrices(mats, start), symmetry)

    @property
    def r(self) -> int:
        return self.seq.rows

    @property
    def support(self):
        return self.seq.support

    def __getitem__(self, k):
        return self.seq[k]

    def value_at_zero(self):
        """``a(0)^ = sum_k a(k)`` as an exact matrix."""
        return self.seq.sum()

    def satisfies_symmetry(self, sym: Symmetry) -> bool:
        lo, hi = self.support
        for k in range(lo, hi + 1):
            ak, am = self.seq[k], self.seq[sym.mirror(k)]
            for p in range(self.r):
                for q in range(self.r):
                    if am[p][q] != sym.signs[p] * sym.signs[q] * ak[p][q]:
                        return False
        return True


# ----------------------------------------------------------------------
# spectral report


@dataclass(frozen=True)
class SpectralReport:
    """Eigen-structure of ``a(0)^`` relevant for filter uniqueness.

    Attributes
    ----------
    eigenvalues : tuple of complex
        Float eigenvalues sorted by decreasing modulus.
    unit_multiplicity : int
        Exact algebraic multiplicity of the eigenvalue 1.
    unit_geometric : int
        Exact dimension of the left eigenspace for 1.
    dyadic_eigenvalues : tuple of int
        Exponents ``k >= 1`` with ``2^k`` an exact eigenvalue.
    other_radius : float
        Largest modulus among eigenvalues other than one copy of 1.
    m_tilde : int or None
        Largest ``m`` with ``cond_a(m)``; ``None`` when unbounded and ``-1``
        when ``cond_a(0)`` fails.
    """

    eigenvalues: tuple
    unit_multiplicity: int
    unit_geometric: int
    dyadic_eigenvalues: tuple
    other_radius: float
    m_tilde: Optional[int]
    tolerance: float = EIGEN_TOL

    @property
    def unit_simple(self) -> bool:
        return self.unit_multiplicity == 1

    @property
    def cond_a0(self) -> bool:
        return self.unit_simple and not self.dyadic_eigenvalues

    def cond_a(self, m: int) -> bool:
        return self.m_tilde is None or m <= self.m_tilde


def _m_tilde(unit_simple, radius):
    if not unit_simple or radius >= 1 - EIGEN_TOL:
        return -1
    if radius == 0:
        return None
    x = -math.log2(radius)  # need m < x
    if abs(x - round(x)) < 1e-9:
        return int(round(x)) - 1
    return math.ceil(x) - 1


def spectral_report(a: Mask, m: Optional[int] = None) -> SpectralReport:
    """Spectrum of ``a(0)^`` with the flags ``cond_a(m)``, ``cond_a0`` and ``m~``.

    ``m`` is accepted for interface symmetry; query :meth:`SpectralReport.cond_a`.
    """
    A0 = a.value_at_zero()
    r = a.r
    evs = np.linalg.eigvals(np.array([[complex(x) for x in row] for row in A0]))
    evs = sorted(evs, key=lambda z: (-abs(z), -z.real, -z.imag))
    cp = charpoly(A0)
    mult = root_multiplicity(cp, Fraction(1))
    geo = len(nullspace(transpose(matsub(A0, eye(r)))))
    # remove one copy of 1 (the nearest float eigenvalue) for the radius
    others = list(evs)
    if mult >= 1:
        idx = min(range(len(others)), key=lambda i: abs(others[i] - 1))
        others.pop(idx)
    radius = max((abs(z) for z in others), default=0.0)
    if radius < 1e-14 and all(c == 0 for c in cp[:max(r - 1, 0)]):
        radius = 0.0
    bound = max((abs(z) for z in evs), default=0.0)
    dyadic = []
    k = 1
    while 2 ** k <= bound * (1 + 1e-6) + 1:
        if root_multiplicity(cp, Fraction(2 ** k)) > 0:
            dyadic.append(k)
        k += 1
    return SpectralReport(
        eigenvalues=tuple(complex(z) for z in evs),
        unit_multiplicity=mult,
        unit_geometric=geo,
        dyadic_eigenvalues=tuple(dyadic),
        other_radius=float(radius),
        m_tilde=_m_tilde(mult == 1, radius),
    )


# ----------------------------------------------------------------------
# matching filters
#
# Work with "real moments" alpha_j = sum_k a(k) k^j sigma^k / j!, so that the
# Taylor coefficients of the symbol are (-i)^j alpha_j.  Writing the filter
# coefficients as v_j = (-i)^j w_j turns every identity into one with the
# same coefficient field as the mask (rationals for real masks).


def _real_moments(a: MatrixSequence, order: int, base: str):
    jet = jet_of(a, base, order)
    return [[[c / ipow(3 * j) for c in row] for row in jet.coeffs[j]] for j in range(order + 1)]


def _vecmat(v, M):
    return [sum((v[p] * M[p][q] for p in range(len(v)) if v[p] != 0), Fraction(0))
            for q in range(len(M[0]))]


def _left_unit_vector(a: Mask):
    A0 = a.value_at_zero()
    ker = nullspace(transpose(matsub(A0, eye(a.r))))
    if len(ker) != 1:
        raise EigenvalueNotSimpleError(
            f"eigenvalue 1 of the summed mask has a {len(ker)}-dimensional left eigenspace")
    v = ker[0]
    first = next(x for x in v if x != 0)
    return [x / first for x in v]


def _w_to_filter(ws, r) -> FilterJet:
    coeffs = tuple([[ipow(3 * j) * x for x in w]] for j, w in enumerate(ws))
    return FilterJet(coeffs)


def _filter_to_w(f: FilterJet):
    return [[x / ipow(3 * j) for x in f.coeffs[j][0]] for j in range(f.order + 1)]


def _recursion_step(ws, alpha, j, r):
    """``w_j`` from ``w_j (I - 2^j alpha_0) = sum_{k<j} 2^k w_k alpha_{j-k}``."""
    rhs = [Fraction(0)] * r
    for k in range(j):
        t = _vecmat(ws[k], alpha[j - k])
        rhs = [x + (2 ** k) * y for x, y in zip(rhs, t)]
    M = [[Fraction(int(p == q)) - (2 ** j) * alpha[0][p][q] for q in range(r)] for p in range(r)]
    # solve w M = rhs  <=>  M^T w^T = rhs^T
    try:
        w, ker = solve_affine(transpose(M), rhs)
    except InconsistentSystemError:
        raise SingularRecursionError(f"I - 2^{j} a(0) is singular and the order-{j} moment has no solution")
    if ker:
        raise SingularRecursionError(f"I - 2^{j} a(0) is singular; the order-{j} moment is not unique")
    return w


def matching_filter_moments(a: Mask, m: int) -> FilterJet:
    """Filter moments ``v_0..v_m`` with ``v(2xi) a(xi) = v(xi) + O(xi^{m+1})``.

    ``v_0`` is the left eigenvector of ``a(0)^`` for the eigenvalue 1 with
    first nonzero entry 1; higher moments follow the standard recursion.
    When ``I - 2^j a(0)^`` is singular but the order-``j`` equation is
    consistent, the free directions are fixed by additionally imposing the
    sum-rule identities at ``pi`` (as many orders as remain feasible); if that
    still leaves freedom, :class:`SingularRecursionError` is raised.

    A :class:`FilterWarning` is emitted when the spectral condition
    ``cond_a(m)`` fails.
    """
    rep = spectral_report(a)
    if not rep.cond_a(m):
        warnings.warn(f"spectral condition cond_a({m}) fails (m~={rep.m_tilde}); "
                      "filter moments may not be unique", FilterWarning, stacklevel=2)
    r = a.r
    alpha = _real_moments(a.seq, m, BASE_ZERO)
    ws = [_left_unit_vector(a)]
    for j in range(1, m + 1):
        try:
            ws.append(_recursion_step(ws, alpha, j, r))
        except SingularRecursionError as exc:
            if "no solution" in str(exc):
                raise
            return _w_to_filter(_moments_with_sum_rules(a, ws[0], m), r)
    return _w_to_filter(ws, r)


def _moments_with_sum_rules(a: Mask, w0, m):
    r = a.r
    alpha = _real_moments(a.seq, m, BASE_ZERO)
    beta = _real_moments(a.seq, m, BASE_PI)
    for m_b in range(m, -2, -1):
        A, b = _joint_system(alpha, beta, w0, r, m + 1, m_b + 1)
        try:
            x, ker = solve_affine(A, b)
        except InconsistentSystemError:
            if m_b == -1:
                raise SingularRecursionError("matching-filter equations have no solution") from None
            continue
        if ker:
            raise SingularRecursionError(
                f"filter moments through order {m} are not unique even with sum-rule constraints")
        return [w0] + [x[k * r:(k + 1) * r] for k in range(m)]
    raise SingularRecursionError("matching-filter equations have no solution")


def verify_matching_filter(a: Mask, v: FilterJet):
    """Check ``v(2xi) a(xi) = v(xi)`` through the order of ``v``.

    Returns
    -------
    (bool, int or None)
        Whether the identity holds, and the first failing order.
    """
    m = v.order
    lhs = jet_mul(jet_scale_arg(v, 2), jet_of(a.seq, BASE_ZERO, m))
    k = lhs.first_difference(Jet(v.coeffs))
    return k is None, k


def verify_sum_rules(a: Mask, v: FilterJet, order: int):
    """Check both sum-rule identities of the given order with filter jet ``v``."""
    m = order - 1
    if m < 0:
        return True
    if v.order < m:
        raise ValueError("filter jet too short for the requested order")
    v = v.truncate(m)
    ok, _ = verify_matching_filter(a, v)
    if not ok:
        return False
    lhs = jet_mul(jet_scale_arg(v, 2), Jet(jet_of(a.seq, BASE_PI, m).coeffs, BASE_ZERO))
    return lhs.vanishes_through(m)


@dataclass(frozen=True)
class SumRuleResult:
    order: int
    filter: FilterJet
    capped: bool = False

    def __iter__(self):
        return iter((self.order, self.filter))


def sum_rule_order(a: Mask, m_cap: int = DEFAULT_SR_CAP) -> SumRuleResult:
    """Largest ``m <= m_cap`` for which the mask has order-``m`` sum rules.

    The filter value at zero is the unit left eigenvector of ``a(0)^``.  Higher
    moments come from the recursion when ``I - 2^j a(0)^`` is invertible (they
    are then forced); otherwise the moments up to ``m - 1`` are solved jointly
    with both sum-rule identities as one exact linear feasibility problem.
    """
    r = a.r
    alpha = _real_moments(a.seq, m_cap, BASE_ZERO)
    beta = _real_moments(a.seq, m_cap, BASE_PI)
    w0 = _left_unit_vector(a)

    def b_ok(ws, j):
        acc = [Fraction(0)] * r
        for k in range(j + 1):
            t = _vecmat(ws[k], beta[j - k])
            acc = [x + (2 ** k) * y for x, y in zip(acc, t)]
        return all(x == 0 for x in acc)

    ws = [w0]
    if not b_ok(ws, 0):
        return SumRuleResult(0, _w_to_filter(ws, r))
    for j in range(1, m_cap):
        try:
            wj = _recursion_step(ws, alpha, j, r)
        except SingularRecursionError:
            return _joint_sum_rules(alpha, beta, ws, r, m_cap)
        ws.append(wj)
        if not b_ok(ws, j):
            return SumRuleResult(j, _w_to_filter(ws[:j], r))
    return SumRuleResult(m_cap, _w_to_filter(ws, r), capped=True)


def _joint_system(alpha, beta, w0, r, m, m_b=None):
    """Linear system in ``w_1..w_{m-1}``.

    Imposes the matching-filter identity through order ``m - 1`` and the
    identity at ``pi`` through order ``m_b - 1`` (default ``m - 1``), i.e.
    order-``m`` sum rules when ``m_b = m``.
    """
    m_b = m if m_b is None else m_b
    nun = (m - 1) * r
    A, b = [], []
    for mom, is_a, top in ((alpha, True, m), (beta, False, m_b)):
        for j in range(top):
            for q in range(r):
                row = [Fraction(0)] * nun
                rhs = Fraction(0)
                for k in range(j + 1):
                    M = mom[j - k]
                    for p in range(r):
                        c = (2 ** k) * M[p][q]
                        if k == 0:
                            rhs -= c * w0[p]
                        else:
                            row[(k - 1) * r + p] += c
                if is_a:
                    if j == 0:
                        rhs += w0[q]
                    else:
                        row[(j - 1) * r + q] -= 1
                A.append(row)
                b.append(rhs)
    return A, b


def _joint_sum_rules(alpha, beta, ws, r, m_cap):
    """Continue the search once the recursion is singular.

    ``ws`` holds moments for which sum rules of order ``len(ws)`` hold.
    """
    best_m, best_ws = len(ws), ws
    for m in range(len(ws) + 1, m_cap + 1):
        A, b = _joint_system(alpha, beta, ws[0], r, m)
        try:
            x, _ = solve_affine(A, b)
        except InconsistentSystemError:
            break
        best_m, best_ws = m, [ws[0]] + [x[k * r:(k + 1) * r] for k in range(m - 1)]
    return SumRuleResult(best_m, _w_to_filter(best_ws, r), capped=(best_m == m_cap))


# ----------------------------------------------------------------------
# design


@dataclass(frozen=True)
class DesignedFamily:
    """Affine family ``particular + sum_i t_i basis[i]`` of masks."""

    support: tuple
    r: int
    particular: MatrixSequence
    basis: tuple
    symmetry: Optional[Symmetry] = None

    @property
    def num_params(self) -> int:
        return len(self.basis)

    def member(self, params) -> Mask:
        params = [to_exact(t) for t in params]
        if len(params) != self.num_params:
            raise ValueError(f"expected {self.num_params} parameters")
        seq = self.particular
        for t, b in zip(params, self.basis):
            seq = seq + b.scale(t)
        return Mask(seq, self.symmetry)

    def contains(self, a: Mask) -> bool:
        """Exact membership test for a mask supported in the design window."""
        lo, hi = self.support
        if a.r != self.r or a.support[0] < lo or a.support[1] > hi:
            return False
        target = _flatten(a.seq, lo, hi, self.r)
        base = _flatten(self.particular, lo, hi, self.r)
        rhs = [x - y for x, y in zip(target, base)]
        if not self.basis:
            return all(x == 0 for x in rhs)
        cols = [_flatten(b, lo, hi, self.r) for b in self.basis]
        A = [[c[i] for c in cols] for i in range(len(rhs))]
        try:
            solve_affine(A, rhs)
        except InconsistentSystemError:
            return False
        return True


def _flatten(seq, lo, hi, r):
    out = []
    for k in range(lo, hi + 1):
        m = seq[k]
        out.extend(m[p][q] for p in range(r) for q in range(r))
    return out


def _realify(rows, rhs):
    """Split complex linear equations in real unknowns into real and imaginary parts."""
    A, b = [], []
    for row, y in zip(rows, rhs):
        re = [x.re if isinstance(x, GaussianRational) else x for x in row]
        im = [x.im if isinstance(x, GaussianRational) else Fraction(0) for x in row]
        yre = y.re if isinstance(y, GaussianRational) else y
        yim = y.im if isinstance(y, GaussianRational) else Fraction(0)
        A.append(re)
        b.append(yre)
        if any(x != 0 for x in im) or yim != 0:
            A.append(im)
            b.append(yim)
    return A, b


def design_mask(support, r: int, symmetry: Optional[Symmetry], m_a: int, v: FilterJet) -> DesignedFamily:
    """All real rational masks on ``support`` with order-``m_a`` sum rules for filter ``v``.

    The unknowns are the mask entries; the equations are the Taylor
    coefficients ``0..m_a-1`` of ``v(2xi) a(xi) - v(xi)`` and ``v(2xi) a(xi+pi)``
    together with the symmetry relation.

    Raises
    ------
    InfeasibleDesignError
        When no mask satisfies the constraints.
    """
    lo, hi = (int(support[0]), int(support[1]))
    if lo > hi:
        raise ValueError("empty support")
    if v.r != r:
        raise ValueError("filter size differs from r")
    if m_a > 0 and v.order < m_a - 1:
        raise ValueError(f"filter jet must reach order {m_a - 1}")
    ks = list(range(lo, hi + 1))
    nun = len(ks) * r * r

    def idx(ki, p, q):
        return (ki * r + p) * r + q

    vc = [list(v.coeffs[j][0]) for j in range(v.order + 1)]
    rows, rhs = [], []
    for sigma_pi in (False, True):
        for j in range(m_a):
            for q in range(r):
                row = [Fraction(0)] * nun
                for l in range(j + 1):
                    d = j - l
                    for ki, k in enumerate(ks):
                        kf = ipow(3 * d) * Fraction(k) ** d / math.factorial(d)
                        if sigma_pi and k % 2:
                            kf = -kf
                        if kf == 0:
                            continue
                        for p in range(r):
                            if vc[l][p] != 0:
                                row[idx(ki, p, q)] += (2 ** l) * vc[l][p] * kf
                rows.append(row)
                rhs.append(Fraction(0) if sigma_pi else vc[j][q])
    A, b = _realify(rows, rhs)
    if symmetry is not None:
        if len(symmetry.signs) != r:
            raise ValueError("symmetry sign count differs from r")
        for ki, k in enumerate(ks):
            mk = symmetry.mirror(k)
            for p in range(r):
                for q in range(r):
                    row = [Fraction(0)] * nun
                    row[idx(ki, p, q)] -= symmetry.signs[p] * symmetry.signs[q]
                    if lo <= mk <= hi:
                        row[idx(mk - lo, p, q)] += 1
                    A.append(row)
                    b.append(Fraction(0))
    if not A:
        A = [[Fraction(0)] * nun]
        b = [Fraction(0)]
    try:
        x, ker = solve_affine(A, b)
    except InconsistentSystemError:
        raise InfeasibleDesignError(
            f"no mask on [{lo}, {hi}] has order-{m_a} sum rules with the given filter") from None

    def to_seq(vec):
        mats = [[[vec[idx(ki, p, q)] for q in range(r)] for p in range(r)] for ki in range(len(ks))]
        return MatrixSequence.from_matrices(mats, lo)

    return DesignedFamily((lo, hi), r, to_seq(x), tuple(to_seq(k) for k in ker), symmetry)


# ----------------------------------------------------------------------
# classification

SCHEME_TAGS = ("Lagrange", "Hermite", "GeneralizedHermite", "ScalarType", "Balanced", "Unclassified")


@dataclass(frozen=True)
class SchemeClass:
    """Template matched by a matching filter.

    ``nu`` holds the derivative orders attached to the components
    (generalized Hermite type); ``fast`` marks the exact template variant;
    ``detail`` carries the Hermite order or the balanced prefactor label.
    """

    tag: str
    nu: tuple = ()
    fast: bool = False
    detail: str = ""

    def label(self) -> str:
        if self.tag == "Hermite":
            return f"Hermite({len(self.nu)})"
        if self.tag == "GeneralizedHermite":
            return f"GeneralizedHermite({','.join(map(str, self.nu))})"
        if self.tag == "Balanced":
            return f"Balanced({self.detail})"
        return self.tag


def _exp_coeffs(t: Fraction, m: int):
    """Taylor coefficients of ``exp(i t xi)`` through order ``m``."""
    return [ipow(j) * t ** j / math.factorial(j) for j in range(m + 1)]


def _series_mul(f, g, m):
    return [sum((f[i] * g[k - i] for i in range(k + 1)), Fraction(0)) for k in range(m + 1)]


def classify_scheme(v: FilterJet, r: int, m: int) -> SchemeClass:
    """Match a filter jet against the Lagrange/Hermite/generalized Hermite,
    scalar-type and balanced templates through order ``m``.

    The most specific template wins: balanced (needs ``r >= 2`` and ``m >= 1``
    to differ from Lagrange), then the generalized Hermite family with its
    special cases Hermite (``nu = 0..r-1``) and Lagrange (``nu = 0``), then
    scalar type.  For ``r = 1`` the answer is Lagrange.
    """
    if v.order < m:
        raise ValueError(f"filter jet of order {v.order} cannot be classified at order {m}")
    if v.r != r:
        raise ValueError("filter size differs from r")
    e = [v.entry_coeffs(0, q)[:m + 1] for q in range(r)]
    one_m = [Fraction(1)] + [Fraction(0)] * m
    if r == 1:
        return SchemeClass("Lagrange", (0,), fast=e[0] == one_m)
    if m >= 1 and e[0][0] == 1:
        if all(e[q] == _series_mul(e[0], _exp_coeffs(Fraction(q, r), m), m) for q in range(r)):
            linear_phase = e[0] == one_m
            return SchemeClass("Balanced", tuple([0] * r), fast=linear_phase,
                               detail="delta" if linear_phase else "c")
    nu = []
    for q in range(r):
        lead = next((j for j in range(m + 1) if e[q][j] != 0), None)
        if lead is None or e[q][lead] != ipow(lead):
            nu = None
            break
        nu.append(lead)
    if nu is not None and nu[0] == 0:
        template = [[ipow(n) if j == n else Fraction(0) for j in range(m + 1)] for n in nu]
        fast = all(e[q] == template[q] for q in range(r))
        if nu == list(range(r)):
            return SchemeClass("Hermite", tuple(nu), fast=fast, detail=str(r))
        if all(n == 0 for n in nu):
            return SchemeClass("Lagrange", tuple(nu), fast=fast)
        return SchemeClass("GeneralizedHermite", tuple(nu), fast=fast)
    if e[0][0] == 1 and all(all(c == 0 for c in e[q]) for q in range(1, r)):
        return SchemeClass("ScalarType", (0,), fast=e[0] == one_m)
    return SchemeClass("Unclassified")
