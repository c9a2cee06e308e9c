"""Assembled analyses: the mask report and the corpus reproduction checks.

Everything here is deterministic.  Floats are rounded to 12 significant
digits before serialization so reports are byte-stable.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .convergence import convergence_verdict, error_curve, fit_rate
from .corpus import ExampleCase
from .engine import dyadic_values, transition_matrix
from .errors import AnalysisError
from .jets import FilterJet, Jet, jet_mul, jet_of
from .masks import (FilterWarning, Mask, classify_scheme, matching_filter_moments, spectral_report,
                    sum_rule_order, verify_matching_filter)
from .maskio import filter_to_document
from .smoothness import DEFAULT_LEVELS, generator_basis, sm_report

__all__ = ["round_float", "complex_pair", "analysis_report", "CheckResult", "reproduce_example",
           "moment_identity_holds", "spectrum_matches", "SPECTRUM_TOL", "SM2_TOL", "FIGURE_TOL",
           "SLOPE_TOL"]

SPECTRUM_TOL = 1e-8
SM2_TOL = 0.05
FIGURE_TOL = 0.05
SLOPE_TOL = 0.15


def round_float(x: float, digits: int = 12):
    if math.isinf(x) or math.isnan(x):
        return str(x)
    if abs(x) < 1e-12:
        return 0.0
    return float(f"{x:.{digits}g}")


def complex_pair(z: complex):
    return [round_float(z.real), round_float(z.imag)]


class AnalysisFailure(AnalysisError):
    """Analysis stopped; ``report`` holds what was computed before the failure."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def analysis_report(mask: Mask, v: Optional[FilterJet] = None, order: Optional[int] = None,
                    levels: int = DEFAULT_LEVELS) -> dict:
    """Full analysis of a mask as a JSON-ready dict.

    Raises :class:`AnalysisFailure` (carrying the partial report) when the
    eigenvalue-1 condition fails or a later stage cannot run.
    """
    rep: Dict[str, object] = {"r": mask.r, "support": list(mask.support)}
    diags: List[str] = []
    rep["diagnostics"] = diags
    spec = spectral_report(mask)
    rep["spectral"] = {
        "eigenvalues": [complex_pair(z) for z in spec.eigenvalues],
        "unit_multiplicity": spec.unit_multiplicity,
        "unit_geometric": spec.unit_geometric,
        "dyadic_eigenvalue_exponents": list(spec.dyadic_eigenvalues),
        "other_radius": round_float(spec.other_radius),
        "m_tilde": spec.m_tilde,
        "cond_a0": spec.cond_a0,
        "tolerance": spec.tolerance,
    }
    if not spec.cond_a0:
        raise AnalysisFailure("cond_a0 fails: the eigenvalue 1 of a(0)^ must be simple and no 2^k "
                              "(k >= 1) may be an eigenvalue", rep)
    res = sum_rule_order(mask)
    rep["sr"] = res.order
    rep["sr_capped"] = res.capped
    m = res.order - 1 if order is None else order
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", FilterWarning)
        if v is None:
            if m < 0:
                filt = matching_filter_moments(mask, 0)
            elif m <= res.filter.order:
                filt = res.filter.truncate(m)
            else:
                filt = matching_filter_moments(mask, m)
        else:
            filt = v
            ok, bad = verify_matching_filter(mask, v)
            if not ok:
                diags.append(f"supplied filter fails the matching identity at order {bad}")
    diags.extend(str(w.message) for w in caught)
    rep["filter"] = {"order": filt.order, **filter_to_document(filt)}
    cm = min(max(m, 0), filt.order)
    cls = classify_scheme(filt, mask.r, cm)
    rep["classification"] = {"order": cm, "tag": cls.tag, "label": cls.label(), "nu": list(cls.nu),
                             "fast": cls.fast}
    T = transition_matrix(mask)
    rep["transition"] = {"window": list(T.window), "dimension": T.dim,
                         "eigenvalues": [complex_pair(z) for z in T.eigenvalues()],
                         "tolerance": SPECTRUM_TOL}
    if res.order < 1:
        diags.append("no sum rules: smoothness exponents are undefined")
        return rep
    sm = sm_report(mask, levels)
    rep["smoothness"] = {
        "levels": levels,
        "rho2": round_float(sm.rho2.rho),
        "log2_rho2": round_float(sm.rho2.log2_rho),
        "sm2": round_float(sm.sm2),
        "sm_inf_bracket": [round_float(x) for x in sm.sm_inf_bracket],
        "tolerance": round_float(sm.tolerance),
    }
    diags.extend(sm.notes)
    return rep


# ----------------------------------------------------------------------
# corpus reproduction


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self):
        return {"name": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


def spectrum_matches(eigs, exponents, tol: float = SPECTRUM_TOL):
    """Compare sorted eigenvalues with ``{2^-e}``; returns ``(ok, max deviation)``."""
    target = sorted((2.0 ** -e for e in exponents), reverse=True)
    got = sorted(eigs, key=lambda z: (-abs(z), -z.real))
    if len(got) != len(target):
        return False, math.inf
    dev = max(abs(g - t) for g, t in zip(got, target))
    return dev <= tol, dev


def moment_identity_holds(v: FilterJet, u, degree: int, order: int) -> bool:
    """Exact check of ``v^ u^ = (i xi)^degree + O(xi^order)``."""
    jet = jet_mul(v.truncate(order - 1), jet_of(u, order=order - 1))
    return jet == Jet.monomial_i(degree, order - 1)


def reproduce_example(case: ExampleCase, spline_levels: int = 6, curve_levels: int = 10,
                      rate_levels: int = 16, sm_levels: int = DEFAULT_LEVELS, curves_out=None) -> List[CheckResult]:
    """Run every recorded expectation of a corpus case.

    ``curves_out``, when given, is a dict that receives the computed error
    curves by test-vector name.
    """
    out: List[CheckResult] = []
    exp = case.expected
    a = case.mask

    def add(name, ok, detail):
        out.append(CheckResult(name, bool(ok), detail))

    exps = exp.get("transition_eigen_exponents")
    if exps:
        ok, dev = spectrum_matches(list(transition_matrix(a).eigenvalues()), exps)
        add("transition_spectrum", ok, f"max deviation {dev:.3e} (tolerance {SPECTRUM_TOL:g})")

    res = sum_rule_order(a)
    want = case.expected_sr()
    if want is not None:
        add("sum_rule_order", res.order == want, f"sr = {res.order}, expected {want}")
    elif "sr_min" in exp:
        add("sum_rule_order", res.order >= exp["sr_min"], f"sr = {res.order}, expected >= {exp['sr_min']}")

    if case.filter is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", FilterWarning)
            try:
                got = matching_filter_moments(a, case.filter.order)
                add("filter_jets", got == case.filter, f"recursion through order {case.filter.order}")
            except AnalysisError as exc:
                add("filter_jets", False, str(exc))

    cl = exp.get("classification")
    if cl and res.order - 1 >= cl["m"]:
        sc = classify_scheme(res.filter, a.r, cl["m"])
        ok = sc.tag == cl["tag"] and ("fast" not in cl or sc.fast == cl["fast"])
        add("classification", ok, f"{sc.label()} (fast={sc.fast}) at order {cl['m']}, expected {cl['tag']}")

    sm = None
    if res.order >= 1:
        sm = sm_report(a, sm_levels)
        if "sm2" in exp and case.at_defaults:
            add("sm2", abs(sm.sm2 - exp["sm2"]) <= SM2_TOL,
                f"sm2 = {sm.sm2:.6f}, expected {exp['sm2']} +- {SM2_TOL}")

    if case.spline is not None:
        lo, hi = case.spline.support
        for j in case.spline.derivatives:
            try:
                d = dyadic_values(a, res.filter, j, spline_levels)
                scale = 1 << spline_levels
                grid = range(int(lo * scale), int(hi * scale) + 1)
                ok = all(list(d.at_index(k)) == case.spline(Fraction(k, scale), j) for k in grid)
                add(f"spline_oracle_j{j}", ok, f"exact agreement on the level-{spline_levels} grid")
            except AnalysisError as exc:
                add(f"spline_oracle_j{j}", False, str(exc))

    for name, tv in case.test_vectors.items():
        ok = moment_identity_holds(res.filter, tv.seq, tv.degree, tv.order) if res.filter.order >= tv.order - 1 \
            else False
        add(f"moment_identity_{name}", ok, f"v^ u^ = (i xi)^{tv.degree} + O(xi^{tv.order})")

    figures = case.figure_curves()
    slopes = case.expected_slopes()
    if (figures or slopes) and sm is not None:
        m = sm.default_order
        for name, tv in case.test_vectors.items():
            if name not in figures and name not in slopes:
                continue
            n_max = max(curve_levels, rate_levels if name in slopes else 0)
            curve = error_curve(a, res.filter, tv.seq, n_max, m=m)
            if curves_out is not None:
                curves_out[name] = curve
            if name in figures:
                ref = figures[name]
                dev = max(abs(x - y) for x, y in zip(curve.neg_log2, ref))
                add(f"figure_{name}", dev <= FIGURE_TOL, f"max |-log2 E - figure| = {dev:.2e} over n=1..{len(ref)}")
            if name in slopes:
                cut = error_curve(a, res.filter, tv.seq, rate_levels, m=m) if n_max != rate_levels else curve
                fit = fit_rate(cut, 5)
                add(f"rate_{name}", abs(fit.slope - slopes[name]) <= SLOPE_TOL,
                    f"tail slope {fit.slope:.4f}, expected {slopes[name]} +- {SLOPE_TOL}")

    vm = exp.get("verdict_m")
    if vm is not None and case.at_defaults and sm is not None and res.order >= vm:
        filt = res.filter
        basis = generator_basis(filt, vm)
        verdict = convergence_verdict(a, filt, basis, vm, 10, sm)
        add("convergence_verdict", verdict.verdict == "consistent-with-C^m-convergence",
            f"{verdict.verdict} for m = {vm}")
    return out
