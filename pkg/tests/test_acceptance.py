"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in ``RESULTS`` and printed by the terminal-summary
hook in ``conftest.py``; each test also prints its own line.
"""
from __future__ import annotations

import math
import subprocess
import sys
import time
import warnings
from fractions import Fraction

import pytest

from subdivlab.convergence import error_curve, fit_rate
from subdivlab.corpus import load_example
from subdivlab.engine import dyadic_values, limit_function_samples, phi_integer_samples, transition_matrix, \
    transition_step
from subdivlab.jets import FilterJet, Jet, jet_mul, jet_of
from subdivlab.masks import FilterWarning, matching_filter_moments, sum_rule_order
from subdivlab.normal_form import build_U1, seq_det
from subdivlab.report import moment_identity_holds, spectrum_matches
from subdivlab.smoothness import rho_j, sm_report

RESULTS: dict = {}

FIGURE_CASES = [("ex2a2", {"t1": "1", "t2": "-1"}), ("ex3", None), ("ex4", None)]


def record(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


def test_01_transition_spectra():
    cases = [("ex1", None), ("ex1", {"t1": "1/32", "t2": "1/4"}), ("ex2a1", None), ("ex2a2", None)]
    worst, slowest, ok = 0.0, 0.0, True
    for eid, params in cases:
        case = load_example(eid, params)
        t0 = time.perf_counter()
        eigs = list(transition_matrix(case.mask).eigenvalues())
        slowest = max(slowest, time.perf_counter() - t0)
        good, dev = spectrum_matches(eigs, case.expected["transition_eigen_exponents"], 1e-8)
        ok &= good
        worst = max(worst, dev)
    ok &= slowest < 1.0
    record(1, "transition spectra", ok, f"max deviation {worst:.2e} (tol 1e-8), slowest {slowest:.3f} s (< 1 s)")


def test_02_sum_rule_orders():
    cases = [("ex1", None, 4), ("ex2a1", None, 8), ("ex2a2", None, 8), ("ex3", {"t2": "-13/512"}, 5),
             ("ex3", {"t2": "-7/256"}, 6)]
    got = {}
    ok = True
    for eid, params, want in cases:
        sr = sum_rule_order(load_example(eid, params).mask).order
        got[f"{eid}{'' if params is None else params['t2']}"] = sr
        ok &= sr == want
    sr4 = sum_rule_order(load_example("ex4").mask).order
    got["ex4"] = sr4
    ok &= sr4 >= 4
    record(2, "sum-rule orders", ok, ", ".join(f"{k}={v}" for k, v in got.items()))


def test_03_matching_filter_jets():
    cases = [("ex1", None), ("ex2a1", None), ("ex2a2", None), ("ex3", None), ("ex3", {"t2": "-7/256"}),
             ("ex4", None)]
    ok, orders = True, []
    for eid, params in cases:
        case = load_example(eid, params)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", FilterWarning)
            got = matching_filter_moments(case.mask, case.filter.order)
        ok &= got == case.filter
        orders.append(f"{eid}:{case.filter.order}")
    record(3, "matching-filter jets", ok, "exact through printed order " + ", ".join(orders))


def test_04_sm2_estimates():
    want = {"ex1": 1.5, "ex2a1": 3.5, "ex2a2": 5.5, "ex3": 4.5335, "ex4": 3.8853}
    ok, parts, slowest = True, [], 0.0
    for eid, target in want.items():
        t0 = time.perf_counter()
        rep = sm_report(load_example(eid).mask, 18)
        slowest = max(slowest, time.perf_counter() - t0)
        ok &= abs(rep.sm2 - target) <= 0.05
        parts.append(f"{eid}={rep.sm2:.4f}")
    ok &= slowest < 60
    record(4, "sm2 estimates", ok, ", ".join(parts) + f" (tol 0.05, slowest {slowest:.2f} s)")


def test_05_figure_reproduction():
    t0 = time.perf_counter()
    worst, count, ok = 0.0, 0, True
    for eid, params in FIGURE_CASES:
        case = load_example(eid, params)
        v = sum_rule_order(case.mask).filter
        m = sm_report(case.mask).default_order
        for name, ref in case.figure_curves().items():
            curve = error_curve(case.mask, v, case.test_vectors[name].seq, 10, m=m)
            dev = max(abs(x - y) for x, y in zip(curve.neg_log2, ref))
            worst = max(worst, dev)
            count += len(ref)
            ok &= dev <= 0.05
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 120 and count > 0
    record(5, "figure reproduction", ok, f"{count} coordinates, max deviation {worst:.2e} (tol 0.05), "
                                         f"{elapsed:.2f} s (< 120 s)")


def test_06_rate_law():
    want = [("ex2a2", {"t1": "1", "t2": "-1"}, {"u1": 2, "u2": 4, "u3": 5, "u4": 2, "u5": 3}),
            ("ex3", None, {"u1": 4})]
    ok, parts = True, []
    for eid, params, slopes in want:
        case = load_example(eid, params)
        v = sum_rule_order(case.mask).filter
        m = sm_report(case.mask).default_order
        for name, target in slopes.items():
            fit = fit_rate(error_curve(case.mask, v, case.test_vectors[name].seq, 16, m=m), 5)
            ok &= abs(fit.slope - target) <= 0.15
            parts.append(f"{eid}/{name}={fit.slope:.3f}")
    record(6, "rate law", ok, ", ".join(parts) + " (tol 0.15, fit over levels 12-16)")


def test_07_spline_oracles():
    ok, checked = True, 0
    for eid in ("ex1", "ex2a1", "ex2a2"):
        case = load_example(eid)
        v = sum_rule_order(case.mask).filter
        lo, hi = case.spline.support
        for j in case.spline.derivatives:
            for n in range(7):
                d = dyadic_values(case.mask, v, j, n)
                scale = 1 << n
                for k in range(int(lo * scale), int(hi * scale) + 1):
                    x = Fraction(k, scale)
                    ok &= list(d.at_index(k)) == case.spline(x, j)
                    checked += 1
    record(7, "spline-oracle equivalence", ok, f"{checked} exact grid comparisons, levels 0-6")


def test_08_moment_identities():
    total, good = 0, 0
    for eid, params in FIGURE_CASES:
        case = load_example(eid, params)
        v = sum_rule_order(case.mask).filter
        for tv in case.test_vectors.values():
            total += 1
            good += moment_identity_holds(v, tv.seq, tv.degree, tv.order)
    record(8, "moment identities", good == total and total >= 10,
           f"{good}/{total} exact (the corpus records twelve identities)")


def _property_nesting(case, v):
    coarse, fine = dyadic_values(case.mask, v, 0, 3), dyadic_values(case.mask, v, 0, 4)
    lo, hi = coarse.values.support
    return all(coarse.at_index(k) == fine.at_index(2 * k) for k in range(lo, hi + 1))


def _property_eigen(case, v, sr):
    T = transition_matrix(case.mask)
    ok = True
    for j in range(sr):
        lam = Fraction(1, 2 ** j)
        if T.algebraic_multiplicity(lam) != 1:
            continue
        u = phi_integer_samples(case.mask, v, j)
        ok &= transition_step(case.mask, u) == u.scale(lam)
    return ok


def _property_polynomials(case, v, sr):
    from subdivlab.normal_form import _realize
    from subdivlab.sequence import MatrixSequence, hstack
    a = case.mask
    vs = hstack([_realize(v.entry_coeffs(0, q)[:sr], sr - 1) for q in range(a.r)])
    lo, hi = a.support
    M, n = 5, 2
    scale = 1 << n
    for d in range(sr):
        rows = []
        for k in range(-M, M + 1):
            acc = [sum((Fraction(k - l) ** d * vs[l][0][q] for l in range(vs.start, vs.stop + 1)), Fraction(0))
                   for q in range(a.r)]
            rows.append([acc])
        s = limit_function_samples(a, v, MatrixSequence.from_matrices(rows, -M), 0, n)
        if any(s.at_index(k) != [Fraction(k, scale) ** d] for k in range((hi - M) * scale, (M + lo) * scale + 1)):
            return False
    return True


def _property_filter_independence():
    from subdivlab.linalg import eye, matscale, matsub, nullspace, transpose
    from subdivlab.masks import BASE_ZERO, _filter_to_w, _real_moments, _recursion_step, _w_to_filter
    a = load_example("ex1").mask
    res = sum_rule_order(a)
    alpha = _real_moments(a.seq, 3, BASE_ZERO)
    ws = _filter_to_w(res.filter)
    ell = nullspace(transpose(matsub(matscale(4, alpha[0]), eye(2))))[0]
    ws2 = ws[:2] + [[x + y for x, y in zip(ws[2], ell)]]
    ws2.append(_recursion_step(ws2, alpha, 3, 2))
    values = [rho_j(a, res.filter, 4).log2_rho] + [rho_j(a, _w_to_filter(ws2, 2), k).log2_rho for k in (2, 3, 4)]
    return max(values) - min(values)


def _property_normal_form(v, m):
    U = build_U1(v, m)
    d = seq_det(U.U)
    unit = Jet.constant([[Fraction(int(q == 0)) for q in range(v.r)]], m)
    return len(d) == 1 and d[d.start][0][0] == 1 and jet_mul(v.truncate(m), jet_of(U.U, order=m)) == unit


def _property_rhoj(case, v, sr):
    top = rho_j(case.mask, v, sr, n_max=40).log2_rho
    return max(abs(rho_j(case.mask, v, j, n_max=40).log2_rho - max(0.5 - j, top)) for j in range(sr))


def test_09_property_suite():
    parts, ok = [], True
    nest = eig = poly = nf = True
    rhoj_dev = 0.0
    for eid in ("ex1", "ex2a1", "ex2a2", "ex3", "ex4"):
        case = load_example(eid)
        res = sum_rule_order(case.mask)
        nest &= _property_nesting(case, res.filter)
        eig &= _property_eigen(case, res.filter, res.order)
        if eid in ("ex1", "ex2a2", "ex3"):
            poly &= _property_polynomials(case, res.filter, res.order)
        nf &= _property_normal_form(res.filter, res.order - 1)
        rhoj_dev = max(rhoj_dev, _property_rhoj(case, res.filter, res.order))
    spread = _property_filter_independence()
    ok = nest and eig and poly and nf and spread <= 1e-3 and rhoj_dev <= 0.05
    parts = [f"nesting={nest}", f"eigen-identity={eig}", f"polynomial reproduction={poly}",
             f"filter independence spread={spread:.1e}", f"normal form={nf}", f"rho_j law deviation={rhoj_dev:.3f}"]
    record(9, "property suite", ok, ", ".join(parts))


def test_10_cli_golden_files():
    from cli_cases import GOLDEN, cases
    selected = [c for c in cases() if c[1][0] in ("analyze", "rates")]
    ok = True
    for fname, argv in selected:
        outs = [subprocess.run([sys.executable, "-m", "subdivlab", *argv], capture_output=True, check=True).stdout
                for _ in range(2)]
        ok &= outs[0] == outs[1] == (GOLDEN / fname).read_bytes()
    record(10, "CLI golden files", ok, f"{len(selected)} analyze/rates outputs byte-identical over two runs "
                                       "and equal to the golden files")
