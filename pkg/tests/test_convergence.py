import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from subdivlab.convergence import (CONSISTENT, INCONSISTENT, ErrorCurve, convergence_verdict, error_curve,
                                   fit_rate, running_slopes, tau_star_estimate)
from subdivlab.engine import cascade, phi_integer_samples
from subdivlab.errors import DegenerateInputError
from subdivlab.masks import sum_rule_order
from subdivlab.sequence import vector_sequence
from subdivlab.smoothness import generator_basis, sm_report

from conftest import small_fractions


def test_exact_reproduction(corpus):
    a = corpus["ex1"].mask
    v = sum_rule_order(a).filter
    u = phi_integer_samples(a, v, 0)
    curve = error_curve(a, v, u, 6, m=1)
    assert all(e == 0 for e in curve.errors)
    fit = fit_rate(curve)
    assert fit.exact and math.isinf(fit.slope)


@settings(max_examples=15)
@given(small_fractions.filter(lambda c: c != 0))
def test_scale_equivariance(corpus, c):
    case = corpus["ex3"]
    a, v = case.mask, sum_rule_order(case.mask).filter
    u = case.test_vectors["u2"].seq
    base = error_curve(a, v, u, 5, j=0)
    scaled = error_curve(a, v, u.scale(c), 5, j=0)
    assert scaled.beta == c * base.beta
    assert list(scaled.errors) == [abs(c) * e for e in base.errors]


def test_fit_rate_on_synthetic_line():
    ys = tuple(3.0 * n + 1.0 for n in range(1, 11))
    curve = ErrorCurve(0, 1, tuple(range(1, 11)), tuple(2.0 ** -y for y in ys), ys)
    assert fit_rate(curve, 5).slope == pytest.approx(3.0)
    assert running_slopes(curve)[0] is None
    assert running_slopes(curve)[1:] == pytest.approx([3.0] * 9)
    with pytest.raises(ValueError):
        fit_rate(curve, 2)


def test_derivative_order_from_leading_degree(corpus):
    case = corpus["ex2a2"]
    a, v = case.mask, sum_rule_order(case.mask).filter
    assert error_curve(a, v, case.test_vectors["u4"].seq, 3, m=4).deriv == 2
    assert error_curve(a, v, case.test_vectors["u1"].seq, 3, m=4).deriv == 0


def test_missing_leading_term_rejected(corpus):
    case = corpus["ex3"]
    a, v = case.mask, sum_rule_order(case.mask).filter
    with pytest.raises(DegenerateInputError):
        error_curve(a, v, case.test_vectors["u3"].seq, 3, j=0, m=4)


def test_tau_star_matches_bracket(corpus):
    a = corpus["ex3"].mask
    rep = sm_report(a)
    u = generator_basis(rep.filter, rep.sr).members[0]
    est = tau_star_estimate(cascade(a, u, 13), 2, tail=4)
    lo, hi = rep.sm_inf_bracket
    assert lo - 0.15 <= est.tau <= hi + 0.15


def test_verdicts(corpus):
    a = corpus["ex3"].mask
    rep = sm_report(a)
    basis = generator_basis(rep.filter, 4)
    assert convergence_verdict(a, rep.filter, basis, 4, 10, rep).verdict == CONSISTENT
    b = corpus["ex1"].mask
    rep = sm_report(b)
    v = rep.filter
    assert convergence_verdict(b, v, generator_basis(v, 2), 2, 8, rep).verdict == INCONSISTENT
