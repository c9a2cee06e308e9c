import math
from fractions import Fraction

import pytest

from subdivlab.jets import FilterJet
from subdivlab.linalg import eye, matscale, matsub, nullspace, transpose
from subdivlab.masks import (BASE_ZERO, _real_moments, _recursion_step, _filter_to_w, _w_to_filter,
                             sum_rule_order, verify_matching_filter, verify_sum_rules)
from subdivlab.normal_form import similarity_transform
from subdivlab.smoothness import generator_basis, log2_exact, rho_estimate, rho_j, sm_report

from conftest import CUBIC, HAAR, HAT, scalar_mask, shear

SM2 = {"ex1": 1.5, "ex2a1": 3.5, "ex2a2": 5.5, "ex3": 4.5335, "ex4": 3.8853}


@pytest.mark.parametrize("values, start, sm2", [(HAAR, 0, 0.5), (HAT, -1, 1.5), (CUBIC, -2, 3.5)])
def test_bspline_sobolev_exponent(values, start, sm2):
    rep = sm_report(scalar_mask(values, start))
    assert rep.sm2 == pytest.approx(sm2, abs=1e-6)
    assert rep.sm_inf_bracket == pytest.approx((sm2 - 0.5, sm2))


def test_haar_sup_norm_rate(haar):
    basis = generator_basis(sum_rule_order(haar).filter, 1)
    est = rho_estimate(haar, basis, math.inf, 10)
    assert est.log2_rho == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("eid", list(SM2))
def test_generator_basis_annihilates_moments(corpus, eid):
    res = sum_rule_order(corpus[eid].mask)
    for j in range(res.order + 1):
        assert generator_basis(res.filter, j).check()


@pytest.mark.parametrize("eid", list(SM2))
def test_rho_j_law(corpus, eid):
    """``rho_j = max(2^{1/2 - j}, rho_sr)`` for ``j < sr`` at ``p = 2``."""
    a = corpus[eid].mask
    res = sum_rule_order(a)
    top = rho_j(a, res.filter, res.order, n_max=40).log2_rho
    for j in range(res.order):
        got = rho_j(a, res.filter, j, n_max=40).log2_rho
        assert got == pytest.approx(max(0.5 - j, top), abs=0.05)


def _alternative_ex1_filter(a, v):
    """A matching filter of ``ex1`` differing from ``v`` in the free second moment."""
    alpha = _real_moments(a.seq, 3, BASE_ZERO)
    ws = _filter_to_w(v)
    ell = nullspace(transpose(matsub(matscale(4, alpha[0]), eye(2))))[0]
    ws2 = ws[:2] + [[x + y for x, y in zip(ws[2], ell)]]
    ws2.append(_recursion_step(ws2, alpha, 3, 2))
    return _w_to_filter(ws2, 2)


def test_rho_independent_of_matching_filter(corpus):
    a = corpus["ex1"].mask
    res = sum_rule_order(a)
    v2 = _alternative_ex1_filter(a, res.filter)
    assert verify_matching_filter(a, v2)[0]
    assert verify_sum_rules(a, v2, 2) and not verify_sum_rules(a, v2, 3)
    sm_default = 0.5 - rho_j(a, res.filter, res.order).log2_rho
    for k in (2, 3, 4):
        assert 0.5 - rho_j(a, v2, k).log2_rho == pytest.approx(sm_default, abs=1e-3)


@pytest.mark.parametrize("eid", ["ex1", "ex3"])
def test_sm2_invariant_under_similarity(corpus, eid):
    a = corpus[eid].mask
    b = similarity_transform(a, shear(Fraction(1, 3), 1))
    assert sm_report(b).sm2 == pytest.approx(sm_report(a).sm2, abs=1e-3)


@pytest.mark.parametrize("eid", list(SM2))
def test_sup_norm_estimate_within_bracket(corpus, eid):
    rep = sm_report(corpus[eid].mask, p_inf_levels=12)
    sm_inf = -rep.rho_inf.log2_rho
    lo, hi = rep.sm_inf_bracket
    assert lo - 0.1 <= sm_inf <= hi + 0.1


def test_default_order_and_floor(corpus):
    rep = sm_report(corpus["ex3"].mask)
    assert rep.default_order == 4 and rep.bracket_floor == 4
    rep = sm_report(corpus["ex1"].mask)
    assert rep.default_order == 1 and rep.bracket_floor == 1


def test_log2_exact_huge():
    assert log2_exact(Fraction(3, 1 << 4000)) == pytest.approx(math.log2(3) - 4000)
    with pytest.raises(ValueError):
        log2_exact(Fraction(0))
