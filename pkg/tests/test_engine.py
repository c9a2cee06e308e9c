from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from subdivlab.engine import (cascade, dyadic_values, iterate, limit_function_samples, phi_integer_samples,
                              subdivide_step, transition_matrix, transition_step)
from subdivlab.errors import AmbiguousEigenvectorError, AnalysisError, ResourceLimitError
from subdivlab.jets import FilterJet
from subdivlab.masks import Mask, sum_rule_order
from subdivlab.normal_form import _realize
from subdivlab.sequence import MatrixSequence, convolve, delta, hstack, vector_sequence

from conftest import HAAR, HAT, scalar_mask, sequences

CORPUS_IDS = ["ex1", "ex2a1", "ex2a2", "ex3", "ex4"]


def test_haar_samples(haar):
    """The box function jumps at 1, so its integer samples are not determined by ``T_a``."""
    v = sum_rule_order(haar).filter
    with pytest.raises(AmbiguousEigenvectorError):
        phi_integer_samples(haar, v, 0)
    d = dyadic_values(haar, v, 0, 4, seed=delta(1))
    assert [d.at_index(k)[0] for k in range(-1, 18)] == [0] + [1] * 16 + [0, 0]


def test_hat_samples(hat):
    v = sum_rule_order(hat).filter
    d = dyadic_values(hat, v, 0, 5)
    for x, vals in d.grid(-40, 40):
        assert vals[0] == max(Fraction(0), 1 - abs(x))


def test_hat_derivative_is_ambiguous(hat):
    v = sum_rule_order(hat).filter
    with pytest.raises(AmbiguousEigenvectorError):
        dyadic_values(hat, v, 1, 3)


def test_subdivision_of_delta_is_scaled_mask(corpus):
    a = corpus["ex3"].mask
    assert subdivide_step(a, delta(2)) == a.seq.scale(2)


def test_transition_step_matches_matrix(corpus):
    a = corpus["ex1"].mask
    T = transition_matrix(a)
    u = vector_sequence([[Fraction(1), Fraction(2)], [Fraction(-1), Fraction(3)], [Fraction(5), 0]], -1)
    assert T.apply(u) == transition_step(a, u)


@pytest.mark.parametrize("eid", CORPUS_IDS)
def test_eigen_identity(corpus, eid):
    a = corpus[eid].mask
    res = sum_rule_order(a)
    T = transition_matrix(a)
    for j in range(min(res.order, 5)):
        lam = Fraction(1, 2 ** j)
        if T.algebraic_multiplicity(lam) != 1:
            with pytest.raises(AnalysisError):
                phi_integer_samples(a, res.filter, j)
            continue
        u = phi_integer_samples(a, res.filter, j)
        assert transition_step(a, u) == u.scale(lam)
        assert T.apply(u) == u.scale(lam)


@pytest.mark.parametrize("eid", CORPUS_IDS)
def test_refinement_nesting(corpus, eid):
    a = corpus[eid].mask
    v = sum_rule_order(a).filter
    coarse = dyadic_values(a, v, 0, 3)
    fine = dyadic_values(a, v, 0, 4)
    lo, hi = coarse.values.support
    for k in range(lo - 1, hi + 2):
        assert coarse.at_index(k) == fine.at_index(2 * k)


@pytest.mark.parametrize("eid", CORPUS_IDS)
def test_cascade_matches_matrix_iterate(corpus, eid):
    case = corpus[eid]
    a = case.mask
    u = next(iter(case.test_vectors.values())).seq if case.test_vectors else delta(a.r).column(0)
    levels = cascade(a, u, 4)
    for n in range(5):
        assert levels[n] == convolve(iterate(a, delta(a.r), n).seq, u)


@given(st.data())
def test_subdivision_is_linear(data):
    a = scalar_mask(HAT, -1)
    w1 = data.draw(sequences(rows=1, cols=1))
    w2 = data.draw(sequences(rows=1, cols=1))
    assert subdivide_step(a, w1 + w2) == subdivide_step(a, w1) + subdivide_step(a, w2)


def _filter_sequence(v: FilterJet, m: int) -> MatrixSequence:
    return hstack([_realize(v.entry_coeffs(0, q)[:m + 1], m) for q in range(v.r)])


@pytest.mark.parametrize("eid", ["ex1", "ex2a2", "ex3"])
def test_polynomial_reproduction(corpus, eid):
    """``sum_k (p * v)(k) phi(. - k) = p`` for polynomials of degree below ``sr``."""
    a = corpus[eid].mask
    res = sum_rule_order(a)
    v = res.filter
    vs = _filter_sequence(v, res.order - 1)
    lo, hi = a.support
    M, n = 6, 3
    for d in range(res.order):
        rows = []
        for k in range(-M, M + 1):
            acc = [Fraction(0)] * a.r
            for l in range(vs.start, vs.stop + 1):
                for q in range(a.r):
                    acc[q] += Fraction(k - l) ** d * vs[l][0][q]
            rows.append([acc])
        w0 = MatrixSequence.from_matrices(rows, -M)
        samples = limit_function_samples(a, v, w0, 0, n)
        scale = 1 << n
        for k in range((-M + hi) * scale, (M + lo) * scale + 1):
            assert samples.at_index(k) == [Fraction(k, scale) ** d]


def test_limit_samples_with_delta_row_equal_dyadic_values(corpus):
    a = corpus["ex1"].mask
    v = sum_rule_order(a).filter
    d = dyadic_values(a, v, 0, 3)
    row = MatrixSequence.from_matrices([[[Fraction(1), Fraction(0)]]], 0)
    ls = limit_function_samples(a, v, row, 0, 3)
    for k in range(-8, 9):
        assert ls.at_index(k) == [d.at_index(k)[0]]


def test_window_restriction(corpus):
    a = corpus["ex1"].mask
    v = sum_rule_order(a).filter
    ls = limit_function_samples(a, v, delta(2), 0, 3, window=0)
    assert ls.values.support == (0, 0)


def test_ambiguous_eigenvector():
    a = Mask.from_matrices([[[Fraction(1, 2), 0], [0, Fraction(1, 2)]]])
    with pytest.raises(AmbiguousEigenvectorError):
        phi_integer_samples(a, FilterJet.from_entries([[1], [0]]), 0)


def test_resource_guard(monkeypatch, hat):
    monkeypatch.setenv("SUBDIVLAB_MAX_LEVEL", "3")
    iterate(hat, delta(1), 3)
    with pytest.raises(ResourceLimitError):
        iterate(hat, delta(1), 4)
    with pytest.raises(ResourceLimitError):
        cascade(hat, delta(1), 4)
