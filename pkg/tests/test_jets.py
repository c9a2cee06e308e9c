import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from subdivlab.jets import BASE_PI, FilterJet, Jet, JetMismatchError, ipow, jet_mul, jet_of, jet_scale_arg, \
    leading_degree
from subdivlab.sequence import MatrixSequence, convolve, difference, symbol_eval, upsample

from conftest import sequences


@given(st.data(), st.integers(0, 4))
def test_jet_of_convolution_is_product(data, m):
    x = data.draw(sequences(rows=2, cols=2, complex_entries=True))
    y = data.draw(sequences(rows=2, cols=1))
    assert jet_of(convolve(x, y), order=m) == jet_mul(jet_of(x, order=m), jet_of(y, order=m))


@given(sequences(rows=2, cols=2), st.integers(0, 3))
def test_upsample_is_argument_doubling(x, m):
    assert jet_of(upsample(x, 2), order=m) == jet_scale_arg(jet_of(x, order=m), 2)


@given(sequences(rows=1, cols=1), st.floats(-0.05, 0.05))
def test_jet_approximates_symbol(x, xi):
    jet = jet_of(x, order=8).entry_coeffs()
    approx = sum(complex(c) * xi ** j for j, c in enumerate(jet))
    assert abs(approx - symbol_eval(x, xi)[0, 0]) < 1e-9 * (1 + max(abs(x.start), abs(x.stop))) ** 9


def test_pi_base_alternates_sign():
    x = MatrixSequence.from_matrices([[[Fraction(1)]], [[Fraction(1)]]], 0)
    assert jet_of(x, BASE_PI, 0).entry_coeffs() == [0]
    assert jet_of(x, order=0).entry_coeffs() == [2]


def test_difference_raises_leading_degree():
    one = MatrixSequence.from_matrices([[[Fraction(1)]]], 0)
    for j in range(4):
        jet = jet_of(difference(one, j), order=5)
        deg, beta = leading_degree(jet, 5)
        assert deg == j and beta == 1


def test_reciprocal():
    f = Jet.from_entries([[[Fraction(2), Fraction(1), Fraction(-1, 3), Fraction(5)]]])
    g = f.reciprocal()
    assert jet_mul(f, g) == Jet.constant([[Fraction(1)]], 3)


def test_monomial_i():
    assert Jet.monomial_i(2, 3).entry_coeffs() == [0, 0, -1, 0]
    assert ipow(3) == -ipow(1)


def test_filter_jet_normalization():
    v = FilterJet.from_entries([[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]])
    assert v.r == 2 and v.value_at_zero() == [2, 0]
    assert v.normalized().value_at_zero()[0] == 1


def test_shape_mismatch():
    a = Jet.identity(2, 1)
    b = Jet.identity(3, 1)
    with pytest.raises(JetMismatchError):
        jet_mul(a, b)
