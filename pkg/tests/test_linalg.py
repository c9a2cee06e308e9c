from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from subdivlab.linalg import (InconsistentSystemError, SingularMatrixError, charpoly, det, inverse, matmul,
                              nullspace, root_multiplicity, solve, solve_affine, eye)

from conftest import small_fractions


def square(n):
    return st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_float(A):
    assert float(det(A)) == pytest.approx(np.linalg.det(np.array(A, dtype=float)), abs=1e-9)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_or_singular(A):
    if det(A) == 0:
        with pytest.raises(SingularMatrixError):
            inverse(A)
    else:
        assert matmul(A, inverse(A)) == eye(len(A))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.lists(small_fractions, min_size=n,
                                                                          max_size=n))))
def test_solve(args):
    A, b = args
    if det(A) == 0:
        return
    x = solve(A, b)
    assert [sum(a * y for a, y in zip(row, x)) for row in A] == b


@given(st.lists(st.lists(small_fractions, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_annihilates(A):
    ker = nullspace(A)
    assert len(ker) >= 4 - len(A)
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_solve_affine_kernel_and_inconsistency():
    A = [[Fraction(1), Fraction(1)]]
    x, ker = solve_affine(A, [Fraction(2)])
    assert x[0] + x[1] == 2 and len(ker) == 1
    with pytest.raises(InconsistentSystemError):
        solve_affine([[Fraction(1)], [Fraction(1)]], [Fraction(1), Fraction(2)])


def test_charpoly_multiplicity():
    A = [[Fraction(1), Fraction(1), 0], [0, Fraction(1), 0], [0, 0, Fraction(1, 4)]]
    cp = charpoly(A)
    assert root_multiplicity(cp, Fraction(1)) == 2
    assert root_multiplicity(cp, Fraction(1, 4)) == 1
    assert root_multiplicity(cp, Fraction(2)) == 0
