"""Shared fixtures and hypothesis strategies."""
from __future__ import annotations

import sys

from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from subdivlab.corpus import load_example
from subdivlab.masks import Mask
from subdivlab.normal_form import StronglyInvertible
from subdivlab.scalar import GaussianRational
from subdivlab.sequence import MatrixSequence

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=12)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)


@st.composite
def sequences(draw, rows=None, cols=None, max_len=4, complex_entries=False):
    """Exact matrix sequences with small support."""
    s = rows if rows is not None else draw(st.integers(1, 3))
    r = cols if cols is not None else draw(st.integers(1, 3))
    n = draw(st.integers(1, max_len))
    start = draw(st.integers(-3, 3))
    elem = gaussians if complex_entries else small_fractions
    mats = [[[draw(elem) for _ in range(r)] for _ in range(s)] for _ in range(n)]
    return MatrixSequence.from_matrices(mats, start)


def scalar_mask(values, start=0) -> Mask:
    return Mask.from_matrices([[[Fraction(x)]] for x in values], start)


def shear(c, k):
    """``[[1, c e^{-ik xi}], [0, 1]]``."""
    mats = {0: [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]}
    off = [[Fraction(0), Fraction(c)], [Fraction(0), Fraction(0)]]
    if k == 0:
        mats[0][0][1] = Fraction(c)
    else:
        mats[k] = off
    lo, hi = min(mats), max(mats)
    zero = [[Fraction(0)] * 2 for _ in range(2)]
    seq = MatrixSequence.from_matrices([mats.get(i, zero) for i in range(lo, hi + 1)], lo)
    return StronglyInvertible.from_sequence(seq)


HAAR = [Fraction(1, 2), Fraction(1, 2)]
HAT = [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]
CUBIC = [Fraction(1, 16), Fraction(1, 4), Fraction(3, 8), Fraction(1, 4), Fraction(1, 16)]


@pytest.fixture
def haar():
    return scalar_mask(HAAR)


@pytest.fixture
def hat():
    return scalar_mask(HAT, -1)


@pytest.fixture(scope="session")
def corpus():
    return {eid: load_example(eid) for eid in ("ex1", "ex2a1", "ex2a2", "ex3", "ex4")}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
