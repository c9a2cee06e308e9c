from fractions import Fraction

import pytest
from hypothesis import given

from subdivlab.scalar import GaussianRational, format_scalar, gauss, parse_scalar, to_exact

from conftest import gaussians, small_fractions


@pytest.mark.parametrize("text, value", [
    ("3/4", Fraction(3, 4)),
    ("-2", Fraction(-2)),
    ("i", gauss(0, 1)),
    ("-i", gauss(0, -1)),
    ("1/2-1/3i", gauss(Fraction(1, 2), Fraction(-1, 3))),
    ("7/1080*i", gauss(0, Fraction(7, 1080))),
    ("1+i", gauss(1, 1)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/0x", "i i", "3/"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_gauss_collapses_real():
    assert isinstance(gauss(3, 0), Fraction)


@given(gaussians)
def test_format_parse_round_trip(z):
    assert to_exact(parse_scalar(format_scalar(z))) == to_exact(z)


@given(gaussians, gaussians, gaussians)
def test_field_laws(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x


@given(gaussians)
def test_conjugate_norm(z):
    n = z * z.conjugate()
    assert to_exact(n) == z.re ** 2 + z.im ** 2


@given(small_fractions, small_fractions)
def test_complex_conversion(a, b):
    assert complex(GaussianRational(a, b)) == complex(float(a), float(b))
