from fractions import Fraction

import mpmath
import pytest

mpmath.mp.dps = 60


def mp_of(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def frac_of(x) -> Fraction:
    """Exact rational from an mpf (its binary value)."""
    x = mpmath.mpf(x)
    m, e = x.man_exp
    v = Fraction(int(m)) * Fraction(2) ** int(e)
    return -v if x < 0 else v


@pytest.fixture
def mp():
    return mpmath
