"""Exact-sign bisection for increasing functions, and the Beta integral."""

from fractions import Fraction
from math import factorial
from typing import Callable

from .interval import Enclosure
from .poly import as_rational


class SignError(ValueError):
    """Bracket endpoints do not have the required signs."""


def isolate_increasing_root(f: Callable[[Fraction], Fraction], lo, hi, width) -> Enclosure:
    """Bisect [lo, hi] until b - a <= width, keeping f(a) <= 0 <= f(b).

    f must be evaluated exactly (rational in, rational out) and be increasing
    on the bracket. An exact zero found on the way collapses the enclosure.
    """
    a, b, width = as_rational(lo), as_rational(hi), as_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    fa, fb = f(a), f(b)
    if fa > 0 or fb < 0:
        raise SignError("need f(lo) <= 0 <= f(hi), got f(%s)=%s, f(%s)=%s" % (a, fa, b, fb))
    if fa == 0:
        return Enclosure(a, a)
    if fb == 0:
        return Enclosure(b, b)
    while b - a > width:
        m = (a + b) / 2
        fm = f(m)
        if fm == 0:
            return Enclosure(m, m)
        if fm < 0:
            a = m
        else:
            b = m
    return Enclosure(a, b)


def beta_int(a: int, b: int) -> Fraction:
    """B(a, b) = (a-1)!(b-1)!/(a+b-1)! for positive integers."""
    if not (isinstance(a, int) and isinstance(b, int)) or a < 1 or b < 1:
        raise ValueError("beta_int needs positive integers, got (%r, %r)" % (a, b))
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))
