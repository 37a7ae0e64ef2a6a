"""Exact rationals, polynomials, enclosures and root isolation."""

from fractions import Fraction

from .interval import (MAX_BITS, Enclosure, decide, enclose_exp, enclose_log, enclose_pi,
                       enclose_sqrt, log_enclosure, round_down, round_up, sqrt_enclosure)
from .poly import (PiecewisePoly, Poly, as_rational, kernel_integral, positive_inside,
                   positive_on)
from .roots import SignError, beta_int, isolate_increasing_root

Rational = Fraction

__all__ = [
    "Rational", "Poly", "PiecewisePoly", "Enclosure", "as_rational", "beta_int",
    "enclose_exp", "enclose_log", "enclose_sqrt", "enclose_pi", "sqrt_enclosure",
    "log_enclosure", "isolate_increasing_root", "SignError", "decide", "MAX_BITS",
    "kernel_integral", "positive_on", "positive_inside", "round_down", "round_up",
]
