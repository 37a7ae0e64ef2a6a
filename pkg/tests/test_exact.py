from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import frac_of, mp_of
from fano_gap.exact import (Enclosure, PiecewisePoly, Poly, SignError, beta_int, decide,
                            enclose_exp, enclose_log, enclose_pi, enclose_sqrt,
                            isolate_increasing_root, kernel_integral, positive_inside, positive_on)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=1000)
coeff_lists = st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=20), max_size=13)


def test_poly_basics():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly([0, 0]).is_zero()
    q = Poly([-1, 1]) ** 3
    assert q == Poly([-1, 3, -3, 1])
    assert q(Fraction(1)) == 0
    assert (p * q).degree == 4
    assert p.shift(1) == Poly([3, 2])
    assert Poly([0, 0, 1]).compose(Poly([1, 1])) == Poly([1, 2, 1])


def test_bernstein_positivity():
    p = Poly([-1, 0, 1])  # x^2 - 1
    assert positive_on(p, 2, 5)
    assert not positive_on(p, 0, 2)
    assert positive_inside(Poly([0, 0, 1]) * Poly([1, -1]), 0, 1)  # x^2 (1 - x)


def test_kernel_integral_matches_direct():
    # int_0^x (2 - z)(x - z)^2 dz = (2/3)x^3 - x^4/12
    got = kernel_integral(Poly([2, -1]), 2, Poly(), Poly.x())
    assert got == Poly([0, 0, 0, Fraction(2, 3), Fraction(-1, 12)])


@settings(max_examples=200, deadline=None)
@given(coeff_lists)
def test_derivative_of_antiderivative(cs):
    p = Poly(cs)
    assert p.antiderivative().derivative() == p


def test_piecewise_continuity_and_right_piece():
    with pytest.raises(ValueError):
        PiecewisePoly([(0, Poly([0, 1])), (1, Poly([5]))])
    with pytest.raises(ValueError):
        PiecewisePoly([(1, Poly([0]))])
    with pytest.raises(ValueError):
        PiecewisePoly([(0, Poly([0])), (0, Poly([0]))])
    f = PiecewisePoly([(0, Poly([0, 1])), (1, Poly([1]))])
    d = f.derivative()
    assert d(Fraction(1)) == 0  # right piece at the breakpoint
    assert d(Fraction(1, 2)) == 1
    F = f.antiderivative()
    assert F(Fraction(3)) == Fraction(1, 2) + 2
    assert F.is_continuous()


def test_beta_examples():
    assert beta_int(1, 1) == 1
    assert beta_int(2, 3) == Fraction(1, 12)
    assert beta_int(5, 4) == Fraction(1, 280)
    for bad in [(0, 1), (1, 0), (-2, 3)]:
        with pytest.raises(ValueError):
            beta_int(*bad)


def test_beta_equals_polynomial_integral():
    for a in range(1, 13):
        for b in range(1, 13):
            p = Poly.monomial(a - 1) * Poly([1, -1]) ** (b - 1)
            assert beta_int(a, b) == p.integrate(0, 1)


def test_exp_examples():
    assert enclose_exp(0).lo == enclose_exp(0).hi == 1
    e = enclose_exp(1, 20)
    assert e.width <= Fraction(1, 2 ** 20) * 3
    assert e.contains(frac_of(mpmath.e))
    assert enclose_exp(-3, 30).contains(frac_of(mpmath.exp(-3)))


@settings(max_examples=60, deadline=None)
@given(rationals, st.sampled_from([64, 128, 256]))
def test_exp_sound_and_tight(x, bits):
    e = enclose_exp(x, bits)
    ref = mpmath.exp(mp_of(x))
    assert e.lo <= frac_of(ref) * (1 + Fraction(1, 2 ** 180)) and frac_of(ref) * (1 - Fraction(1, 2 ** 180)) <= e.hi
    assert e.width <= Fraction(1, 2 ** bits) * max(1, e.hi)


@settings(max_examples=30, deadline=None)
@given(rationals)
def test_exp_narrowing(x):
    a, b = enclose_exp(x, 64), enclose_exp(x, 128)
    assert b.width <= a.width
    assert a.lo <= b.hi and b.lo <= a.hi


def test_log_examples():
    assert enclose_log(1).lo == enclose_log(1).hi == 0
    assert enclose_log(2, 20).contains(frac_of(mpmath.log(2)))
    e = enclose_log(Fraction(887, 1000), 30)
    assert e.contains(frac_of(mpmath.log(mpmath.mpf(887) / 1000)))
    assert -0.11992 < float(e.mid) < -0.11991
    for bad in (0, -1, Fraction(-1, 2)):
        with pytest.raises(ValueError):
            enclose_log(bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_log_antisymmetry(m, n):
    s = enclose_log(Fraction(m, n), 80) + enclose_log(Fraction(n, m), 80)
    assert s.contains(0)


def test_sqrt_pi():
    assert enclose_sqrt(4).is_point() and enclose_sqrt(4).lo == 2
    assert enclose_sqrt(Fraction(9, 16)).lo == Fraction(3, 4)
    assert enclose_sqrt(5, 30).contains(frac_of(mpmath.sqrt(5)))
    assert enclose_pi(30).contains(frac_of(mpmath.pi))
    assert enclose_pi(200).width < Fraction(1, 2 ** 200) * 4
    with pytest.raises(ValueError):
        enclose_sqrt(-1)


def test_isolate_examples():
    e = isolate_increasing_root(Poly([-1, 1]), 0, 2, Fraction(1, 1024))
    assert e.contains(1)
    e = isolate_increasing_root(Poly([-5, 0, 1]), 2, 3, Fraction(1, 10 ** 6))
    assert e.lo ** 2 <= 5 <= e.hi ** 2 and e.width <= Fraction(1, 10 ** 6)
    with pytest.raises(SignError):
        isolate_increasing_root(Poly([1, 1]), 0, 2, Fraction(1, 8))


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10), max_value=50, max_denominator=97))
def test_isolate_endpoint_signs(c):
    f = Poly([-c, 0, 0, 1])  # x^3 - c, increasing on [0, 4]
    e = isolate_increasing_root(f, 0, 4, Fraction(1, 2 ** 30))
    assert f(e.lo) <= 0 <= f(e.hi)


def test_enclosure_arithmetic_and_decide():
    a = Enclosure(Fraction(1), Fraction(2))
    assert (a * -1).lo == -2
    assert (a - a).contains(0)
    assert (a ** 2).hi == 4
    assert (Enclosure(-1, 2) ** 2).lo == 0
    with pytest.raises(ValueError):
        Enclosure(2, 1)
    calls = []

    def test(bits):
        calls.append(bits)
        return True if bits >= 1024 else None

    assert decide(test, 256) == (True, 1024)
    assert calls == [256, 512, 1024]
    assert decide(lambda b: None, 2048, cap=4096) == (None, 4096)
