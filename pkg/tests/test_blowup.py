from fractions import Fraction

import pytest
import sympy as sp

from fano_gap.blowup import (ModelError, build_model, build_singular_deg2, fujita_model,
                             piecewise_from_json, psi_fn, trivial_normal_bound)
from fano_gap.exact import Poly

X, Z = sp.symbols("x z")


def sympy_phi_tail(n, d, ell):
    """Integral form for x >= d, integrated by sympy."""
    m = n - d + 1
    c = sp.Rational(sp.factorial(n), sp.factorial(d - 3) * sp.factorial(m)) / sp.Integer(ell) ** m
    return sp.expand(c * sp.integrate(Z ** (d - 3) * (d - Z) * (X - Z) ** m, (Z, 0, d)))


def to_poly(expr):
    cs = sp.Poly(expr, X).all_coeffs()[::-1]
    return Poly([Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in cs])


def test_examples():
    m = build_model(3, 2, 1)
    assert m.phi.pieces[0][1] == Poly([0, 0, 6])
    assert m.A == 2 and m.phi(Fraction(3)) == 54
    m = build_model(7, 7, 2)
    assert m.phi.pieces[0][1] == Poly.monomial(6) * Poly([49, -5]) * Fraction(1, 2)
    assert m.phi(Fraction(7)) == 7 ** 7 * 2 / Fraction(2)
    for n in range(3, 8):
        m = build_model(n, n + 1, 1)
        assert m.phi.pieces[0][1] == Poly.monomial(n - 1, (n + 1) * n) - Poly.monomial(n, n - 1)
        assert m.phi.pieces[1][1] == Poly([(n + 1) ** n])


@pytest.mark.parametrize("n,d,ell", [(5, 3, 2), (6, 4, 1), (8, 5, 2), (9, 3, 1), (7, 7, 2)])
def test_tail_against_sympy_integral(n, d, ell):
    m = build_model(n, d, ell)
    assert m.phi.pieces[1][1] == to_poly(sympy_phi_tail(n, d, ell))


def test_invariants_grid():
    for n in range(3, 13):
        for d in range(2, n + 2):
            for ell in (1, 2):
                m = build_model(n, d, ell)
                assert m.A == (d - 2) + ell * (n - d + 1)
                assert m.Phi.derivative().same_function(m.phi)
                assert m.phi(Fraction(d)) == Fraction(d ** n * (n - d + 2), ell ** (n - d + 1))
                psi = psi_fn(m)
                lin = Poly([-m.A, 1])
                expected = [(b, lin * p.derivative()) for b, p in m.phi.pieces]
                assert all(q.derivative() == e for (_, q), (_, e) in zip(psi.pieces, expected))
                assert psi(Fraction(0)) == 0 and psi(m.A) == -m.Phi(m.A) < 0
            m = build_model(n, n, 2) if n >= 3 else None
            if m:
                assert m.phi.pieces[1][1] == Poly([2 - n, 1]) * Fraction(n ** n, 2)


def test_psi_examples():
    assert psi_fn(fujita_model(4))(Fraction(5)) == 0
    assert psi_fn(build_model(3, 2, 1))(Fraction(3)) == 0
    m = build_model(5, 3, 2)
    assert psi_fn(m)(Fraction(9)) == 2 * m.phi(Fraction(9)) - m.Phi(Fraction(9))
    assert psi_fn(m)(Fraction(9)) < 0


def test_range_errors():
    with pytest.raises(ModelError):
        build_model(5, 1, 1)
    with pytest.raises(ModelError):
        build_model(5, 7, 1)
    with pytest.raises(ModelError):
        build_model(5, 3, 3)
    assert build_model(5, 3, 3, exploratory=True).certifiable is False


def test_singular_deg2():
    s = build_singular_deg2(3)
    assert s.phi.pieces[0][1] == Poly([0, 0, 6]) and s.phi.pieces[1][1] == Poly([4, 0, 5])
    assert s.phi(Fraction(2)) == 24
    assert build_singular_deg2(4).b1(Fraction(2)) == 48
    for n in range(3, 10):
        s = build_singular_deg2(n)
        for k in range(1, 40):
            x = Fraction(k, 5)
            if x <= 2:
                assert s.phi(x) == s.psi(x)
            else:
                assert s.phi(x) < s.psi(x)
    with pytest.raises(ModelError):
        build_singular_deg2(2)


def test_trivial_normal_bound():
    assert trivial_normal_bound(3, 1, 9, 1) == 54
    assert trivial_normal_bound(4, 2, 7, 1) == 54 * 7
    assert trivial_normal_bound(2, 1, 2, 2) == 4
    with pytest.raises(ValueError):
        trivial_normal_bound(3, 3, 1, 1)


def test_json_roundtrip():
    m = build_model(6, 4, 2)
    doc = m.to_json()
    assert piecewise_from_json(doc["phi"]).same_function(m.phi)
    assert doc["A"] == {"num": "8", "den": "1"}
