from fractions import Fraction

import pytest

from fano_gap.dh import (build_quadric_dh, check_F_nonneg, check_intersection_expansion,
                         check_localization_identity, printed_n3_display, rho_checks, rho_samples)
from fano_gap.exact import Poly


def test_n4_piece_and_mass():
    dh = build_quadric_dh(4)
    first = dh.rho.pieces[0][1]
    assert first == Poly([0, 0, 3, -2]) * Fraction(1, 12)
    assert first.integrate(0, 1) == Fraction(1, 24)


def test_n3_pieces_coincide():
    dh = build_quadric_dh(3)
    head, tail = dh.vol_fn.pieces[0][1], dh.vol_fn.pieces[1][1]
    assert head == tail == Poly([2, 0, Fraction(-3, 2), Fraction(1, 2)])
    # the printed display does not vanish at xi = 2, unlike vol itself
    assert printed_n3_display()(Fraction(2)) == 1 and head(Fraction(2)) == 0


def test_rho_properties():
    for n in range(3, 11):
        dh = build_quadric_dh(n)
        assert dh.vol_fn(Fraction(0)) == 2
        assert all(rho_checks(dh).values())


def test_localization():
    rep = check_localization_identity(3)
    assert rep["f_plus_g_zero"]
    consts = {check_localization_identity(n)["sum_constant"] for n in range(4, 11)}
    assert consts == {Fraction(-2)}
    assert {check_localization_identity(n)["expansion_constant"] for n in range(3, 11)} == {Fraction(-2)}


def test_F_facts():
    assert check_F_nonneg(3)["F(n)=0"]
    assert check_F_nonneg(5)["F''_closed_form"]
    assert check_F_nonneg(4)["F(2n)"] == 256


def test_intersection():
    for n in (3, 4, 5, 6):
        rep = check_intersection_expansion(n)
        assert all(rep.values())


def test_samples():
    rows = rho_samples(4, Fraction(1, 8))
    assert len(rows) == 17 and rows[0] == (0, 0) and rows[-1][0] == 2
    with pytest.raises(ValueError):
        build_quadric_dh(2)
