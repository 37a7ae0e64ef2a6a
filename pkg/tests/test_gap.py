import json
from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from fano_gap.gap import (D_OF_3, Certificate, by_parts_coefficients, case1_bundle, case1_margin,
                          certify_d_n_minus_1, certify_pair, certify_singular_deg2,
                          check_case1_bundle, check_x1_below_T, d_threshold, r3_bracket,
                          r3_chain_check, r3_exact_ratio, r_infty_d, r_infty_r, r_threshold,
                          recheck, replay_case_iv, robbins_check, s_exact, s_via_integral,
                          s_via_model, sweep, sweep_cases, tau_infinity)


def test_s_example():
    assert s_exact(3, 3) == Fraction(98415, 16)
    assert s_exact(3, 3) < 2 * 5 ** 5
    z = sp.symbols("z")
    ref = sp.Rational(120, 8 * 24) * sp.integrate((3 - z) * (9 - z) ** 3 * (5 - z), (z, 0, 3))
    assert ref == sp.Rational(98415, 16)


def test_s_triple_small():
    for r in range(2, 12):
        for d in range(3, 12):
            s = s_exact(r, d)
            assert s > 0
            assert s == s_via_model(r, d) == s_via_integral(r, d)


def test_s_errors():
    with pytest.raises(ValueError):
        s_exact(1, 3)
    with pytest.raises(ValueError):
        s_exact(3, 2)


def test_x1_examples():
    assert check_x1_below_T(5, 3)[1]
    assert check_x1_below_T(10, 5)[1]
    v, neg = check_x1_below_T(6, 4)
    assert v == Fraction(-43392, 7) and neg


def test_certify_pair():
    c = certify_pair(5, 3)
    assert c.certified and c.witnesses["S"] == "98415/16" and c.recheck()
    assert certify_pair(8, 4).certified
    assert certify_pair(130, 3).certified


def test_tables():
    assert [d_threshold(r)[1] for r in range(4, 11)] == [101, 89, 91, 97, 106, 117, 128]
    assert [r_threshold(d)[1] for d in range(3, 9)] == [16, 20, 27, 34, 43, 52]
    assert D_OF_3 == 68
    with pytest.raises(ValueError):
        d_threshold(3)


def test_r_infty_against_quadrature():
    for d in range(3, 9):
        ref = mpmath.exp(1 - mpmath.mpf(d) / 2) / (2 * mpmath.factorial(d - 3)) * mpmath.quad(
            lambda z: z ** (d - 3) * (d - z) * mpmath.exp(-z / 2), [0, d])
        e = r_infty_d(d)
        assert abs(float(e.mid) - float(ref)) < 1e-25 or abs(e.mid - Fraction(str(ref))) < Fraction(1, 10 ** 40)
    assert by_parts_coefficients(3) == (2, 4)
    for r in range(4, 11):
        ref = mpmath.exp(1 - r) / (2 * (r + 1)) * mpmath.fsum(
            mpmath.mpf((k + 1) * (k + r + 1) * r ** (r - k)) / (2 ** k * mpmath.factorial(r - k)) for k in range(r + 1))
        assert abs(r_infty_r(r).mid - Fraction(str(ref))) < Fraction(1, 10 ** 40)


def test_case1():
    assert case1_margin("d-large", 9).hi < 1
    assert case1_margin("d-large", 3).lo > 1
    assert case1_margin("r-large", 11).hi < 1
    assert case1_margin("d-large", 8).lo > 1 and case1_margin("r-large", 10).lo > 1
    for r in range(2, 21):
        for d in range(3, 21):
            b = case1_bundle(r, d)
            assert b.eta == Fraction(1, 2)
            assert check_case1_bundle(b)


def test_r3_chain():
    for n in range(5, 40):
        assert r3_exact_ratio(n) == s_exact(3, n - 2) / (2 * n ** n)
    m = sp.symbols("m")
    n = m + 2
    lhs = sp.Rational(219) * m ** 2 + 810 * m + 324
    assert sp.simplify(lhs / (m ** 2 * (m + 3)) - (219 * n ** 2 - 66 * n - 420) / ((n - 2) ** 2 * (n + 1))) == 0
    assert r3_bracket(69) == Fraction(219 * 69 ** 2 + 810 * 69 + 324, 69 ** 2 * 72)
    rep = r3_chain_check(69)
    assert rep["holds"] and rep["fails_below"] and rep["decreasing"]


def test_robbins():
    assert all(robbins_check(m) for m in range(2, 41))


def test_d_n_minus_1():
    c = certify_d_n_minus_1(4)
    assert c.certified and 505 < float(Fraction(c.witnesses["F_upper"])) < 506
    assert certify_d_n_minus_1(18).witnesses["method"] == "F"
    c = certify_d_n_minus_1(19)
    assert c.witnesses["method"] == "gamma" and c.certified
    t = tau_infinity()
    ref = mpmath.cbrt(15 + mpmath.sqrt(161)) + mpmath.cbrt(15 - mpmath.sqrt(161))
    assert abs(float(t.mid) - float(ref)) < 1e-11


def test_singular_certificate():
    c = certify_singular_deg2(3)
    T = Fraction(c.witnesses["T"][0])
    assert 3.08 < float(T) < 3.10
    assert 51.5 < float(Fraction(c.witnesses["phi_upper"])) < 52
    assert c.witnesses["handoff"] == "4/3"
    assert certify_singular_deg2(6).certified


def test_sweep_and_replay():
    assert sweep_cases(5) == [(5, 3), (5, 4)]
    certs = sweep(12)
    assert len(certs) == 44 and all(c.certified for c in certs)
    assert len([c for c in certs if c.d <= c.n - 2]) == 36
    rep = replay_case_iv()
    assert rep["failures"] == [] and rep["checked"] == 6 * 50 + 126 * 8


def test_certificate_roundtrip_and_tamper():
    for c in sweep(7) + [certify_singular_deg2(4), certify_d_n_minus_1(22)]:
        doc = json.loads(json.dumps(c.to_json()))
        c2 = Certificate.from_json(doc)
        assert c2 == c and recheck(c2)
    bad = certify_pair(6, 3).to_json()
    bad["witnesses"]["S"] = str(2 * 6 ** 6)
    assert not recheck(Certificate.from_json(bad))
