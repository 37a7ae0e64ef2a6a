"""Duistermaat-Heckman density of the circle action on the quadric Q^n, as exact polynomials.

    f(xi) = ((n-2) xi^(n-1) - (n-1) xi^(n-2)) / (2 (n-1)!),   g(xi) = -f(2 - xi)
    rho   = -f on [0, 1],  g on [1, 2],  0 afterwards
    vol(H - xi E) = 2 - (n/2) xi^(n-1) + ((n-2)/2) xi^n                on [0, 1]
                  = (n/2)(2-xi)^(n-1) - ((n-2)/2)(2-xi)^n             on [1, 2]
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Tuple

from .blowup import build_model
from .exact import PiecewisePoly, Poly, positive_inside


class IdentityError(AssertionError):
    pass


def _require(cond: bool, name: str) -> None:
    if not cond:
        raise IdentityError("identity failed: " + name)


@dataclass(frozen=True)
class QuadricDH:
    n: int
    f: Poly
    g: Poly
    rho: PiecewisePoly
    vol_fn: PiecewisePoly
    sum_poly: Poly


def _reflect(p: Poly) -> Poly:
    """p(2 - xi)"""
    return p.compose(Poly([2, -1]))


def sum_poly(n: int) -> Poly:
    """sum_k (k+1)/((n-4-2k)!(2k+3)!) (1-xi)^(2k+3), k = 0..floor((n-4)/2)."""
    u = Poly([1, -1])
    out = Poly()
    for k in range(0, (n - 4) // 2 + 1):
        out = out + u ** (2 * k + 3) * Fraction(k + 1, factorial(n - 4 - 2 * k) * factorial(2 * k + 3))
    return out


def build_quadric_dh(n: int) -> QuadricDH:
    if n < 3:
        raise ValueError("need n >= 3")
    head = Poly([2]) - Poly.monomial(n - 1, Fraction(n, 2)) + Poly.monomial(n, Fraction(n - 2, 2))
    w = Poly([2, -1])
    tail = w ** (n - 1) * Fraction(n, 2) - w ** n * Fraction(n - 2, 2)
    vol_fn = PiecewisePoly([(0, head), (1, tail), (2, Poly())])  # C^0 checked here

    # fix the constant of f from rho = -(1/n!) vol'
    shape = Poly.monomial(n - 1, n - 2) - Poly.monomial(n - 2, n - 1)
    target = head.derivative() * Fraction(1, factorial(n))  # equals f on [0, 1]
    kappa = target.leading() / shape.leading()
    _require(shape * kappa == target, "-f is proportional to -(1/n!) vol' on [0,1]")
    _require(kappa == Fraction(1, 2 * factorial(n - 1)), "constant of f is 1/(2(n-1)!)")
    f = shape * kappa
    g = -_reflect(f)
    _require(g == (-(n - 2) * w ** (n - 1) + (n - 1) * w ** (n - 2)) * kappa, "g matches its closed form")
    rho = PiecewisePoly([(0, -f), (1, g), (2, Poly())])

    _require(rho.same_function(-vol_fn.derivative() * Fraction(1, factorial(n))),
             "rho = -(1/n!) vol' piecewise")
    _require(vol_fn(Fraction(0)) == 2 and vol_fn(Fraction(2)) == 0, "vol(0) = 2 and vol(2) = 0")
    if n == 3:
        _require(head == tail, "for n = 3 the two pieces of vol coincide")
    _require(rho.integrate(0, 2) == Fraction(2, factorial(n)), "mass of rho is 2/n!")
    return QuadricDH(n=n, f=f, g=g, rho=rho, vol_fn=vol_fn, sum_poly=sum_poly(n))


def printed_n3_display() -> Poly:
    """The n = 3 volume as printed in the quadric example: 2 - (3/2)xi + (1/2)xi^2."""
    return Poly([2, Fraction(-3, 2), Fraction(1, 2)])


def rho_checks(dh: QuadricDH) -> Dict[str, bool]:
    n = dh.n
    rho = dh.rho
    first = rho.pieces[0][1]
    second = rho.pieces[1][1]
    xi = Poly.x()
    return {
        "nonnegative": positive_inside(first, 0, 1) and positive_inside(second, 1, 2),
        "symmetric": _reflect(first) == second,
        "first_moment": (PiecewisePoly([(b, p * xi) for b, p in rho.pieces], check_continuity=False)
                         .integrate(0, 2) == Fraction(2, factorial(n))),
        "continuous_at_1": first(Fraction(1)) == second(Fraction(1)),
    }


def _proportionality(p: Poly, q: Poly):
    """c with p = c q, or None."""
    if q.is_zero():
        return Fraction(0) if p.is_zero() else None
    c = p.leading() / q.leading()
    return c if p == q * c else None


def check_localization_identity(n: int) -> Dict[str, object]:
    """Constants a, b with xi^(n-1) - (2-xi)^(n-1) = a sum_j C(n-1,2j+1)(1-xi)^(2j+1) and f+g = b sum_poly."""
    dh = build_quadric_dh(n)
    u = Poly([1, -1])
    lhs = Poly.monomial(n - 1) - Poly([2, -1]) ** (n - 1)
    odd = Poly()
    for j in range(0, (n - 2) // 2 + 1):
        odd = odd + u ** (2 * j + 1) * comb(n - 1, 2 * j + 1)
    a = _proportionality(lhs, odd)
    fg = dh.f + dh.g
    if n == 3:
        if not fg.is_zero():
            raise IdentityError("f + g should vanish for n = 3")
        return {"n": n, "expansion_constant": a, "sum_constant": None, "f_plus_g_zero": True}
    b = _proportionality(fg, dh.sum_poly)
    if a is None or b is None:
        raise IdentityError("localization identity fails structurally at n=%d" % n)
    return {"n": n, "expansion_constant": a, "sum_constant": b, "f_plus_g_zero": False}


def F_poly(n: int) -> Poly:
    """(n^2/2)(2n-x)^(n-1) - ((n-2)/2)(2n-x)^n + (1/2) n^n (x+2-n) - 2n^n"""
    w = Poly([2 * n, -1])
    return (w ** (n - 1) * Fraction(n * n, 2) - w ** n * Fraction(n - 2, 2)
            + Poly([2 - n, 1]) * Fraction(n ** n, 2) - Poly([2 * n ** n]))


def check_F_nonneg(n: int) -> Dict[str, object]:
    if n < 3:
        raise ValueError("need n >= 3")
    F = F_poly(n)
    F2 = Poly([2 * n, -1]) ** (n - 3) * Poly([-n, 1]) * Fraction(n * (n - 1) * (n - 2), 2)
    out = {
        "F(n)=0": F(Fraction(n)) == 0,
        "F'(n)=0": F.derivative()(Fraction(n)) == 0,
        "F''_closed_form": F.derivative().derivative() == F2,
        "F(2n)": F(Fraction(2 * n)),
    }
    # F'' >= 0 on [n, 2n] by the closed form, F(n) = F'(n) = 0, hence F >= 0 there
    out["nonneg_on_[n,2n]"] = out["F(n)=0"] and out["F'(n)=0"] and out["F''_closed_form"]
    if not (out["F(n)=0"] and out["F'(n)=0"] and out["F''_closed_form"]):
        raise IdentityError("convexity facts for F fail at n=%d" % n)
    return out


def check_intersection_expansion(n: int, steps_per_unit: int = 4) -> Dict[str, object]:
    """First piece of vol matches the intersection expansion, and n^n vol(x/n) >= 2n^n - phi(x) on [0, 2n]."""
    dh = build_quadric_dh(n)
    expected = Poly([2]) - Poly.monomial(n - 1, Fraction(n, 2)) + Poly.monomial(n, Fraction(n - 2, 2))
    model = build_model(n, n, 2)
    V = 2 * n ** n
    ok = True
    equal_below_n = True
    strict_above_n = True
    for k in range(0, 2 * n * steps_per_unit + 1):
        x = Fraction(k, steps_per_unit)
        lhs = n ** n * dh.vol_fn(x / n)
        rhs = V - model.phi(x)
        if lhs < rhs:
            ok = False
        if x <= n and lhs != rhs:
            equal_below_n = False
        if n < x < 2 * n and not lhs > rhs:
            strict_above_n = False
    return {"first_piece": dh.vol_fn.pieces[0][1] == expected, "bound_holds": ok,
            "equality_on_[0,n]": equal_below_n, "strict_on_(n,2n)": strict_above_n}


def rho_samples(n: int, step) -> List[Tuple[Fraction, Fraction]]:
    step = Fraction(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    dh = build_quadric_dh(n)
    out = []
    k = 0
    while k * step <= 2:
        x = k * step
        out.append((x, dh.rho(x)))
        k += 1
    return out
