"""Pseudo-effective threshold T with (T - A) phi(T) = Phi(T), and the volume bound phi(T)."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .blowup import BlowupModel, frac_json, psi_fn
from .exact import (Enclosure, Poly, as_rational, enclose_sqrt, isolate_increasing_root)

DEFAULT_WIDTH = Fraction(1, 2 ** 40)

CLOSED_FORMS = ("d=n,ell=1", "d=n,ell=2", "d=n-1,ell=1", "d=n-1,ell=2")


class NoSignChange(RuntimeError):
    pass


@dataclass(frozen=True)
class ThresholdResult:
    T: Enclosure
    phi_at_T: Enclosure
    model: BlowupModel
    method: str = "bisection"
    width: Fraction = DEFAULT_WIDTH

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "width": frac_json(self.width),
            "T": [frac_json(self.T.lo), frac_json(self.T.hi)],
            "phi_at_T": [frac_json(self.phi_at_T.lo), frac_json(self.phi_at_T.hi)],
        }


def solve_T(model: BlowupModel, width=DEFAULT_WIDTH) -> ThresholdResult:
    width = as_rational(width)
    A = model.A
    if A <= 0:
        raise ValueError("need A > 0")
    psi = psi_fn(model)
    lo = A + Fraction(1, 1024)
    if psi(lo) >= 0:
        raise NoSignChange("Psi(A + 1/1024) >= 0 for %s" % model.label())
    step = Fraction(1)
    hi = A + step
    while psi(hi) < 0:
        step *= 2
        hi = A + step
        if step > 2 ** 20 * A:
            raise NoSignChange("no-sign-change: Psi stays negative up to 2^20*A for %s" % model.label())
    if hi <= lo:
        hi = lo  # cannot happen for A >= 1; kept for clarity
    T = isolate_increasing_root(psi, lo, hi, width)
    # phi is nondecreasing, so its image over T is [phi(lo), phi(hi)]
    phiT = Enclosure(model.phi(T.lo), model.phi(T.hi))
    return ThresholdResult(T=T, phi_at_T=phiT, model=model, method="bisection", width=width)


def depressed_cubic_root(p, q, lower, width=DEFAULT_WIDTH) -> Enclosure:
    """Root > lower of t^3 + p t + q, for a cubic increasing past `lower`."""
    f = Poly([q, p, 0, 1])
    hi = Fraction(lower) + 1
    while f(hi) < 0:
        hi *= 2
    return isolate_increasing_root(f, lower, hi, width)


def closed_form_T(n: int, which: str, bits: int = 256, width=DEFAULT_WIDTH) -> Enclosure:
    """T for the d = n and d = n-1 families from their closed forms.

    d = n:   T = A + sqrt(A^2 - 2A(n-2) + n(n-1)(n-2)/(n+1)), which is
             n + sqrt(6n/(n+1)) for ell = 2 and (n-1) + sqrt(3(n-1)/(n+1)) for ell = 1.
    d = n-1: with u = T - (n-1), ell = 2 gives u^3 - 12u - 6(n-1)(5n+1)/(n(n+1)) = 0 (u > 2),
             ell = 1 gives u^3 + 3u^2 - q = 0, q = 12(n-1)^2/(n(n+1)) (u > 0).
    """
    if which not in CLOSED_FORMS:
        raise ValueError("which must be one of %s" % (CLOSED_FORMS,))
    if which.startswith("d=n,"):
        if n < 3:
            raise ValueError("d = n closed forms need n >= 3")
        if which.endswith("ell=2"):
            return enclose_sqrt(Fraction(6 * n, n + 1), bits) + n
        return enclose_sqrt(Fraction(3 * (n - 1), n + 1), bits) + (n - 1)
    if n < 4:
        raise ValueError("d = n-1 closed forms need n >= 4")
    if which.endswith("ell=2"):
        C = Fraction(6 * (n - 1) * (5 * n + 1), n * (n + 1))
        tau = depressed_cubic_root(-12, -C, 2, width)
    else:
        q = Fraction(12 * (n - 1) ** 2, n * (n + 1))
        f = Poly([-q, 0, 3, 1])
        tau = isolate_increasing_root(f, 0, 2 + q, width)
    return tau + (n - 1)


def cubic_C(n: int) -> Fraction:
    return Fraction(6 * (n - 1) * (5 * n + 1), n * (n + 1))


def phi_inverse(model: BlowupModel, V, width=DEFAULT_WIDTH) -> Enclosure:
    """Enclosure of the x with phi(x) = V, searched piece by piece."""
    V = as_rational(V)
    phi = model.phi
    if V <= 0:
        return Enclosure.point(0)
    bps = phi.breakpoints
    # locate the piece: first breakpoint with phi(b) >= V, exact tie handled there
    for b in bps[1:]:
        val = phi(b)
        if val == V:
            return Enclosure.point(b)
        if val > V:
            break
    hi = Fraction(1)
    while phi(hi) < V:
        hi *= 2
        if hi > 2 ** 40:
            raise ValueError("phi never reaches V=%s" % V)
    return isolate_increasing_root(lambda x: phi(x) - V, 0, hi, width)


def F_value(model: BlowupModel, V, width=DEFAULT_WIDTH) -> Enclosure:
    """F^phi(V) = (1/V) int_0^{phi^-1(V)} (V - phi).

    h(t) = V t - Phi(t) peaks at the true t, so with t in [a, b]:
    min(h(a), h(b)) <= G <= h(a) + (b - a)(V - phi(a)).
    """
    V = as_rational(V)
    t = phi_inverse(model, V, width)
    Phi, phi = model.Phi, model.phi

    def h(s):
        return V * s - Phi(s)

    if t.is_point():
        g = h(t.lo)
        return Enclosure(g / V, g / V)
    lo = min(h(t.lo), h(t.hi))
    hi = h(t.lo) + t.width * (V - phi(t.lo))
    return Enclosure(lo / V, hi / V)


def volume_bound_F_inverse(model: BlowupModel, A=None, bits: int = 256,
                           width: Optional[Fraction] = None) -> Enclosure:
    """Enclosure of the V with F^phi(V) = A, by monotone bisection on V.

    F^phi is increasing in V; a candidate V is classified by comparing the
    enclosure of F(V) with A and the bracket shrinks until the classification
    becomes ambiguous or the relative width drops below 2^-40.
    """
    A = model.A if A is None else as_rational(A)
    if A <= 0:
        raise ValueError("need A > 0")
    inner = Fraction(1, 2 ** (bits // 4 + 24)) if width is None else as_rational(width)

    def side(V):
        e = F_value(model, V, inner)
        if e.hi < A:
            return -1
        if e.lo > A:
            return 1
        if e.is_point() and e.lo == A:
            return 0
        return None

    lo, hi = Fraction(1), Fraction(2)
    while side(lo) == 1:
        lo /= 2
    while True:
        s = side(hi)
        if s == 0:
            return Enclosure.point(hi)
        if s == 1:
            break
        hi *= 2
    target = hi * Fraction(1, 2 ** 40)
    while hi - lo > target:
        mid = (lo + hi) / 2
        s = side(mid)
        if s == 0:
            return Enclosure.point(mid)
        if s is None:
            # F(mid) straddles A: refine the inner root once, then stop if still ambiguous
            e = F_value(model, mid, inner / 2 ** 20)
            if e.hi < A:
                s = -1
            elif e.lo > A:
                s = 1
            else:
                break
        if s < 0:
            lo = mid
        else:
            hi = mid
    return Enclosure(lo, hi)
