"""The unbounded-range estimates: Cramer-tilt constants, R_inf(r), R_inf(d) and the two tables.

Only the final printed bound expressions are evaluated here, as enclosures.
None of this is needed by the exact finite sweep.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, floor
from typing import List, Tuple

from ..exact import (MAX_BITS, Enclosure, Poly, decide, enclose_exp, enclose_pi,
                     enclose_sqrt, log_enclosure, sqrt_enclosure)
from .cases import s_exact

D_OF_3 = 68  # taken as given: set from the separate r = 3 estimate, see r3_chain_*
TABLE_CONVENTION = "smallest integer strictly greater than the enclosed value"


class Undecided(RuntimeError):
    pass


# -- Case I -------------------------------------------------------------------

@dataclass(frozen=True)
class CaseIBundle:
    r: int
    d: int
    n: int
    q: Fraction
    p: Fraction
    Delta: Fraction
    beta: Fraction
    eta: Fraction
    theta1: Fraction
    theta2: Fraction
    alpha1: Fraction
    tau1: Fraction
    alpha2: Fraction
    tau2: Fraction

    def a(self, k: int) -> Fraction:
        """a_k = C(n+1, r-k)(1-q)^(n+1-r+k) q^(r-k)"""
        n, r, q = self.n, self.r, self.q
        return comb(n + 1, r - k) * (1 - q) ** (n + 1 - r + k) * q ** (r - k)


def _alpha_tau_d(d) -> Tuple[Fraction, Fraction, Fraction]:
    d = Fraction(d)
    th = d / (2 * (d + 3))
    alpha = 1 + d / (d + 1) + d ** 2 / (4 * (d + 1) * (d + 2)) * (3 - 2 * th) / (1 - th) ** 2
    tau = d / (d + 1) + d ** 2 / (2 * (d + 1) * (d + 2)) * (th ** 2 - 3 * th + 3) / (1 - th) ** 3
    return th, alpha, tau


def _alpha_tau_r(r) -> Tuple[Fraction, Fraction, Fraction]:
    r = Fraction(r)
    th = (r - 2) / (2 * r)
    alpha = 2 + (r - 1) / (4 * r) * (3 - 2 * th) / (1 - th) ** 2
    tau = 1 + (r - 1) / (2 * r) * (th ** 2 - 3 * th + 3) / (1 - th) ** 3
    return th, alpha, tau


def case1_bundle(r: int, d: int) -> CaseIBundle:
    if r < 2 or d < 3:
        raise ValueError("need r >= 2, d >= 3")
    n = r + d - 1
    q = Fraction(r, n + 1)
    p = Fraction(2 * r, d + 2 * r)
    th1, a1, t1 = _alpha_tau_d(d)
    th2, a2, t2 = _alpha_tau_r(r)
    eta = q * (1 - p) / (p * (1 - q))
    return CaseIBundle(r=r, d=d, n=n, q=q, p=p, Delta=Fraction(d * (r + 1), n),
                       beta=Fraction(n + 1, d * r), eta=eta, theta1=th1, theta2=th2,
                       alpha1=a1, tau1=t1, alpha2=a2, tau2=t2)


def check_case1_bundle(b: CaseIBundle) -> bool:
    """eta = 1/2, q < p, and a_k/a_(k-1) = ((r-k+1)/(n-r+k+1))(d/r) <= d/(d+k)."""
    if b.eta != Fraction(1, 2) or not b.q < b.p:
        return False
    for k in range(1, b.r + 1):
        ratio = b.a(k) / b.a(k - 1)
        if ratio != Fraction(b.r - k + 1, b.n - b.r + k + 1) * Fraction(b.d, b.r):
            return False
        if ratio > Fraction(b.d, b.d + k):
            return False
    return True


def _prefactor(bits: int) -> Enclosure:
    """e / (2 sqrt(2 pi))"""
    two_pi = enclose_pi(bits) * 2
    return enclose_exp(1, bits) / (sqrt_enclosure(two_pi, bits) * 2)


def case1_margin(side: str, value: int, bits: int = 256) -> Enclosure:
    """Final Case I bound; the bound applies when hi < 1."""
    if value < 3:
        raise ValueError("value must be >= 3")
    pre = _prefactor(bits)
    if side == "d-large":
        _, a, t = _alpha_tau_d(value)
        return pre * enclose_sqrt(Fraction(2, value), bits) * (a + t * Fraction(2, value))
    if side == "r-large":
        _, a, t = _alpha_tau_r(value)
        r = Fraction(value)
        return pre * (a + r / (r + 1) * t * (2 / r)) * enclose_sqrt(2 / r, bits)
    raise ValueError("side must be 'd-large' or 'r-large'")


# -- Case II: large d, fixed r -------------------------------------------------

def r_infty_r_sum(r: int) -> Fraction:
    return sum((Fraction((k + 1) * (k + r + 1) * r ** (r - k), 2 ** k * factorial(r - k))
                for k in range(r + 1)), Fraction(0))


def r_infty_r(r: int, bits: int = 256) -> Enclosure:
    if r < 2:
        raise ValueError("need r >= 2")
    return enclose_exp(1 - r, bits) * (r_infty_r_sum(r) / (2 * (r + 1)))


def _threshold(numerator: Fraction, R: Enclosure, bits: int) -> Enclosure:
    if not R.hi < 1:
        raise Undecided("R_inf enclosure does not stay below 1")
    neg_log = -log_enclosure(R, bits)
    return Enclosure(numerator / (2 * neg_log.hi), numerator / (2 * neg_log.lo), bits)


def _first_integer_above(make, bits: int, cap: int) -> Tuple[Enclosure, int]:
    state = {}

    def test(b):
        e = make(b)
        state["e"] = e
        return True if floor(e.lo) == floor(e.hi) else None

    verdict, _ = decide(test, bits, cap)
    e = state["e"]
    if verdict is None:
        raise Undecided("enclosure %r straddles an integer" % (e,))
    return e, floor(e.lo) + 1


def d_threshold(r: int, bits: int = 256, cap: int = MAX_BITS) -> Tuple[Enclosure, int]:
    """r(r+2) / (2(-log R_inf(r))) and the first integer above it."""
    if r < 4:
        raise ValueError("d(r) is computed for r >= 4; d(3) = %d is fixed separately" % D_OF_3)
    return _first_integer_above(lambda b: _threshold(Fraction(r * (r + 2)), r_infty_r(r, b), b), bits, cap)


# -- Case III: large r, fixed d ------------------------------------------------

def by_parts_coefficients(d: int) -> Tuple[Fraction, Fraction]:
    """int_0^d z^(d-3)(d-z) e^(-z/2) dz = A_d + B_d e^(-d/2), by repeated integration by parts.

    For a polynomial p, an antiderivative of p(z)e^(-z/2) is -e^(-z/2) sum_k 2^(k+1) p^(k)(z).
    """
    if d < 3:
        raise ValueError("need d >= 3")
    p = Poly.monomial(d - 3) * Poly([d, -1])
    A = Fraction(0)
    B = Fraction(0)
    k = 0
    while not p.is_zero():
        A += 2 ** (k + 1) * p(Fraction(0))
        B -= 2 ** (k + 1) * p(Fraction(d))
        p = p.derivative()
        k += 1
    return A, B


def r_infty_d(d: int, bits: int = 256) -> Enclosure:
    """e^(1-d/2)/(2(d-3)!) * (A_d + B_d e^(-d/2))"""
    A, B = by_parts_coefficients(d)
    e1 = enclose_exp(1 - Fraction(d, 2), bits)
    e2 = enclose_exp(1 - Fraction(d), bits)
    return (e1 * A + e2 * B) / (2 * factorial(d - 3))


def r_threshold(d: int, bits: int = 256, cap: int = MAX_BITS) -> Tuple[Enclosure, int]:
    """(d-1)^2 / (2(-log R_inf(d))) and the first integer above it."""
    return _first_integer_above(lambda b: _threshold(Fraction((d - 1) ** 2), r_infty_d(d, b), b), bits, cap)


def table_d_of_r(rs=range(4, 11), bits: int = 256):
    return [(r,) + d_threshold(r, bits) for r in rs]


def table_r_of_d(ds=range(3, 9), bits: int = 256):
    return [(d,) + r_threshold(d, bits) for d in ds]


def table_rows(which: str, bits: int = 256) -> List[dict]:
    """Rows of a threshold table: key, integer entry, status, enclosure."""
    rows = []
    if which == "d-of-r":
        rows.append({"r": 3, "d(r)": D_OF_3, "status": "paper-assumed", "lo": None, "hi": None})
        for r, e, k in table_d_of_r(bits=bits):
            rows.append({"r": r, "d(r)": k, "status": "computed", "lo": e.lo, "hi": e.hi})
    elif which == "r-of-d":
        for d, e, k in table_r_of_d(bits=bits):
            rows.append({"d": d, "r(d)": k, "status": "computed", "lo": e.lo, "hi": e.hi})
    else:
        raise ValueError("unknown table %r" % which)
    return rows


# -- the r = 3 chain -------------------------------------------------------------

def r3_exact_ratio(n: int) -> Fraction:
    """S(3, n-2)/(2n^n) in closed form."""
    return Fraction((n - 2) ** (n - 2) * (115 * n ** 3 - 126 * n ** 2 - 66 * n + 40),
                    16 * n ** n * (1 + n))


def r3_bracket(m) -> Fraction:
    """(m/(m+3))(219/m + 810/m^2 + 324/m^3), decreasing in m."""
    m = Fraction(m)
    return m / (m + 3) * (219 / m + 810 / m ** 2 + 324 / m ** 3)


def r3_chain_bound(m: int, bits: int = 256) -> Enclosure:
    """(115 e^-2 / 16)(1 + bracket(m)/115)"""
    return enclose_exp(-2, bits) * (Fraction(115, 16) * (1 + r3_bracket(m) / 115))


def r3_chain_check(m_min: int = 69, bits: int = 256) -> dict:
    """The chain bound is < 1 at m_min; it is decreasing, so it stays < 1 beyond."""
    e = r3_chain_bound(m_min, bits)
    prev = r3_chain_bound(m_min - 1, bits)
    # decreasing: bracket(m) = (219m^2 + 810m + 324)/(m^2 (m+3)), each part falls with m
    mono = all(r3_bracket(m + 1) < r3_bracket(m) for m in range(1, 400))
    return {"m_min": m_min, "bound": e, "holds": e.hi < 1, "fails_below": prev.lo > 1,
            "decreasing": mono}


# -- Robbins bounds ------------------------------------------------------------------

def robbins_check(m: int, bits: int = 256) -> bool:
    """e^(1/(12m+1)) < m!/(m^m e^-m sqrt(2 pi m)) < e^(1/(12m))"""
    mid = enclose_exp(m, bits) * Fraction(factorial(m), m ** m) / sqrt_enclosure(enclose_pi(bits) * (2 * m), bits)
    lo = enclose_exp(Fraction(1, 12 * m + 1), bits)
    hi = enclose_exp(Fraction(1, 12 * m), bits)
    return lo.hi < mid.lo and mid.hi < hi.lo
