"""Exact certification of phi(T) < 2n^n for the finite families.

For 3 <= d <= n-2 (ell = 2) put r = n+1-d and x1 = 2n-d+2. If Psi(x1) < 0 then
T > x1, and phi(T) <= phi(x1) - Psi(x1) = Phi(x1) - phi(x1) = S(r, d), so
S < 2n^n is enough. Both conditions are checked in exact rationals.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb, factorial
from typing import List, Tuple

from ..blowup import build_model, build_singular_deg2, psi_fn
from ..exact import Enclosure, Poly, isolate_increasing_root
from ..threshold import DEFAULT_WIDTH, F_value, cubic_C, solve_T
from .certificate import Certificate, fstr


def _check_rd(r: int, d: int) -> None:
    if not isinstance(r, int) or not isinstance(d, int) or r < 2 or d < 3:
        raise ValueError("need r >= 2 and d >= 3, got r=%r d=%r" % (r, d))


def s_exact(r: int, d: int) -> Fraction:
    """S(r,d) as the closed sum over j = 0..r."""
    _check_rd(r, d)
    n = r + d - 1
    total = 0
    fn = factorial(n)
    for j in range(r + 1):
        total += Fraction((r + 1 - j) * (n * (n - j + 1) - d * (d - 2)) * fn,
                          factorial(j) * factorial(n + 1 - j)) * d ** (n - j) * (2 * r) ** j
    return total / (2 ** r * (r + 1))


def s_via_model(r: int, d: int) -> Fraction:
    """Phi(x1) - phi(x1) from the ell = 2 model."""
    _check_rd(r, d)
    n = r + d - 1
    m = build_model(n, d, 2)
    x1 = Fraction(2 * n - d + 2)
    return m.Phi(x1) - m.phi(x1)


def s_via_integral(r: int, d: int) -> Fraction:
    """2^-r n!/((d-3)!(r+1)!) int_0^d z^(d-3)(d-z)(x1-z)^r(n-z) dz, integrated exactly."""
    _check_rd(r, d)
    n = r + d - 1
    x1 = 2 * n - d + 2
    integrand = Poly.monomial(d - 3) * Poly([d, -1]) * Poly([x1, -1]) ** r * Poly([n, -1])
    const = Fraction(factorial(n), 2 ** r * factorial(d - 3) * factorial(r + 1))
    return const * integrand.integrate(0, d)


def check_x1_below_T(n: int, d: int) -> Tuple[Fraction, bool]:
    """Psi(x1) at x1 = 2n-d+2 for the ell = 2 model, and whether it is negative."""
    if not 3 <= d <= n - 1:
        raise ValueError("need 3 <= d <= n-1")
    m = build_model(n, d, 2)
    x1 = Fraction(2 * n - d + 2)
    v = psi_fn(m)(x1)
    return v, v < 0


def certify_pair(n: int, d: int) -> Certificate:
    if not 3 <= d <= n - 2:
        raise ValueError("certify_pair needs 3 <= d <= n-2")
    r = n + 1 - d
    psi_x1, below = check_x1_below_T(n, d)
    S = s_exact(r, d)
    bound = 2 * n ** n
    ok = below and S < bound
    return Certificate(n=n, d=d, verdict="certified" if ok else "refuted", route="exact-S-and-psi",
                       witnesses={"r": r, "x1": 2 * n - d + 2, "psi_x1": fstr(psi_x1),
                                  "S": fstr(S), "bound": fstr(bound)})


def tau_infinity(width=DEFAULT_WIDTH) -> Enclosure:
    """Root > 2 of t^3 - 12t - 30 (the limit of the d = n-1 cubics)."""
    return isolate_increasing_root(Poly([-30, -12, 0, 1]), 2, 8, width)


def tau_d_n_minus_1(n: int, width=DEFAULT_WIDTH) -> Enclosure:
    return isolate_increasing_root(Poly([-cubic_C(n), -12, 0, 1]), 2, 8, width)


def F_bound_d_n_minus_1(n: int, tau) -> Fraction:
    """phi(T) for d = n-1, ell = 2, written through tau = T - n + 1."""
    return Fraction(n * (n - 1) ** (n - 1), 8) * ((tau + 2) ** 2 + 2 - Fraction(6, n))


def gamma_upper(n: int, tau_inf_hi) -> Fraction:
    return ((tau_inf_hi + 2) ** 2 + 2) / (16 * (1 + Fraction(1, n - 1)) ** (n - 1))


def certify_d_n_minus_1(n: int, width=DEFAULT_WIDTH) -> Certificate:
    if n < 4:
        raise ValueError("d = n-1 family needs n >= 4")
    bound = 2 * n ** n
    tau = tau_d_n_minus_1(n, width)
    C = cubic_C(n)
    w = {"tau": [fstr(tau.lo), fstr(tau.hi)], "C": fstr(C), "bound": fstr(bound),
         "width": fstr(width)}
    if n <= 18:
        F_hi = F_bound_d_n_minus_1(n, tau.hi)  # increasing in tau
        ok = F_hi < bound
        w.update(method="F", F_upper=fstr(F_hi))
    else:
        ti = tau_infinity(width)
        g = gamma_upper(n, ti.hi)
        ok = g < 1 and C < 30 and tau.hi <= ti.hi
        w.update(method="gamma", tau_inf=[fstr(ti.lo), fstr(ti.hi)], gamma_upper=fstr(g))
    return Certificate(n=n, d=n - 1, verdict="certified" if ok else "refuted",
                       route="cubic-d-eq-n-minus-1", witnesses=w)


def certify_singular_deg2(n: int, width=DEFAULT_WIDTH) -> Certificate:
    sm = build_singular_deg2(n)
    res = solve_T(sm.phi_model(), width)
    bound = 2 * n ** n
    phi_hi = res.phi_at_T.hi
    # psi^-1(n 2^n) = 2 exactly, so F^psi(n 2^n) is an exact rational
    handoff = F_value(sm.psi_model(), n * 2 ** n)
    assert handoff.is_point()
    ok = phi_hi < bound and handoff.lo < n - 1
    return Certificate(n=n, d=2, verdict="certified" if ok else "refuted", route="singular-deg2",
                       witnesses={"T": [fstr(res.T.lo), fstr(res.T.hi)], "phi_upper": fstr(phi_hi),
                                  "handoff": fstr(handoff.lo), "bound": fstr(bound),
                                  "width": fstr(width)})


def sweep_cases(n_max: int) -> List[Tuple[int, int]]:
    if n_max < 5:
        raise ValueError("sweep needs n_max >= 5")
    out = []
    for n in range(5, n_max + 1):
        out += [(n, d) for d in range(3, n - 1)]
        out.append((n, n - 1))
    return out


def _certify(case: Tuple[int, int]) -> Certificate:
    n, d = case
    return certify_d_n_minus_1(n) if d == n - 1 else certify_pair(n, d)


def sweep(n_max: int, jobs: int = 1) -> List[Certificate]:
    """All (n, d) with 5 <= n <= n_max, 3 <= d <= n-1, in (n, d) order."""
    cases = sweep_cases(n_max)
    if jobs <= 1:
        return [_certify(c) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_certify, cases, chunksize=8))


CASE_IV_GRIDS = (((3, 8), (3, 52)), ((3, 128), (3, 10)))  # ((d range), (r range))


def replay_case_iv() -> dict:
    """Exact replay of the two finite grids: S(r,d)/(2n^n) < 1."""
    failures = []
    count = 0
    for (d0, d1), (r0, r1) in CASE_IV_GRIDS:
        for d in range(d0, d1 + 1):
            for r in range(r0, r1 + 1):
                n = r + d - 1
                count += 1
                if not s_exact(r, d) < 2 * n ** n:
                    failures.append((r, d))
    return {"grids": [{"d": list(g[0]), "r": list(g[1])} for g in CASE_IV_GRIDS],
            "checked": count, "failures": failures}
