"""Volume lower-bound functions phi, Phi and log discrepancy A for weighted blowups.

For a Fano n-fold with minimal rational curves of degree d, blowing up with
weights (1 x (d-2), ell x (n-d+1)) gives

    A   = (d-2) + ell*(n-d+1)
    phi = ell^-(n-d+1) x^(n-1) (dn - (d-2)x)                    on [0, d]
        = ell^-(n-d+1) sum_j C(n,j)(n-d+2-j) d^(n-j) (x-d)^j    on [d, inf)

and Phi the antiderivative with Phi(0) = 0. Every model is built from these
closed forms and cross-checked at construction against independent
integral representations; a mismatch raises ModelError.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .exact import PiecewisePoly, Poly, beta_int, kernel_integral, positive_inside


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class BlowupModel:
    n: int
    d: Optional[int]
    ell: Optional[int]
    A: Fraction
    phi: PiecewisePoly
    Phi: PiecewisePoly
    V_target: Fraction
    family: str = "blowup"
    exploratory: bool = False

    @property
    def certifiable(self) -> bool:
        return not self.exploratory

    def psi(self) -> PiecewisePoly:
        return psi_fn(self)

    def label(self) -> str:
        if self.family == "blowup":
            return "n=%d,d=%d,ell=%d" % (self.n, self.d, self.ell)
        return "%s(n=%d)" % (self.family, self.n)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "ell": self.ell,
            "A": frac_json(self.A),
            "V_target": frac_json(self.V_target),
            "phi": piecewise_json(self.phi),
            "Phi": piecewise_json(self.Phi),
        }


def frac_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def frac_from_json(doc: dict) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def piecewise_json(p: PiecewisePoly) -> list:
    return [{"from": frac_json(b), "coeffs": [frac_json(c) for c in q.coeffs]} for b, q in p.pieces]


def piecewise_from_json(doc: list) -> PiecewisePoly:
    return PiecewisePoly([(frac_from_json(pc["from"]), Poly([frac_from_json(c) for c in pc["coeffs"]]))
                          for pc in doc], check_continuity=False)


def log_discrepancy(n: int, d: int, ell: int) -> int:
    return (d - 2) + ell * (n - d + 1)


def _phi_tail_binomial(n: int, d: int) -> Poly:
    """sum_j C(n,j)(n-d+2-j) d^(n-j) u^j as a polynomial in u = x - d (without the ell factor)."""
    return Poly([comb(n, j) * (n - d + 2 - j) * d ** (n - j) for j in range(n - d + 2)])


def _Phi_tail_binomial(n: int, d: int) -> Poly:
    return Poly([Fraction(comb(n + 1, j) * (n - d + 3 - j), n + 1) * d ** (n + 1 - j)
                 for j in range(n - d + 3)])


def _phi_tail_beta(n: int, d: int) -> Poly:
    """Beta expansion of n!/((d-3)!(n-d+1)!) * int_0^d z^(d-3)(d-z)(x-z)^m dz in powers of u = x - d.

    With (x-z)^m = sum_j C(m,j)(d-z)^j u^(m-j), each term is d^(d-1+j) B(d-2, j+2).
    """
    m = n - d + 1
    const = Fraction(factorial(n), factorial(d - 3) * factorial(m))
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        coeffs[m - j] = const * comb(m, j) * Fraction(d) ** (d - 1 + j) * beta_int(d - 2, j + 2)
    return Poly(coeffs)


def _phi_tail_direct(n: int, d: int) -> Poly:
    """Same integral, integrated directly as a polynomial in x."""
    m = n - d + 1
    const = Fraction(factorial(n), factorial(d - 3) * factorial(m))
    kernel = Poly.monomial(d - 3) * Poly([d, -1])
    return kernel_integral(kernel, m, Poly(), Poly([d])) * const


def _phi_head_direct(n: int, d: int) -> Poly:
    """n!/((d-3)!(n-d+1)!) * int_0^x z^(d-3)(d-z)(x-z)^m dz, the x <= d branch."""
    m = n - d + 1
    const = Fraction(factorial(n), factorial(d - 3) * factorial(m))
    kernel = Poly.monomial(d - 3) * Poly([d, -1])
    return kernel_integral(kernel, m, Poly(), Poly.x()) * const


def build_model(n: int, d: int, ell: int, exploratory: bool = False) -> BlowupModel:
    if not isinstance(n, int) or n < 2:
        raise ModelError("need n >= 2")
    if not isinstance(d, int) or not 2 <= d <= n + 1:
        raise ModelError("need 2 <= d <= n+1, got d=%r" % (d,))
    if not isinstance(ell, int) or ell < 1:
        raise ModelError("ell must be a positive integer")
    if ell >= 3 and not exploratory:
        raise ModelError("ell >= 3 is only available with exploratory=True")
    m = n - d + 1
    scale = Fraction(1, ell ** m)
    A = Fraction(log_discrepancy(n, d, ell))
    x = Poly.x()
    shift = Poly([-d, 1])  # u = x - d

    if d == 2:
        phi_p = Poly.monomial(n - 1, 2 * n) * scale
        Phi_p = Poly.monomial(n, 2) * scale
        if _phi_tail_binomial(n, 2).compose(shift) * scale != phi_p:
            raise ModelError("d=2 closed form disagrees with the binomial form")
        if _Phi_tail_binomial(n, 2).compose(shift) * scale != Phi_p:
            raise ModelError("d=2 closed form of Phi disagrees with the binomial form")
        phi = PiecewisePoly([(0, phi_p)])
        Phi = PiecewisePoly([(0, Phi_p)])
    else:
        head = Poly.monomial(n - 1) * Poly([d * n, -(d - 2)]) * scale
        Head = Poly.monomial(n) * Poly([d * (n + 1), -(d - 2)]) * Fraction(1, n + 1) * scale
        tail_u = _phi_tail_binomial(n, d) * scale
        Tail_u = _Phi_tail_binomial(n, d) * scale
        if _phi_tail_beta(n, d) * scale != tail_u:
            raise ModelError("binomial form of phi disagrees with the Beta expansion")
        tail = tail_u.compose(shift)
        if _phi_tail_direct(n, d) * scale != tail:
            raise ModelError("binomial form of phi disagrees with direct integration")
        if _phi_head_direct(n, d) * scale != head:
            raise ModelError("monomial form of phi disagrees with direct integration")
        Tail = Tail_u.compose(shift)
        phi = PiecewisePoly([(0, head), (d, tail)])   # raises if the two forms differ at d
        Phi = PiecewisePoly([(0, Head), (d, Tail)])

    model = BlowupModel(n=n, d=d, ell=ell, A=A, phi=phi, Phi=Phi,
                        V_target=Fraction(2 * n ** n), exploratory=exploratory)
    _check_model(model)
    return model


def _check_model(model: BlowupModel) -> None:
    phi, Phi = model.phi, model.Phi
    n, d, ell = model.n, model.d, model.ell
    if phi(0) != 0 or Phi(0) != 0:
        raise ModelError("phi(0) and Phi(0) must vanish")
    if not Phi.derivative().same_function(phi):
        raise ModelError("Phi' != phi")
    expected = Fraction(d ** n * (n - d + 2), ell ** (n - d + 1))
    if phi(Fraction(d)) != expected:
        raise ModelError("phi(d) != ell^-(n-d+1) d^n (n-d+2)")
    if not increasing_on_head(phi, d):
        raise ModelError("phi is not increasing on [0, d]")
    if d <= n and not increasing_tail(phi):
        raise ModelError("phi is not increasing past its last breakpoint")


def increasing_on_head(phi: PiecewisePoly, upto) -> bool:
    """phi' > 0 on (0, upto) for each piece, certified exactly."""
    bps = phi.breakpoints + [Fraction(upto)]
    for (b, p), nxt in zip(phi.pieces, bps[1:]):
        if b >= upto:
            break
        if not positive_inside(p.derivative(), b, min(nxt, Fraction(upto))):
            return False
    return True


def increasing_tail(phi: PiecewisePoly) -> bool:
    """Last piece, written in powers of (x - b), has nonnegative coefficients and positive slope."""
    b, p = phi.pieces[-1]
    q = p.shift(b)
    return all(c >= 0 for c in q.coeffs) and q.degree >= 1


def psi_fn(model: BlowupModel) -> PiecewisePoly:
    """Psi(x) = (x - A) phi(x) - Phi(x)."""
    lin = Poly([-model.A, 1])
    return PiecewisePoly([(b, lin * p - P) for (b, p), (_, P) in zip(model.phi.pieces, model.Phi.pieces)])


def fujita_model(n: int) -> BlowupModel:
    """phi = x^n, A = n: the bound coming from a point blowup."""
    phi = PiecewisePoly([(0, Poly.monomial(n))])
    Phi = PiecewisePoly([(0, Poly.monomial(n + 1, Fraction(1, n + 1)))])
    return BlowupModel(n=n, d=None, ell=None, A=Fraction(n), phi=phi, Phi=Phi,
                       V_target=Fraction(2 * n ** n), family="fujita")


def custom_model(n: int, phi: PiecewisePoly, A, family: str = "custom") -> BlowupModel:
    return BlowupModel(n=n, d=None, ell=None, A=Fraction(A), phi=phi, Phi=phi.antiderivative(),
                       V_target=Fraction(2 * n ** n), family=family)


@dataclass(frozen=True)
class SingularDeg2Model:
    n: int
    phi: PiecewisePoly
    psi: Poly
    A: Fraction
    b1: Poly = field(repr=False)
    b1_prime: Poly = field(repr=False)

    def phi_model(self) -> BlowupModel:
        return custom_model(self.n, self.phi, self.A, family="singular-deg2")

    def psi_model(self) -> BlowupModel:
        return custom_model(self.n, PiecewisePoly.single(self.psi), self.A, family="singular-deg2-psi")


def _double_integral_b1(n: int) -> Poly:
    """n! int_0^x dt int_0^t (2-z)(t-z)^(n-3)/(n-3)! dz."""
    inner = kernel_integral(Poly([2, -1]), n - 3, Poly(), Poly.x())
    return inner.antiderivative() * Fraction(factorial(n), factorial(n - 3))


def _double_integral_b1_prime(n: int) -> Poly:
    """Same with z restricted to [0, 2], for x >= 2."""
    c = Fraction(factorial(n), factorial(n - 3))
    first = kernel_integral(Poly([2, -1]), n - 3, Poly(), Poly.x()).integrate(0, 2)
    inner2 = kernel_integral(Poly([2, -1]), n - 3, Poly(), Poly([2])).antiderivative()
    return (inner2 - Poly([inner2(Fraction(2))]) + Poly([first])) * c


def build_singular_deg2(n: int) -> SingularDeg2Model:
    if not isinstance(n, int) or n < 3:
        raise ModelError("singular degree-2 model needs n >= 3")
    head = Poly.monomial(n - 1, 2 * n)
    tail = Poly.monomial(n - 1, 2 * n - 1) + Poly([2 ** (n - 1)])
    phi = PiecewisePoly([(0, head), (2, tail)])
    psi = head

    x = Poly.x()
    b1 = Poly.monomial(n - 1, 2 * n) - Poly.monomial(n)
    b1p = b1 + Poly([-2, 1]) ** n
    if _double_integral_b1(n) != b1:
        raise ModelError("b1 disagrees with its double integral")
    if _double_integral_b1_prime(n) != b1p:
        raise ModelError("b1' disagrees with its double integral")
    one_line = kernel_integral(Poly([2, -1]), n - 2, Poly(), x) * Fraction(factorial(n), factorial(n - 2))
    if one_line != b1:
        raise ModelError("b1 disagrees with the single-integral form")
    for k in range(1, 81):
        t = Fraction(k, 8)
        if t <= 2 and not b1(t) < head(t):
            raise ModelError("b1 >= 2n x^(n-1) at x=%s" % t)
        if t > 2 and not b1p(t) < tail(t):
            raise ModelError("b1' >= (2n-1)x^(n-1) + 2^(n-1) at x=%s" % t)

    # psi - phi is 0 on [0,2] and x^(n-1) - 2^(n-1) afterwards
    if (psi - tail).shift(2).coeffs[0] != 0 or not all(c >= 0 for c in (psi - tail).shift(2).coeffs):
        raise ModelError("phi <= psi fails past 2")
    return SingularDeg2Model(n=n, phi=phi, psi=psi, A=Fraction(n - 1), b1=b1, b1_prime=b1p)


def trivial_normal_bound(n: int, r: int, d_Z, delta) -> Fraction:
    """delta^-r (r+1)^r C(n,r) d_Z."""
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    delta, d_Z = Fraction(delta), Fraction(d_Z)
    if delta <= 0 or d_Z < 1:
        raise ValueError("need delta > 0 and d_Z >= 1")
    return (r + 1) ** r * comb(n, r) * d_Z / delta ** r
