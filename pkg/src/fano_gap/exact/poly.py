"""Univariate polynomials with rational coefficients, and piecewise versions of them."""

from fractions import Fraction
from math import comb
from typing import Iterable, List, Sequence, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("expected an exact rational, got %r" % type(x).__name__)


class Poly:
    """Polynomial stored as a coefficient tuple, index = degree.

    Trailing zeros are stripped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [as_rational(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, a: Number) -> "Poly":
        return cls([a])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, a: Number = 1) -> "Poly":
        return cls([0] * k + [a])

    @classmethod
    def linear(cls, a: Number, b: Number) -> "Poly":
        """a + b*x"""
        return cls([a, b])

    @classmethod
    def binomial_power(cls, shift: Number, k: int) -> "Poly":
        """(x + shift)^k"""
        s = as_rational(shift)
        return cls([comb(k, i) * s ** (k - i) for i in range(k + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return "Poly(%s)" % ", ".join(str(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        # Horner; works for Fraction and anything supporting + and *
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = as_rational(k)
        return Poly([c / k for c in self.coeffs])

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, a: Number, b: Number) -> Fraction:
        P = self.antiderivative()
        return P(as_rational(b)) - P(as_rational(a))

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def shift(self, a: Number) -> "Poly":
        """p(x + a)"""
        return self.compose(Poly([a, 1]))

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def low_order(self) -> int:
        """Multiplicity of the root at 0 (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def bernstein(self, a: Number, b: Number) -> List[Fraction]:
        """Bernstein coefficients of p on [a, b] in degree deg p."""
        a, b = as_rational(a), as_rational(b)
        q = self.compose(Poly([a, b - a]))  # q(t) = p(a + (b-a)t), t in [0,1]
        m = max(q.degree, 0)
        c = list(q.coeffs) + [Fraction(0)] * (m + 1 - len(q.coeffs))
        return [sum((Fraction(comb(k, i), comb(m, i)) * c[i] for i in range(k + 1)), Fraction(0))
                for k in range(m + 1)]


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([as_rational(x)])


def positive_on(p: Poly, a: Number, b: Number, depth: int = 40) -> bool:
    """True if p > 0 on all of [a, b] is certified by Bernstein subdivision.

    A False answer means "not certified", not "negative somewhere".
    """
    a, b = as_rational(a), as_rational(b)
    stack = [(a, b, 0)]
    while stack:
        lo, hi, k = stack.pop()
        bc = p.bernstein(lo, hi)
        if min(bc) > 0:
            continue
        if bc[0] <= 0 or bc[-1] <= 0 or k >= depth:
            return False
        mid = (lo + hi) / 2
        stack += [(lo, mid, k + 1), (mid, hi, k + 1)]
    return True


def positive_inside(p: Poly, a: Number, b: Number) -> bool:
    """p > 0 on the open interval (a, b); roots at the endpoints are allowed.

    Endpoint roots are divided out exactly before the Bernstein test.
    """
    a, b = as_rational(a), as_rational(b)
    if p.is_zero():
        return False
    q = p.shift(a)
    q = Poly(q.coeffs[q.low_order():]).shift(-a)
    r = q.shift(b)
    k = r.low_order()
    r = Poly(r.coeffs[k:])
    # q(x) = (x-b)^k r(x-b); the sign of (x-b)^k on (a,b) is (-1)^k
    sign = -1 if k % 2 else 1
    return positive_on(r.shift(-b) * sign, a, b)


def kernel_integral(kernel: Poly, m: int, lower: Poly, upper: Poly) -> Poly:
    """The polynomial x -> integral of kernel(z)*(x-z)^m for z from lower(x) to upper(x)."""
    total = Poly()
    for k in range(m + 1):
        # (x-z)^m = sum_k C(m,k) x^k (-z)^(m-k)
        g = (kernel * Poly.monomial(m - k, comb(m, k) * (-1) ** (m - k))).antiderivative()
        total = total + Poly.monomial(k) * (g.compose(upper) - g.compose(lower))
    return total


class PiecewisePoly:
    """Piecewise polynomial on [0, inf).

    Piece i is active on [b_i, b_{i+1}); at a breakpoint the right piece is used.
    Continuity across breakpoints is checked exactly unless check_continuity=False
    (derivatives of C^0 functions need not be continuous).
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces: Sequence[Tuple[Number, Poly]], check_continuity: bool = True):
        ps = [(as_rational(b), p if isinstance(p, Poly) else Poly(p)) for b, p in pieces]
        if not ps or ps[0][0] != 0:
            raise ValueError("first breakpoint must be 0")
        for (b0, p0), (b1, p1) in zip(ps, ps[1:]):
            if b1 <= b0:
                raise ValueError("breakpoints must be strictly increasing")
            if check_continuity and p0(b1) != p1(b1):
                raise ValueError("pieces disagree at breakpoint %s" % b1)
        self.pieces: Tuple[Tuple[Fraction, Poly], ...] = tuple(ps)

    @classmethod
    def single(cls, p: Poly) -> "PiecewisePoly":
        return cls([(0, p)])

    def __repr__(self):
        return "PiecewisePoly(%r)" % (list(self.pieces),)

    @property
    def breakpoints(self) -> List[Fraction]:
        return [b for b, _ in self.pieces]

    def piece_at(self, x) -> Poly:
        chosen = self.pieces[0][1]
        for b, p in self.pieces:
            if x >= b:
                chosen = p
            else:
                break
        return chosen

    def __call__(self, x):
        return self.piece_at(x)(x)

    def _combine(self, other, op) -> "PiecewisePoly":
        if not isinstance(other, PiecewisePoly):
            other = PiecewisePoly.single(_coerce(other))
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        return PiecewisePoly([(b, op(self.piece_at(b), other.piece_at(b))) for b in bps],
                             check_continuity=False)

    def __add__(self, other):
        return self._combine(other, lambda p, q: p + q)

    def __sub__(self, other):
        return self._combine(other, lambda p, q: p - q)

    def __mul__(self, other):
        return self._combine(other, lambda p, q: p * q)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return PiecewisePoly([(b, -p) for b, p in self.pieces], check_continuity=False)

    def derivative(self) -> "PiecewisePoly":
        return PiecewisePoly([(b, p.derivative()) for b, p in self.pieces], check_continuity=False)

    def antiderivative(self) -> "PiecewisePoly":
        """Continuous antiderivative vanishing at 0."""
        fixed = []
        for b, p in self.pieces:
            P = p.antiderivative()
            if fixed:
                prev = fixed[-1][1]
                P = P + (prev(b) - P(b))
            fixed.append((b, P))
        return PiecewisePoly(fixed)

    def integrate(self, a: Number, b: Number) -> Fraction:
        F = self.antiderivative()
        return F(as_rational(b)) - F(as_rational(a))

    def same_function(self, other: "PiecewisePoly", upto: Number = None) -> bool:
        """Exact equality as functions on [0, upto) (or on [0, inf) when upto is None)."""
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        for b in bps:
            if upto is not None and b >= upto:
                break
            if self.piece_at(b) != other.piece_at(b):
                return False
        return True

    def is_continuous(self) -> bool:
        return all(p0(b1) == p1(b1) for (_, p0), (b1, p1) in zip(self.pieces, self.pieces[1:]))
