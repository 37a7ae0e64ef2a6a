"""Rigorous enclosures [lo, hi] with rational endpoints.

Transcendental values (e^x, log, sqrt, pi) come from truncated series whose
remainders are bounded by geometric majorants and added to both endpoints.
Endpoints are rounded outward to dyadic rationals so sizes stay bounded.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt
from typing import Callable, Optional

from .poly import as_rational

MAX_BITS = 4096


def _log2_floor(x: Fraction) -> int:
    """floor(log2 |x|) for x != 0."""
    x = abs(x)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    # now 2^(e-1) < x < 2^(e+1)
    if x >= Fraction(2) ** e:
        return e
    return e - 1


def round_down(x: Fraction, bits: int) -> Fraction:
    """Largest dyadic <= x with about `bits` significant bits."""
    if x == 0:
        return x
    k = bits - _log2_floor(x)
    if k >= 0:
        return Fraction(floor(x * (1 << k)), 1 << k)
    return Fraction(floor(x / (1 << -k)) * (1 << -k))


def round_up(x: Fraction, bits: int) -> Fraction:
    return -round_down(-x, bits)


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction
    bits: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty enclosure [%s, %s]" % (self.lo, self.hi))

    @classmethod
    def point(cls, x) -> "Enclosure":
        x = as_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            x = Fraction(x)
        return self.lo <= x <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return "Enclosure[%.12g, %.12g]" % (float(self.lo), float(self.hi))

    def rounded(self, bits: int) -> "Enclosure":
        return Enclosure(round_down(self.lo, bits), round_up(self.hi, bits), self.bits)

    def __add__(self, other):
        o = _enc(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi, self.bits)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.bits)

    def __sub__(self, other):
        return self + (-_enc(other))

    def __rsub__(self, other):
        return _enc(other) - self

    def __mul__(self, other):
        o = _enc(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(ps), max(ps), self.bits)

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure contains 0")
        return Enclosure(1 / self.hi, 1 / self.lo, self.bits)

    def __truediv__(self, other):
        return self * _enc(other).reciprocal()

    def __rtruediv__(self, other):
        return _enc(other) * self.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return (self ** (-k)).reciprocal()
        if k % 2 == 1 or self.lo >= 0:
            return Enclosure(self.lo ** k, self.hi ** k, self.bits)
        if self.hi <= 0:
            return Enclosure(self.hi ** k, self.lo ** k, self.bits)
        return Enclosure(Fraction(0), max(self.lo ** k, self.hi ** k), self.bits)

    # decisions: True / False when certain, None when the enclosure straddles
    def less_than(self, y) -> Optional[bool]:
        y = _enc(y)
        if self.hi < y.lo:
            return True
        if self.lo >= y.hi:
            return False
        return None

    def greater_than(self, y) -> Optional[bool]:
        y = _enc(y)
        if self.lo > y.hi:
            return True
        if self.hi <= y.lo:
            return False
        return None


def _enc(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.point(as_rational(x))


def _check_bits(bits: int) -> int:
    if not isinstance(bits, int) or bits < 1:
        raise ValueError("bits must be a positive integer")
    return bits


def enclose_exp(x, bits: int = 256) -> Enclosure:
    """Enclosure of e^x with width <= 2^-bits * max(1, e^x)."""
    x = as_rational(x)
    _check_bits(bits)
    if x == 0:
        return Enclosure(Fraction(1), Fraction(1), bits)
    # reduce: |y| <= 1/2 with y = x / 2^k
    k = 0
    while abs(x) > Fraction(1, 2) * (1 << k):
        k += 1
    y = x / (1 << k)
    # magnitude of e^x in bits, used for absolute width
    mag = max(0, int(abs(x) * 3 / 2) + 1) if x > 0 else 0
    work = bits + k + mag + 16
    eps = Fraction(1, 1 << work)
    # terms y^i/i!; tail after N terms <= |y|^(N+1)/(N+1)! * 1/(1 - |y|/(N+2)) <= 2*|y|^(N+1)/(N+1)!
    p, q = y.numerator, y.denominator
    N = 1
    term = abs(y)
    while 2 * term > eps:
        N += 1
        term = term * abs(y) / N
    # common denominator q^N N!: S = sum p^i q^(N-i) N!/i!
    fact = [1] * (N + 1)
    for i in range(1, N + 1):
        fact[i] = fact[i - 1] * i
    num = sum(p ** i * q ** (N - i) * (fact[N] // fact[i]) for i in range(N + 1))
    S = Fraction(num, q ** N * fact[N])
    tail = 2 * term
    e = Enclosure(round_down(S - tail, work), round_up(S + tail, work))
    for _ in range(k):
        e = Enclosure(round_down(e.lo * e.lo, work), round_up(e.hi * e.hi, work))
    return Enclosure(e.lo, e.hi, bits)


def _atanh_inv(m: int, work: int) -> Enclosure:
    """atanh(1/m) for integer m >= 2."""
    return _atanh(Fraction(1, m), work)


def _atanh(z: Fraction, work: int) -> Enclosure:
    """atanh(z) for |z| <= 1/2 via sum z^(2i+1)/(2i+1), tail by geometric majorant."""
    eps = Fraction(1, 1 << work)
    z2 = z * z
    s = Fraction(0)
    t = z
    i = 0
    while True:
        s += t / (2 * i + 1)
        t = t * z2
        i += 1
        tail = abs(t) / (2 * i + 1) / (1 - z2)
        if tail <= eps:
            break
        if i % 8 == 0:
            s = round_down(s, work + 8)  # keep sizes bounded; error absorbed below
    slack = Fraction(i, 1 << (work + 6))
    return Enclosure(s - tail - slack, s + tail + slack)


def enclose_log(x, bits: int = 256) -> Enclosure:
    """Enclosure of log x (x > 0) via log x = 2 atanh((x-1)/(x+1)) after reduction by powers of 2."""
    x = as_rational(x)
    _check_bits(bits)
    if x <= 0:
        raise ValueError("log needs a positive argument")
    if x == 1:
        return Enclosure(Fraction(0), Fraction(0), bits)
    m = _log2_floor(x)
    y = x / Fraction(2) ** m
    if y > Fraction(4, 3):
        m += 1
        y = y / 2
    work = bits + abs(m).bit_length() + 16
    z = (y - 1) / (y + 1)
    part = _atanh(z, work) * 2 if z != 0 else Enclosure.point(0)
    if m:
        part = part + _atanh_inv(3, work) * (2 * m)  # log 2 = 2 atanh(1/3)
    return Enclosure(round_down(part.lo, work), round_up(part.hi, work), bits)


def enclose_sqrt(x, bits: int = 256) -> Enclosure:
    x = as_rational(x)
    _check_bits(bits)
    if x < 0:
        raise ValueError("sqrt of a negative number")
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Enclosure(Fraction(rn, rd), Fraction(rn, rd), bits)
    k = bits + max(0, _log2_floor(x) // 2 + 1) + 2
    s = isqrt(floor(x * (1 << (2 * k))))
    lo, hi = Fraction(s, 1 << k), Fraction(s + 1, 1 << k)
    assert lo * lo <= x <= hi * hi
    return Enclosure(lo, hi, bits)


def enclose_pi(bits: int = 256) -> Enclosure:
    """pi = 16 atan(1/5) - 4 atan(1/239) with alternating-series remainders."""
    _check_bits(bits)
    work = bits + 8

    def atan_inv(m: int) -> Enclosure:
        eps = Fraction(1, 1 << work)
        s = Fraction(0)
        i = 0
        while True:
            t = Fraction(1, (2 * i + 1) * m ** (2 * i + 1))
            if t < eps:
                # alternating with decreasing terms: remainder has the sign of t_i and |.| < t
                return Enclosure(s - t, s) if i % 2 else Enclosure(s, s + t)
            s += t if i % 2 == 0 else -t
            i += 1

    e = atan_inv(5) * 16 - atan_inv(239) * 4
    return Enclosure(round_down(e.lo, work), round_up(e.hi, work), bits)


def sqrt_enclosure(e: Enclosure, bits: int = 256) -> Enclosure:
    """Monotone extension of sqrt to an enclosure."""
    return Enclosure(enclose_sqrt(e.lo, bits).lo, enclose_sqrt(e.hi, bits).hi, bits)


def log_enclosure(e: Enclosure, bits: int = 256) -> Enclosure:
    return Enclosure(enclose_log(e.lo, bits).lo, enclose_log(e.hi, bits).hi, bits)


def decide(test: Callable[[int], Optional[bool]], bits: int = 256, cap: int = MAX_BITS):
    """Run test(bits), doubling bits while it returns None.

    Returns (verdict, bits_used); verdict is None ("undecided") if the cap is reached.
    """
    b = bits
    while True:
        v = test(b)
        if v is not None or b >= cap:
            return v, b
        b = min(2 * b, cap)
