"""Closed-form anticanonical volumes and the comparisons made against 2n^n."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Dict, List, Sequence, Tuple

from .exact import Poly


@dataclass(frozen=True)
class VolumeReport:
    family: str
    params: Dict[str, object]
    volume: Fraction
    n: int
    smooth: bool = True
    comparisons: Tuple[Tuple[str, Fraction, bool], ...] = field(default=())

    @classmethod
    def build(cls, family, params, volume, n, bounds=None, smooth=True) -> "VolumeReport":
        volume = Fraction(volume)
        if bounds is None:
            bounds = {"2n^n": Fraction(2 * n ** n)}
        comps = tuple((name, Fraction(b), volume < b) for name, b in bounds.items())
        return cls(family=family, params=dict(params), volume=volume, n=n, smooth=smooth,
                   comparisons=comps)

    def parity_ok(self) -> bool:
        """Smooth odd-dimensional X has even (-K_X)^n; an odd value there signals bad input."""
        if not self.smooth or self.n % 2 == 0:
            return True
        return self.volume.denominator == 1 and self.volume.numerator % 2 == 0

    def to_json(self) -> dict:
        return {"family": self.family, "params": self.params, "n": self.n,
                "volume": str(self.volume), "parity_ok": self.parity_ok(),
                "comparisons": [{"bound": b, "value": str(v), "less": s} for b, v, s in self.comparisons]}


def c_sequence(n: int) -> List[int]:
    """c_r = C(n,r)(r+1)^r(n-r+1)^(n-r), the volumes of P^r x P^(n-r)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return [comb(n, r) * (r + 1) ** r * (n - r + 1) ** (n - r) for r in range(n + 1)]


def c_sequence_report(n: int) -> Dict[str, bool]:
    c = c_sequence(n)
    half = n // 2
    return {
        "symmetric": all(c[r] == c[n - r] for r in range(n + 1)),
        "strict_chain": all(c[r] > c[r + 1] for r in range(half)),
        "c1_is_2n^n": c[1] == 2 * n ** n,
    }


def vol_blowup_hyperplane_subvariety(n: int, dY: int) -> Fraction:
    """Blowup of P^n along a degree-dY codimension-2 subvariety of a hyperplane."""
    if n < 3 or not 1 <= dY <= n:
        raise ValueError("need n >= 3 and 1 <= dY <= n")
    if dY == 1:
        return Fraction(2 * n ** n)
    return Fraction(dY * n ** n - (n + 1 - dY) ** n, dY - 1)


def vol_blowup_segre(n: int, dY: int) -> Fraction:
    """Segre-class expansion: (n+1)^n - sum_k C(n,k)(n+1)^(n-k)(-1)^(k-2)(sum_{i<=k-2} dY^i) dY."""
    total = Fraction((n + 1) ** n)
    for k in range(2, n + 1):
        total -= comb(n, k) * (n + 1) ** (n - k) * (-1) ** (k - 2) * sum(dY ** i for i in range(k - 1)) * dY
    return total


def bl_volume_poly(n: int) -> Poly:
    """vol(-K - tE) = (n-t)^(n-1)(2n+(n-1)t) for the blowup along a codim-2 linear space."""
    return Poly([n, -1]) ** (n - 1) * Poly([2 * n, n - 1])


def bl_volume_intersection(n: int) -> Poly:
    """(n+1)^n - sum_k C(n,k)(n+1)^(n-k)(-1-t)^k (k-1) as a polynomial in t."""
    total = Poly([(n + 1) ** n])
    for k in range(2, n + 1):
        total = total - Poly([-1, -1]) ** k * (comb(n, k) * (n + 1) ** (n - k) * (k - 1))
    return total


def s_invariant_bl(n: int) -> Fraction:
    if n < 2:
        raise ValueError("need n >= 2")
    return bl_volume_poly(n).integrate(0, n) / (2 * n ** n)


def beta_bl(n: int) -> Fraction:
    """A - S with A = 1."""
    return 1 - s_invariant_bl(n)


def vol_hypersurface(n: int, b: int) -> Fraction:
    """Degree-d hypersurface of index b = n+2-d in a smooth quadric-type setting: (n+2-b)^n b."""
    if not 1 <= b <= n:
        raise ValueError("need 1 <= b <= n")
    return Fraction((n + 2 - b) ** n * b)


def hypersurface_report(n: int, b: int) -> VolumeReport:
    return VolumeReport.build("hypersurface", {"b": b, "d": n + 2 - b}, vol_hypersurface(n, b), n)


def vol_weighted_hypersurface(weights: Sequence[int], degree: int) -> Fraction:
    """degree (sum a - degree)^n / prod a, with n = len(weights) - 2."""
    n = len(weights) - 2
    if n < 1:
        raise ValueError("need at least 3 weights")
    index = sum(weights) - degree
    if index <= 0:
        raise ValueError("not Fano: degree >= sum of weights")
    return Fraction(degree * index ** n, prod(weights))


def vol_double_cover(n: int, branch_degree: int) -> Fraction:
    """Double cover of P^n branched in degree 2k: 2 (n+1-k)^n."""
    if branch_degree % 2:
        raise ValueError("branch degree must be even")
    index = n + 1 - branch_degree // 2
    if index <= 0:
        raise ValueError("not Fano")
    return Fraction(2 * index ** n)


def cone_normalized_volume(r: int, vol) -> Fraction:
    """Normalized volume of the cone vertex over a Fano of index r: r (-K)^n."""
    if r < 1 or Fraction(vol) <= 0:
        raise ValueError("need r >= 1 and vol > 0")
    return r * Fraction(vol)


def fujita_liu_bound(n: int, nvol) -> Fraction:
    return Fraction(n + 1, n) ** n * Fraction(nvol)


def toric_singular_checks(n_max: int = 30) -> Dict[str, bool]:
    """(3/2)^2 * 2 = 9/2, and (16/27)(n+1)^n < 2n^n for 3 <= n <= n_max."""
    return {
        "surface_bound": fujita_liu_bound(2, 2) == Fraction(9, 2),
        "higher_dim": all(Fraction(16, 27) * (n + 1) ** n < 2 * n ** n for n in range(3, n_max + 1)),
        "odp_strict": all(fujita_liu_bound(n, 2 * (n - 1) ** n) < 2 * n ** n for n in range(3, n_max + 1)),
    }


def vol_product(n: int, r: int, dZ) -> Fraction:
    """(r+1)^r C(n,r) dZ = (-K_{P^r x Z})^n with dZ = (-K_Z)^(n-r)."""
    if not 1 <= r <= n - 1:
        raise ValueError("need 1 <= r <= n-1")
    return (r + 1) ** r * comb(n, r) * Fraction(dZ)
