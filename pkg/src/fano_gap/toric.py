"""Lattice polytopes given by half-spaces <x, u> >= -c: vertices, volume, barycenter, toric delta.

The volume is computed twice: as a sum of simplices (interior apex coned over a
pulling triangulation of each facet), and by the cone formula
vol = (1/n) sum_F h_F vol_F where vol_F is measured in a lattice basis of the
facet hyperplane. Both are exact and must agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]

BUILTINS = ("Pn", "P1xPn-1", "BlPn-2Pn", "scaled-simplex")


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class HalfspaceRep:
    n: int
    facets: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...]

    def __init__(self, n: int, facets):
        fs = []
        for u, c in facets:
            u = tuple(Fraction(a) for a in u)
            if len(u) != n:
                raise PolytopeError("normal %r has wrong length" % (u,))
            fs.append((u, Fraction(c)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "facets", tuple(fs))

    def contains(self, x: Sequence[Fraction], strict: bool = False) -> bool:
        for u, c in self.facets:
            s = dot(x, u) + c
            if s < 0 or (strict and s == 0):
                return False
        return True

    def is_reflexive_form(self) -> bool:
        """All offsets 1 and all normals primitive integer vectors."""
        for u, c in self.facets:
            if c != 1 or any(a.denominator != 1 for a in u):
                return False
            g = 0
            for a in u:
                g = gcd(g, int(a))
            if g != 1:
                return False
        return True

    def transform(self, M: Sequence[Sequence[int]]) -> "HalfspaceRep":
        """Image under x -> Mx for an integer matrix with det +-1; normals go to M^-T u."""
        Minv = inverse(M)
        if any(a.denominator != 1 for row in Minv for a in row):
            raise PolytopeError("matrix is not unimodular")
        n = self.n
        facets = [(tuple(sum(Minv[j][i] * u[j] for j in range(n)) for i in range(n)), c)
                  for u, c in self.facets]
        return HalfspaceRep(n, facets)

    def to_text(self) -> str:
        lines = ["H %d %d" % (self.n, len(self.facets))]
        for u, c in self.facets:
            lines.append(" ".join(str(int(a)) for a in u) + " " + str(c))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PolytopeGeometry:
    vertices: Tuple[Vector, ...]
    volume: Fraction
    barycenter: Vector

    def to_json(self) -> dict:
        return {"vertices": [[str(a) for a in v] for v in self.vertices],
                "volume": str(self.volume), "barycenter": [str(a) for a in self.barycenter]}


@dataclass(frozen=True)
class DeltaResult:
    delta: Fraction
    minimizer: Tuple[int, ...]
    barycenter: Vector


# -- linear algebra over Q --------------------------------------------------------

def dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    sign = 1
    out = Fraction(1)
    for i in range(n):
        p = next((k for k in range(i, n) if m[k][i] != 0), None)
        if p is None:
            return Fraction(0)
        if p != i:
            m[i], m[p] = m[p], m[i]
            sign = -sign
        piv = m[i][i]
        out *= piv
        for k in range(i + 1, n):
            if m[k][i]:
                f = m[k][i] / piv
                m[k] = [a - f * b for a, b in zip(m[k], m[i])]
    return out * sign


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Unique solution of a square system, or None when singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for i in range(n):
        p = next((k for k in range(i, n) if m[k][i] != 0), None)
        if p is None:
            return None
        m[i], m[p] = m[p], m[i]
        piv = m[i][i]
        m[i] = [a / piv for a in m[i]]
        for k in range(n):
            if k != i and m[k][i]:
                f = m[k][i]
                m[k] = [a - f * b for a, b in zip(m[k], m[i])]
    return [m[i][n] for i in range(n)]


def inverse(M: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(M)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        x = solve(M, e)
        if x is None:
            raise PolytopeError("singular matrix")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, v)) for v in vectors]
    if not m:
        return 0
    r = 0
    ncol = len(m[0])
    for c in range(ncol):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for k in range(r + 1, len(m)):
            if m[k][c]:
                f = m[k][c] / m[r][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def primitive(u: Sequence[Fraction]) -> Tuple[Tuple[int, ...], Fraction]:
    """Primitive integer vector w and the positive scalar s with u = s w."""
    den = 1
    for a in u:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in u]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints), Fraction(g, den)


def kernel_lattice_basis(u: Sequence[int]) -> Tuple[List[List[int]], List[List[Fraction]]]:
    """Unimodular U with u U = (1, 0, ..., 0) for primitive u; returns (U, U^-1).

    Columns 2..n of U are a basis of the lattice {x in Z^n : <u, x> = 0}.
    """
    n = len(u)
    a = list(u)
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, i, q):  # col_j -= q col_i
        a[j] -= q * a[i]
        for row in U:
            row[j] -= q * row[i]

    while sum(1 for x in a if x) > 1:
        i = min((k for k in range(n) if a[k]), key=lambda k: abs(a[k]))
        for j in range(n):
            if j != i and a[j]:
                colop(j, i, a[j] // a[i])
    i = next(k for k in range(n) if a[k])
    if i != 0:
        a[0], a[i] = a[i], a[0]
        for row in U:
            row[0], row[i] = row[i], row[0]
    if a[0] < 0:
        a[0] = -a[0]
        for row in U:
            row[0] = -row[0]
    if a[0] != 1:
        raise PolytopeError("normal is not primitive")
    return U, inverse(U)


# -- vertices and faces -----------------------------------------------------------------

def enumerate_vertices(H: HalfspaceRep) -> List[Vector]:
    n = H.n
    seen = set()
    out = []
    for idx in combinations(range(len(H.facets)), n):
        rows = [H.facets[i][0] for i in idx]
        x = solve(rows, [-H.facets[i][1] for i in idx])
        if x is None:
            continue
        v = tuple(x)
        if v in seen or not H.contains(v):
            continue
        seen.add(v)
        out.append(v)
    if len(out) < n + 1 or rank([tuple(a - b for a, b in zip(v, out[0])) for v in out[1:]]) < n:
        raise PolytopeError("unbounded-or-degenerate: found %d vertices" % len(out))
    out.sort()
    return out


def _affine_dim(points: Sequence[Vector]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([tuple(a - b for a, b in zip(p, p0)) for p in points[1:]])


class _Faces:
    def __init__(self, H: HalfspaceRep, verts: List[Vector]):
        self.H = H
        self.verts = verts
        self.tight: List[FrozenSet[int]] = [
            frozenset(i for i, v in enumerate(verts) if dot(v, u) + c == 0) for u, c in H.facets]
        self._memo: Dict[FrozenSet[int], List[FrozenSet[int]]] = {}

    def facets_of(self, face: FrozenSet[int], dim: int) -> List[FrozenSet[int]]:
        if face in self._memo:
            return self._memo[face]
        subs = []
        for t in self.tight:
            g = face & t
            if g == face or g in subs or not g:
                continue
            if _affine_dim([self.verts[i] for i in g]) == dim - 1:
                subs.append(g)
        self._memo[face] = subs
        return subs

    def triangulate(self, face: FrozenSet[int], dim: int) -> List[Tuple[int, ...]]:
        """Pulling triangulation: cone the smallest vertex over the facets avoiding it."""
        if dim == 0:
            return [tuple(face)]
        apex = min(face)
        out = []
        for g in self.facets_of(face, dim):
            if apex in g:
                continue
            out += [(apex,) + s for s in self.triangulate(g, dim - 1)]
        return out

    def facet_faces(self) -> List[Tuple[int, FrozenSet[int]]]:
        n = self.H.n
        out = []
        for i, t in enumerate(self.tight):
            if _affine_dim([self.verts[j] for j in t]) == n - 1:
                out.append((i, t))
        return out


def interior_point(H: HalfspaceRep, verts: List[Vector]) -> Vector:
    origin = tuple(Fraction(0) for _ in range(H.n))
    if H.contains(origin, strict=True):
        return origin
    return tuple(sum(v[i] for v in verts) / len(verts) for i in range(H.n))


def volume_barycenter(H: HalfspaceRep) -> PolytopeGeometry:
    verts = enumerate_vertices(H)
    n = H.n
    faces = _Faces(H, verts)
    apex = interior_point(H, verts)
    total = Fraction(0)
    moment = [Fraction(0)] * n
    nf = factorial(n)
    for _, face in faces.facet_faces():
        for simplex in faces.triangulate(face, n - 1):
            pts = [verts[i] for i in simplex]
            vol = abs(det([[p[k] - apex[k] for k in range(n)] for p in pts])) / nf
            total += vol
            for k in range(n):
                moment[k] += vol * (apex[k] + sum(p[k] for p in pts)) / (n + 1)
    if total <= 0:
        raise PolytopeError("degenerate polytope")
    return PolytopeGeometry(vertices=tuple(verts), volume=total,
                            barycenter=tuple(m / total for m in moment))


def facet_lattice_volume(H: HalfspaceRep, verts: List[Vector], faces: "_Faces", i: int,
                         face: FrozenSet[int]) -> Fraction:
    """(n-1)-volume of facet i measured in a lattice basis of its hyperplane."""
    n = H.n
    w, _ = primitive(H.facets[i][0])
    _, Uinv = kernel_lattice_basis(w)
    nf = factorial(n - 1)
    vol = Fraction(0)
    for simplex in faces.triangulate(face, n - 1):
        pts = [verts[j] for j in simplex]
        base = pts[0]
        coords = []
        for p in pts[1:]:
            diff = [p[k] - base[k] for k in range(n)]
            y = [dot(Uinv[r], diff) for r in range(n)]
            assert y[0] == 0
            coords.append(y[1:])
        vol += abs(det(coords)) / nf if n > 1 else Fraction(1)
    return vol


def cone_volume(H: HalfspaceRep) -> Fraction:
    """vol = (1/n) sum_F h_F vol_F, with h_F the lattice height of the apex over F."""
    verts = enumerate_vertices(H)
    faces = _Faces(H, verts)
    apex = interior_point(H, verts)
    total = Fraction(0)
    for i, face in faces.facet_faces():
        u, c = H.facets[i]
        w, s = primitive(u)
        h = (dot(apex, u) + c) / s  # height measured with the primitive normal
        total += h * facet_lattice_volume(H, verts, faces, i, face)
    return total / H.n


def delta_toric(H: HalfspaceRep) -> DeltaResult:
    """min over facets of 1/(<Bc, u> + 1) for a reflexive polytope."""
    if not H.is_reflexive_form():
        raise PolytopeError("delta_toric needs a reflexive polytope (offsets 1, primitive normals)")
    geo = volume_barycenter(H)
    if any(a.denominator != 1 for v in geo.vertices for a in v):
        raise PolytopeError("delta_toric needs lattice vertices")
    best = None
    for u, _ in H.facets:
        val = 1 / (dot(geo.barycenter, u) + 1)
        if best is None or val < best[0]:
            best = (val, tuple(int(a) for a in u))
    return DeltaResult(delta=best[0], minimizer=best[1], barycenter=geo.barycenter)


# -- builtins and file format --------------------------------------------------------------

def _e(n, i, a=1):
    return tuple(a if k == i else 0 for k in range(n))


def builtin(name: str, n: int) -> HalfspaceRep:
    if n < 2:
        raise PolytopeError("need n >= 2")
    ones = tuple(-1 for _ in range(n))
    if name == "Pn":
        facets = [(_e(n, i), 1) for i in range(n)] + [(ones, 1)]
    elif name == "P1xPn-1":
        facets = [(_e(n, 0), 1), (_e(n, 0, -1), 1)]
        facets += [(_e(n, i), 1) for i in range(1, n)]
        facets += [((0,) + tuple(-1 for _ in range(n - 1)), 1)]
    elif name == "BlPn-2Pn":
        facets = [((1, 1) + (0,) * (n - 2), 1), (ones, 1)] + [(_e(n, i), 1) for i in range(n)]
    elif name == "scaled-simplex":
        # (n+1) times the standard simplex, at the origin corner: not reflexive as written
        facets = [(_e(n, i), 0) for i in range(n)] + [(ones, n + 1)]
    else:
        raise PolytopeError("unknown builtin %r; choose from %s" % (name, ", ".join(BUILTINS)))
    return HalfspaceRep(n, facets)


def parse_text(text: str) -> HalfspaceRep:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "H" or len(lines[0]) != 3:
        raise PolytopeError("first line must be 'H n m'")
    n, m = int(lines[0][1]), int(lines[0][2])
    rows = lines[1:]
    if len(rows) != m:
        raise PolytopeError("expected %d facet lines, got %d" % (m, len(rows)))
    facets = []
    for r in rows:
        if len(r) != n + 1:
            raise PolytopeError("facet line needs %d integers and an offset: %r" % (n, " ".join(r)))
        facets.append((tuple(int(a) for a in r[:n]), Fraction(r[n])))
    return HalfspaceRep(n, facets)
