"""Exact V-polytope geometry over the rationals.

Bodies are finite point lists whose convex hull is implied. Minkowski sums,
cartesian products and dilatations act on the point lists directly; volume
is computed from an exact convex hull. All arithmetic is integer or
:class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .seqcore import RatLike, Seq, rat


class DimensionMismatchError(ValueError):
    pass


class VerificationError(AssertionError):
    """An exact cross-check between two computations failed."""


Point = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class Body:
    """Convex hull of ``vertices`` in R^dim.

    Duplicate points are dropped on construction (first occurrence kept);
    points interior to the hull are allowed and ignored by ``volume``.
    """

    dim: int
    vertices: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        seen = {}
        for v in self.vertices:
            p = tuple(rat(x) for x in v)
            if len(p) != self.dim:
                raise DimensionMismatchError(
                    f"point {p} has {len(p)} coordinates, expected {self.dim}"
                )
            seen.setdefault(p, None)
        if not seen:
            raise ValueError("a body needs at least one point")
        object.__setattr__(self, "vertices", tuple(seen))

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[str(x) for x in v] for v in self.vertices]}


def make_body(dim: int, points: Iterable[Iterable[RatLike]]) -> Body:
    return Body(dim, tuple(tuple(p) for p in points))


# ---------------------------------------------------------------- constructors


def standard_simplex(n: int) -> Body:
    if n < 1:
        raise ValueError("n must be >= 1")
    pts = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        pts.append(tuple(Fraction(int(i == j)) for j in range(n)))
    return Body(n, tuple(pts))


def diag_simplex(lam: Sequence[RatLike]) -> Body:
    """The standard simplex with coordinate ``i`` stretched by ``lam[i] > 0``."""
    lam = [rat(x) for x in lam]
    if not lam or any(x <= 0 for x in lam):
        raise ValueError("diag_simplex needs a nonempty list of positive scales")
    n = len(lam)
    pts = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        pts.append(tuple(lam[i] if i == j else Fraction(0) for j in range(n)))
    return Body(n, tuple(pts))


def box(edges: Sequence[RatLike]) -> Body:
    edges = [rat(x) for x in edges]
    if not edges or any(e <= 0 for e in edges):
        raise ValueError("box needs a nonempty list of positive edge lengths")
    pts = [()]
    for e in edges:
        pts = [p + (x,) for p in pts for x in (Fraction(0), e)]
    return Body(len(edges), tuple(pts))


# ---------------------------------------------------------------- operations


def scale_body(a: Body, t: RatLike) -> Body:
    t = rat(t)
    if t < 0:
        raise ValueError("dilatation factor must be nonnegative")
    return Body(a.dim, tuple(tuple(t * x for x in v) for v in a.vertices))


def translate(a: Body, p: Sequence[RatLike]) -> Body:
    return minkowski_sum(a, Body(a.dim, (tuple(p),)))


def minkowski_sum(a: Body, b: Body) -> Body:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cannot add bodies of dims {a.dim} and {b.dim}")
    return Body(
        a.dim,
        tuple(tuple(x + y for x, y in zip(u, v)) for u in a.vertices for v in b.vertices),
    )


def cartesian_product(a: Body, b: Body) -> Body:
    return Body(a.dim + b.dim, tuple(u + v for u in a.vertices for v in b.vertices))


# ---------------------------------------------------------------- exact linear algebra


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve_exact(matrix: Sequence[Sequence[int]], rhs: Sequence[Fraction]) -> list:
    """Solve a nonsingular square system with integer matrix and rational rhs.

    Forward elimination is fraction-free (Bareiss) on the matrix augmented
    with the rhs scaled to integers; only the back substitution divides.
    """
    n = len(matrix)
    denom = math.lcm(*(Fraction(y).denominator for y in rhs))
    m = [list(row) + [int(Fraction(y) * denom)] for row, y in zip(matrix, rhs)]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                raise ZeroDivisionError("singular system")
            m[k], m[swap] = m[swap], m[k]
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n]) - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / m[i][i]
    return [xi / denom for xi in x]


def _integerize(points: Sequence[Point]) -> tuple:
    scale = math.lcm(*(x.denominator for p in points for x in p))
    return [tuple(int(x * scale) for x in p) for p in points], scale


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    basis: list = []  # echelon rows as (pivot column, row)
    p0 = points[0]
    for p in points[1:]:
        r = [Fraction(x) for x in _sub(p, p0)]
        for col, row in basis:
            if r[col]:
                f = r[col] / row[col]
                r = [x - f * y for x, y in zip(r, row)]
        col = next((i for i, x in enumerate(r) if x), None)
        if col is not None:
            basis.append((col, r))
    return len(basis)


def _normal(pts: Sequence[Point]) -> tuple:
    """Integer normal of the hyperplane through ``n`` points in R^n (zero if degenerate)."""
    n = len(pts[0])
    rows = [_sub(p, pts[0]) for p in pts[1:]]
    out = []
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows]
        out.append((-1) ** j * det(minor))
    return tuple(out)


def _initial_simplex(points: Sequence[Point], n: int):
    chosen = [0]
    basis: list = []
    for idx in range(1, len(points)):
        r = [Fraction(x) for x in _sub(points[idx], points[0])]
        for col, row in basis:
            if r[col]:
                f = r[col] / row[col]
                r = [x - f * y for x, y in zip(r, row)]
        col = next((i for i, x in enumerate(r) if x), None)
        if col is not None:
            basis.append((col, r))
            chosen.append(idx)
            if len(chosen) == n + 1:
                return chosen
    return None


def _hull_facets(points: Sequence[Point], n: int):
    """Beneath-beyond hull over integer points.

    Returns simplicial boundary facets as tuples of point indices, together
    with the scaled interior point ``S`` (the vertex sum of the initial
    simplex, i.e. ``(n + 1)`` times its centroid); ``None`` if the points
    are not full-dimensional. Coplanar facets are kept unmerged, which is
    harmless for volume since visibility depends only on the plane.
    """
    start = _initial_simplex(points, n)
    if start is None:
        return None
    S = tuple(sum(points[i][k] for i in start) for k in range(n))

    def make_facet(verts):
        pts = [points[i] for i in verts]
        normal = _normal(pts)
        offset = _dot(normal, pts[0])
        # interior value: normal . (S/(n+1)) - offset, scaled by n+1
        if _dot(normal, S) - (n + 1) * offset > 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        return verts, normal, offset

    facets = [make_facet(tuple(v for v in start if v != skip)) for skip in start]
    in_start = set(start)
    for idx, p in enumerate(points):
        if idx in in_start:
            continue
        visible = [f for f in facets if _dot(f[1], p) > f[2]]
        if not visible:
            continue
        ridge_count: dict = {}
        for verts, _, _ in visible:
            for k in range(n):
                ridge = verts[:k] + verts[k + 1:]
                key = frozenset(ridge)
                if key in ridge_count:
                    ridge_count[key] = None
                else:
                    ridge_count[key] = ridge
        visible_ids = {id(f) for f in visible}
        facets = [f for f in facets if id(f) not in visible_ids]
        for ridge in ridge_count.values():
            if ridge is not None:
                facets.append(make_facet(ridge + (idx,)))
    return [f[0] for f in facets], S


def hull_facets(a: Body):
    """Simplicial boundary facets (as vertex tuples) of a full-dimensional body, else None."""
    pts, scale = _integerize(a.vertices)
    res = _hull_facets(pts, a.dim)
    if res is None:
        return None
    return [tuple(a.vertices[i] for i in f) for f in res[0]]


def volume(a: Body) -> Fraction:
    """Exact n-dimensional volume of the hull; 0 for lower-dimensional hulls."""
    n = a.dim
    pts, scale = _integerize(a.vertices)
    res = _hull_facets(pts, n)
    if res is None:
        return Fraction(0)
    facets, S = res
    total = 0
    for f in facets:
        total += abs(det([tuple((n + 1) * x - s for x, s in zip(pts[i], S)) for i in f]))
    return Fraction(total, (n + 1) ** n * math.factorial(n) * scale**n)


def facet_scan_volume(a: Body) -> Fraction:
    """Reference volume by exhaustive facet enumeration and pulling triangulation.

    Every affinely independent n-subset spanning a supporting hyperplane
    yields a facet; faces are then triangulated recursively by pulling their
    smallest point. Cost grows like ``m^(n+1)``: only for small point sets.
    """
    n = a.dim
    pts, scale = _integerize(a.vertices)
    m = len(pts)
    if m < n + 1 or affine_rank(pts) < n:
        return Fraction(0)
    facets = set()
    for subset in combinations(range(m), n):
        normal = _normal([pts[i] for i in subset])
        if not any(normal):
            continue
        offset = _dot(normal, pts[subset[0]])
        values = [_dot(normal, p) - offset for p in pts]
        if all(v <= 0 for v in values) or all(v >= 0 for v in values):
            facets.add(frozenset(i for i, v in enumerate(values) if v == 0))
    facets = list(facets)

    def face_dim(face):
        return affine_rank([pts[i] for i in face])

    def triangulate(face, k):
        if k == 0:
            return [(min(face),)]
        apex = min(face)
        subfaces = set()
        for f in facets:
            g = face & f
            if apex not in g and len(g) >= k and face_dim(g) == k - 1:
                subfaces.add(frozenset(g))
        out = []
        for g in sorted(subfaces, key=sorted):
            out.extend(s + (apex,) for s in triangulate(g, k - 1))
        return out

    total = 0
    for simplex in triangulate(frozenset(range(m)), n):
        base = pts[simplex[-1]]
        total += abs(det([_sub(pts[i], base) for i in simplex[:-1]]))
    return Fraction(total, math.factorial(n) * scale**n)


# ---------------------------------------------------------------- Minkowski polynomial


@dataclass(frozen=True)
class VolPoly:
    """Coefficients ``a_0..a_n`` of ``t -> Vol_n(tP + Q)``."""

    dim: int
    coeffs: Seq

    def __call__(self, t: RatLike) -> Fraction:
        t = rat(t)
        return sum((c * t**i for i, c in enumerate(self.coeffs)), Fraction(0))


def volume_poly(p: Body, q: Body) -> VolPoly:
    """Interpolate ``Vol_n(tP + Q)`` from exact volumes at ``t = 0, 1, ..., n``."""
    if p.dim != q.dim:
        raise DimensionMismatchError(f"bodies of dims {p.dim} and {q.dim}")
    n = p.dim
    values = [volume(minkowski_sum(scale_body(p, t), q)) for t in range(n + 1)]
    vandermonde = [[t**i for i in range(n + 1)] for t in range(n + 1)]
    coeffs = tuple(solve_exact(vandermonde, values))
    if coeffs[0] != volume(q) or coeffs[n] != volume(p):
        raise VerificationError("volume polynomial endpoints disagree with Vol(Q), Vol(P)")
    if any(c < 0 for c in coeffs):
        raise VerificationError(f"negative volume polynomial coefficient in {coeffs}")
    return VolPoly(n, coeffs)


def mixed_volume(p: Body, q: Body, k: int) -> Fraction:
    """``V(P,..,P,Q,..,Q)`` with ``k`` copies of P, normalized so ``V(Q,..,Q) = n! Vol(Q)``."""
    n = p.dim
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}]")
    a = volume_poly(p, q).coeffs
    return math.factorial(k) * math.factorial(n - k) * a[k]
