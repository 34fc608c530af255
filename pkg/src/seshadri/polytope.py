"""Exact rational polytopes in vertex representation.

Polytopes are stored as sorted tuples of rational points.  Face
enumeration, functional images (lattice widths), hyperplane slices in
kernel coordinates, lattice lengths, edge data at a vertex, and
normalized volume are all computed in exact rational arithmetic; the
coordinates of every derived object (slice, face polytope, quotient
image) are chosen through Hermite bases so they are reproducible.

Rational (non-integral) polytopes are first-class citizens; nothing
rounds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .lattice import (
    IntMatrix,
    IntVector,
    determinant,
    dot,
    invert_unimodular,
    kernel_lattice,
    kernel_splitting,
    matvec,
    primitive_part,
)
from .rationals import format_rational, parse_rational, to_fraction

RationalPoint = tuple[Fraction, ...]


def make_point(coords: Iterable) -> RationalPoint:
    return tuple(to_fraction(c) for c in coords)


def _point_sub(a: RationalPoint, b: RationalPoint) -> RationalPoint:
    return tuple(x - y for x, y in zip(a, b))


def _scale_to_int(vec: Sequence[Fraction]) -> IntVector:
    """Clear denominators, keeping direction; zero stays zero."""
    denoms = [Fraction(x).denominator for x in vec]
    m = lcm(*denoms) if denoms else 1
    return tuple(int(x * m) for x in vec)


def _rank_of_vectors(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by fraction Gaussian elimination."""
    M = [list(map(Fraction, v)) for v in vectors]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    col = 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def solve_in_basis(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Solve sum_i c_i * basis_i = target exactly; raises if inconsistent."""
    d = len(basis)
    n = len(target)
    M = [[Fraction(basis[j][row]) for j in range(d)] + [Fraction(target[row])]
         for row in range(n)]
    pivots = []
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append((r, c))
        r += 1
    coeffs = [Fraction(0)] * d
    for row, c in pivots:
        coeffs[c] = M[row][d] / M[row][c]
    for i in range(n):
        if all(M[i][c] == 0 for c in range(d)) and M[i][d] != 0:
            raise ArithmeticError("target is not in the span of the basis")
    return tuple(coeffs)


@dataclass(frozen=True)
class Face:
    """A face of a polytope, recorded by vertex indices into the sorted list."""

    vertex_indices: tuple[int, ...]
    dim: int


@dataclass(frozen=True)
class Interval:
    """A closed rational interval, the image of a polytope under a functional."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, t: Fraction) -> bool:
        return self.lo <= t <= self.hi


class LatticePolytope:
    """Convex polytope with exact rational vertices in an ambient lattice.

    The constructor expects a minimal vertex list (duplicates are
    removed, order is normalized); use :func:`convex_hull_vertices` to
    reduce an arbitrary point cloud first.
    """

    def __init__(self, ambient_rank: int, vertices: Iterable[Iterable]):
        pts = sorted({make_point(v) for v in vertices})
        if not pts:
            raise ValueError("polytope needs at least one vertex")
        for p in pts:
            if len(p) != ambient_rank:
                raise ValueError("vertex length does not match ambient rank")
        self.ambient_rank = int(ambient_rank)
        self.vertices: tuple[RationalPoint, ...] = tuple(pts)

    def __eq__(self, other):
        return (isinstance(other, LatticePolytope)
                and self.ambient_rank == other.ambient_rank
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient_rank, self.vertices))

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(map(str, v)) + ")" for v in self.vertices)
        return f"LatticePolytope(rank={self.ambient_rank}, vertices=[{vs}])"

    @cached_property
    def dim(self) -> int:
        v0 = self.vertices[0]
        return _rank_of_vectors([_point_sub(v, v0) for v in self.vertices[1:]])

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for v in self.vertices for c in v)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """All proper faces, graded by dimension (requires dim >= 1)."""
        if self.dim < 1:
            raise ValueError("face lattice needs a polytope of dimension >= 1")
        if self.dim == self.ambient_rank:
            points = self.vertices
        else:
            points, _, _ = _affine_hull_coordinates(self.vertices)
        sets = _face_index_sets(points, self.dim)
        out = []
        for s in sorted(sets, key=lambda s: (len(s), tuple(sorted(s)))):
            idx = tuple(sorted(s))
            pts = [self.vertices[i] for i in idx]
            d = _rank_of_vectors([_point_sub(p, pts[0]) for p in pts[1:]])
            out.append(Face(vertex_indices=idx, dim=d))
        out.sort(key=lambda f: (f.dim, f.vertex_indices))
        return tuple(out)

    @cached_property
    def facet_outward_normals(self) -> tuple[tuple[Face, IntVector], ...]:
        """Primitive outward normal for each facet (faces of dim = dim - 1)."""
        result = []
        for f in self.faces:
            if f.dim != self.dim - 1:
                continue
            result.append((f, _facet_normal(self, f)))
        return tuple(result)

    def to_json_dict(self) -> dict:
        return {
            "rank": self.ambient_rank,
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "LatticePolytope":
        if not isinstance(data, dict):
            raise ValueError("polytope JSON must be an object")
        if "rank" not in data or "vertices" not in data:
            raise ValueError("polytope JSON needs 'rank' and 'vertices' fields")
        rank = data["rank"]
        if not isinstance(rank, int) or rank < 1:
            raise ValueError(f"rank: expected a positive integer, got {rank!r}")
        verts = data["vertices"]
        if not isinstance(verts, list) or not verts:
            raise ValueError("vertices: expected a nonempty list")
        points = []
        for i, v in enumerate(verts):
            if not isinstance(v, list) or len(v) != rank:
                raise ValueError(f"vertices[{i}]: expected a list of {rank} coordinates")
            coords = []
            for j, c in enumerate(v):
                try:
                    coords.append(parse_rational(c))
                except ValueError as exc:
                    raise ValueError(f"vertices[{i}][{j}]: {exc}") from exc
            points.append(coords)
        return convex_hull_vertices(points)

    @classmethod
    def loads(cls, text: str) -> "LatticePolytope":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from exc
        return cls.from_json_dict(data)


def _in_convex_hull(point: RationalPoint, points: Sequence[RationalPoint]) -> bool:
    """Exact membership test: is point a convex combination of points?

    Phase-1 simplex with Bland's rule over Fractions; small systems only
    (the equality constraints are the coordinates plus the affine one).
    """
    if not points:
        return False
    if point in points:
        return True
    n = len(point)
    m = len(points)
    nrows = n + 1
    # Equations: sum l_i q_i = p and sum l_i = 1, l >= 0, plus artificials.
    b = [Fraction(point[r]) if r < n else Fraction(1) for r in range(nrows)]
    cols = [[Fraction(points[i][r]) if r < n else Fraction(1) for r in range(nrows)]
            for i in range(m)]
    T = []
    for r in range(nrows):
        row = [cols[i][r] for i in range(m)]
        if b[r] < 0:
            row = [-x for x in row]
            rhs = -b[r]
        else:
            rhs = b[r]
        art = [Fraction(1) if j == r else Fraction(0) for j in range(nrows)]
        T.append(row + art + [rhs])
    ncols = m + nrows
    basis = [m + r for r in range(nrows)]
    # Objective: minimize the sum of artificials.
    obj = [Fraction(0)] * (ncols + 1)
    for r in range(nrows):
        obj = [o - t for o, t in zip(obj, T[r])]
    while True:
        enter = next((j for j in range(m) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(nrows):
            if T[r][enter] > 0:
                ratio = T[r][ncols] / T[r][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            break  # unbounded cannot happen for phase 1
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(nrows):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * b_ for a, b_ in zip(T[i], T[r])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * b_ for a, b_ in zip(obj, T[r])]
        basis[r] = enter
    return -obj[ncols] == 0


def convex_hull_vertices(points: Iterable[Iterable]) -> LatticePolytope:
    """Reduce a point cloud to the minimal vertex set of its hull."""
    pts = sorted({make_point(p) for p in points})
    if not pts:
        raise ValueError("need at least one point")
    rank = len(pts[0])
    if len(pts) == 1:
        return LatticePolytope(rank, pts)
    keep = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not _in_convex_hull(p, others):
            keep.append(p)
    return LatticePolytope(rank, keep)


def _face_index_sets(points: Sequence[RationalPoint], d: int) -> set[frozenset]:
    """Proper faces of a full-dimensional point configuration.

    Facets are found as supporting hyperplanes through d-subsets of the
    vertices; every lower face is an intersection of facets.
    """
    m = len(points)
    facets: set[frozenset] = set()
    for subset in combinations(range(m), d):
        base = points[subset[0]]
        diffs = [_scale_to_int(_point_sub(points[i], base)) for i in subset[1:]]
        if _rank_of_vectors(diffs) != d - 1:
            continue
        normals = kernel_lattice(diffs, d)
        if len(normals) != 1:
            continue
        w = normals[0]
        values = [dot(w, p) for p in points]
        h = dot(w, base)
        if all(v <= h for v in values):
            facets.add(frozenset(i for i in range(m) if values[i] == h))
        elif all(v >= h for v in values):
            facets.add(frozenset(i for i in range(m) if values[i] == h))
    faces = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in faces and h not in new:
                    new.add(h)
        faces |= new
        frontier = new
    return faces


def _facet_normal(P: LatticePolytope, facet: Face) -> IntVector:
    """Primitive outward normal of a facet of a full-dimensional polytope."""
    if P.dim != P.ambient_rank:
        raise ValueError("facet normals need a full-dimensional polytope")
    pts = [P.vertices[i] for i in facet.vertex_indices]
    diffs = [_scale_to_int(_point_sub(p, pts[0])) for p in pts[1:]]
    normals = kernel_lattice(diffs, P.ambient_rank)
    if len(normals) != 1:
        raise ArithmeticError("facet does not span a hyperplane")
    w = normals[0]
    h = dot(w, pts[0])
    if any(dot(w, v) > h for v in P.vertices):
        w = tuple(-x for x in w)
    return w


def supporting_functional(P: LatticePolytope, face: Face) -> IntVector:
    """An integer functional whose argmax set on P is exactly the face."""
    target = frozenset(face.vertex_indices)
    w = tuple(0 for _ in range(P.ambient_rank))
    for f, normal in P.facet_outward_normals:
        if target <= frozenset(f.vertex_indices):
            w = tuple(a + b for a, b in zip(w, normal))
    values = [dot(w, v) for v in P.vertices]
    h = max(values)
    argmax = frozenset(i for i, v in enumerate(values) if v == h)
    if argmax != target:
        raise ArithmeticError("face is not the argmax of its supporting functional")
    return w


def functional_image(P: LatticePolytope, w: Sequence[int]) -> Interval:
    """The interval [min w(v), max w(v)] over the vertices of P.

    For primitive w this is the image of P under the induced rank-one
    lattice projection, so its length is the lattice width of P in the
    direction w.
    """
    if len(w) != P.ambient_rank:
        raise ValueError("functional length does not match ambient rank")
    if all(x == 0 for x in w):
        raise ValueError("functional must be nonzero")
    values = [dot(w, v) for v in P.vertices]
    return Interval(lo=min(values), hi=max(values))


@dataclass(frozen=True)
class SliceResult:
    """A hyperplane slice expressed in kernel coordinates.

    ``degenerate`` flags slices of dimension < dim(P) - 1; the estimator
    must skip those parameters rather than treat this as an error.
    """

    polytope: LatticePolytope
    degenerate: bool


def _edge_index_pairs(P: LatticePolytope) -> list[tuple[int, int]]:
    if P.dim == 1:
        return [(0, len(P.vertices) - 1)]
    return [(f.vertex_indices[0], f.vertex_indices[1]) for f in P.faces if f.dim == 1]


@lru_cache(maxsize=None)
def _kernel_coordinate_inverse(w: IntVector) -> IntMatrix:
    """Inverse of the column matrix [kernel basis | section] for w."""
    basis, section = kernel_splitting(w)
    n = len(w)
    columns = list(basis) + [section]
    M = tuple(tuple(columns[j][i] for j in range(n)) for i in range(n))
    return invert_unimodular(M)


def hyperplane_slice(P: LatticePolytope, w: Sequence[int], t) -> SliceResult:
    """P intersected with {w = t}, in the coordinates of kernel_splitting(w).

    The slice point x decomposes as t * section + sum_i c_i * basis_i;
    the returned polytope records the coefficient vectors c.
    """
    w = tuple(int(x) for x in w)
    t = to_fraction(t)
    img = functional_image(P, w)
    if not img.contains(t):
        raise ValueError("slice parameter outside projection image")
    n = P.ambient_rank
    Minv = _kernel_coordinate_inverse(w)
    pts: list[RationalPoint] = []
    values = [dot(w, v) for v in P.vertices]
    for v, val in zip(P.vertices, values):
        if val == t:
            pts.append(v)
    for i, j in _edge_index_pairs(P):
        a, b = P.vertices[i], P.vertices[j]
        va, vb = values[i], values[j]
        if va > vb:
            a, b, va, vb = b, a, vb, va
        if va < t < vb:
            s = (t - va) / (vb - va)
            pts.append(tuple(x + s * (y - x) for x, y in zip(a, b)))
    coords = []
    for p in pts:
        full = matvec(Minv, p)
        assert full[-1] == t
        coords.append(full[:-1] if n > 1 else ())
    poly = LatticePolytope(n - 1, coords) if n > 1 else LatticePolytope(0, [()])
    return SliceResult(polytope=poly, degenerate=poly.dim < P.dim - 1)


def lattice_length(S: LatticePolytope) -> Fraction:
    """Length of a one-dimensional polytope, normalized by the lattice.

    The primitive vector in the segment's direction has length one, so a
    segment between lattice points has integer length.
    """
    if S.dim != 1:
        raise ValueError("lattice length needs a one-dimensional polytope")
    a, b = S.vertices[0], S.vertices[-1]
    delta = _point_sub(b, a)
    denoms = [c.denominator for c in delta]
    m = lcm(*denoms)
    z = [int(c * m) for c in delta]
    g = 0
    for x in z:
        g = gcd(g, x)
    return Fraction(g, m)


def _segment_length(a: RationalPoint, b: RationalPoint) -> Fraction:
    return lattice_length(LatticePolytope(len(a), [a, b]))


def min_edge_length(P: LatticePolytope, v) -> Fraction | float:
    """Shortest lattice length among the edges of P through the vertex v.

    A zero-dimensional polytope has no edges; the conventional value
    there is positive infinity.
    """
    if P.dim == 0:
        return float("inf")
    point = make_point(v)
    try:
        idx = P.vertices.index(point)
    except ValueError:
        raise ValueError("point is not a vertex of the polytope") from None
    best = None
    for i, j in _edge_index_pairs(P):
        if idx in (i, j):
            length = _segment_length(P.vertices[i], P.vertices[j])
            if best is None or length < best:
                best = length
    if best is None:
        raise ArithmeticError("vertex has no incident edge")
    return best


def normalized_volume(P: LatticePolytope) -> Fraction:
    """n! times the Euclidean volume of a full-dimensional polytope.

    Computed exactly from the fan triangulation based at the first
    vertex of the sorted list, recursing through the face lattice.
    """
    n = P.ambient_rank
    if P.dim != n:
        raise ValueError("polytope not full-dimensional")
    if n == 0:
        return Fraction(1)
    by_dim: dict[int, list[Face]] = {}
    for f in P.faces:
        by_dim.setdefault(f.dim, []).append(f)

    def simplices(indices: tuple[int, ...], d: int) -> list[tuple[int, ...]]:
        if len(indices) == d + 1:
            return [indices]
        v0 = indices[0]
        inside = frozenset(indices)
        out = []
        for sub in by_dim.get(d - 1, []):
            sset = frozenset(sub.vertex_indices)
            if v0 in sset or not sset <= inside:
                continue
            for s in simplices(sub.vertex_indices, d - 1):
                out.append((v0,) + s)
        return out

    total = Fraction(0)
    all_idx = tuple(range(len(P.vertices)))
    for s in simplices(all_idx, n):
        base = P.vertices[s[0]]
        rows = [_point_sub(P.vertices[i], base) for i in s[1:]]
        total += abs(_fraction_determinant(rows))
    return total


def _fraction_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    M = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


def _affine_hull_coordinates(points: Sequence[RationalPoint]):
    """Express points in a Hermite-chosen basis of their affine hull lattice.

    Returns (coords, basis, origin); the origin is the first point of the
    given sequence (callers pass sorted vertex lists, so this is the
    lexicographically smallest vertex).
    """
    origin = points[0]
    n = len(origin)
    diffs = [_scale_to_int(_point_sub(p, origin)) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return [() for _ in points], (), origin
    orth = kernel_lattice(diffs, n)
    basis = kernel_lattice(orth, n) if orth else tuple()
    if not basis:
        basis = kernel_lattice((), n)
    coords = []
    for p in points:
        delta = _point_sub(p, origin)
        coords.append(solve_in_basis(basis, delta))
    return coords, basis, origin


def face_as_polytope(P: LatticePolytope, face: Face) -> LatticePolytope:
    """A face re-expressed as a full-rank polytope in its own lattice.

    One vertex is translated to the origin and the saturated sublattice
    spanned by the face directions supplies the coordinates.
    """
    pts = [P.vertices[i] for i in face.vertex_indices]
    if face.dim == 0:
        return LatticePolytope(0, [()])
    coords, _, _ = _affine_hull_coordinates(pts)
    return LatticePolytope(face.dim, coords)


def affine_transform(P: LatticePolytope, U: IntMatrix, shift: Sequence[int]) -> LatticePolytope:
    """Apply a unimodular map plus integer translation, vertex-wise."""
    if abs(determinant(U)) != 1:
        raise ValueError("transform matrix must be unimodular")
    if len(shift) != P.ambient_rank:
        raise ValueError("shift length does not match ambient rank")
    verts = [tuple(x + s for x, s in zip(matvec(U, v), shift)) for v in P.vertices]
    return LatticePolytope(P.ambient_rank, verts)


def dilate(P: LatticePolytope, k) -> LatticePolytope:
    """Scale every vertex by a positive rational factor."""
    k = to_fraction(k)
    if k <= 0:
        raise ValueError("dilation factor must be positive")
    return LatticePolytope(P.ambient_rank, [tuple(k * c for c in v) for v in P.vertices])


def translate(P: LatticePolytope, shift: Sequence) -> LatticePolytope:
    s = make_point(shift)
    return LatticePolytope(P.ambient_rank, [tuple(a + b for a, b in zip(v, s)) for v in P.vertices])
