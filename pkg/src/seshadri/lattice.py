"""Exact integer linear algebra over lattices.

Hermite and Smith normal forms with unimodular transforms, primitive
vectors, saturated kernels, quotient projections onto Z^r, and the
splitting of Z^n along a primitive functional.

Conventions are pinned so that every downstream coordinate choice is
bit-stable across runs:

* Hermite normal form is row-style: ``H = U @ A`` with ``U`` unimodular,
  ``H`` in row echelon shape, pivots positive, and every entry above a
  pivot reduced into ``[0, pivot)``.
* Smith normal form is ``S = U @ A @ V`` with a nonnegative diagonal
  satisfying the divisibility chain ``d1 | d2 | ...``.
* Kernels and quotient bases are the Hermite bases of the corresponding
  saturated lattices, which are canonical.

All arithmetic is arbitrary-precision integer arithmetic on plain
tuples.  Nothing here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vector(n: int) -> IntVector:
    return (0,) * n


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot product")
    return sum(a * b for a, b in zip(u, v))


def matvec(A: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in A)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> IntMatrix:
    cols = list(zip(*B))
    return tuple(tuple(dot(row, c) for c in cols) for row in A)


def transpose_matrix(A: Sequence[Sequence]) -> IntMatrix:
    return tuple(zip(*A))


def determinant(A: Sequence[Sequence]) -> int:
    """Exact determinant via the fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("determinant requires a square matrix")
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


def is_unimodular(U: Sequence[Sequence]) -> bool:
    return abs(determinant(U)) == 1


def invert_unimodular(U: Sequence[Sequence]) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (again integral)."""
    n = len(U)
    d = determinant(U)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    # Solve U X = I over the rationals; entries come out integral.
    M = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = M[i][n + j]
            if x.denominator != 1:
                raise ArithmeticError("unimodular inverse came out non-integral")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def primitive_part(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries.

    The result points in the same direction as ``v`` and has content 1.
    """
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def hermite_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with ``H = U @ A``, ``U`` unimodular, ``H`` in echelon
    shape with positive pivots and the entries above each pivot reduced
    into ``[0, pivot)``.  The zero matrix maps to (itself, identity).
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    H = [list(map(int, row)) for row in A]
    U = [list(row) for row in identity_matrix(rows)]
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # Bring the column gcd into position (r, c) by repeated reduction.
        while True:
            nz = [i for i in range(r, rows) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][c]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            clean = True
            for i in range(r + 1, rows):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return tuple(tuple(row) for row in H), tuple(tuple(row) for row in U)


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with both transforms.

    Returns (S, U, V) with ``S = U @ A @ V`` diagonal, diagonal entries
    nonnegative and dividing each other in order, and U, V unimodular.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    S = [list(map(int, row)) for row in A]
    U = [list(row) for row in identity_matrix(rows)]
    V = [list(row) for row in identity_matrix(cols)]

    def row_sub(i, j, q):
        S[i] = [a - q * b for a, b in zip(S[i], S[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):
        for row in S:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while True:
        entries = [(abs(S[i][j]), i, j)
                   for i in range(t, rows) for j in range(t, cols) if S[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            # Clear the pivot column, then the pivot row; a cleared row can
            # be dirtied again by column operations, so iterate.
            again = False
            for i in range(t + 1, rows):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    row_sub(i, t, q)
                    if S[i][t] != 0:
                        row_swap(t, i)
                        again = True
            for j in range(t + 1, cols):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    col_sub(j, t, q)
                    if S[t][j] != 0:
                        col_swap(t, j)
                        again = True
            if not again:
                break
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        # Enforce divisibility of the remaining block by the pivot.
        d = S[t][t]
        bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                    if S[i][j] % d != 0), None)
        if bad is not None:
            row_sub(t, bad[0], -1)
            continue
        t += 1
    return (tuple(tuple(r) for r in S),
            tuple(tuple(r) for r in U),
            tuple(tuple(r) for r in V))


def kernel_lattice(rows: Sequence[Sequence[int]], length: int) -> tuple[IntVector, ...]:
    """Hermite basis of {x in Z^length : row . x = 0 for every row}.

    The solution lattice of an integer system is saturated, and its
    Hermite basis is canonical, so the output is independent of the
    presentation of the input rows.
    """
    rows = [tuple(map(int, r)) for r in rows]
    for r in rows:
        if len(r) != length:
            raise ValueError("row length does not match ambient rank")
    k = len(rows)
    if k == 0:
        return identity_matrix(length)
    # HNF of [A^T | I]; rows whose A^T-part vanished carry a kernel basis.
    At = list(zip(*rows))
    M = [tuple(At[i]) + tuple(1 if i == j else 0 for j in range(length))
         for i in range(length)]
    H, _ = hermite_normal_form(M)
    raw = [row[k:] for row in H if all(x == 0 for x in row[:k])]
    if not raw:
        return ()
    H2, _ = hermite_normal_form(raw)
    return tuple(row for row in H2 if any(row))


@dataclass(frozen=True)
class QuotientMap:
    """A surjective lattice map Z^n -> Z^r together with its kernel.

    ``matrix`` has shape r x n; ``kernel_basis`` spans the saturated
    sublattice killed by the map.
    """

    source_rank: int
    target_rank: int
    matrix: IntMatrix
    kernel_basis: tuple[IntVector, ...]

    def apply(self, point: Sequence) -> tuple:
        if len(point) != self.source_rank:
            raise ValueError("point has wrong rank for quotient map")
        return matvec(self.matrix, point)

    def validate(self) -> None:
        for k in self.kernel_basis:
            if any(x != 0 for x in self.apply(k)):
                raise AssertionError("kernel basis vector not killed by quotient map")
        if self.target_rank:
            S, _, _ = smith_normal_form(self.matrix)
            factors = [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]
            if any(f != 1 for f in factors[: self.target_rank]):
                raise AssertionError("quotient map is not surjective onto Z^r")


def quotient_projection(generators: Sequence[Sequence[int]], ambient_rank: int) -> QuotientMap:
    """Projection of Z^n onto the quotient by the saturation of the span.

    The rows of the returned matrix are the Hermite basis of the
    functionals vanishing on the generators, so the same generators (or
    any set with the same span) always produce the same coordinates on
    the quotient.  An empty generator list yields the identity.
    """
    gens = [tuple(map(int, g)) for g in generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise ValueError("generator length does not match ambient rank")
    proj_rows = kernel_lattice(gens, ambient_rank)
    kernel = kernel_lattice(proj_rows, ambient_rank) if proj_rows else identity_matrix(ambient_rank)
    return QuotientMap(
        source_rank=ambient_rank,
        target_rank=len(proj_rows),
        matrix=tuple(proj_rows),
        kernel_basis=tuple(kernel),
    )


@lru_cache(maxsize=None)
def kernel_splitting(w: IntVector) -> tuple[tuple[IntVector, ...], IntVector]:
    """Split Z^n along a primitive functional w.

    Returns (kernel_basis, section) where the n-1 basis vectors span
    ker(w) in Z^n, w(section) = 1, and stacking basis and section gives a
    unimodular matrix.  Every lattice point then decomposes uniquely as
    w(x) * section plus a kernel part.
    """
    w = tuple(int(x) for x in w)
    if not is_primitive(w):
        raise ValueError("functional must be primitive")
    basis = kernel_lattice([w], len(w))
    # Fold Bezout coefficients across the entries to hit w(section) = 1.
    g = w[0]
    coeffs = [1]
    for x in w[1:]:
        g2, s, t = xgcd(g, x)
        coeffs = [c * s for c in coeffs] + [t]
        g = g2
    if g < 0:
        coeffs = [-c for c in coeffs]
    section = tuple(coeffs)
    assert dot(w, section) == 1
    return basis, section
