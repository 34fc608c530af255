import random

import pytest

from seshadri.lattice import identity_matrix
from seshadri.polytope import LatticePolytope, convex_hull_vertices


def random_lattice_polytope(rng: random.Random, rank: int, span: int = 3,
                            max_points: int = 7) -> LatticePolytope:
    """A full-dimensional integral polytope with vertices in [-span, span]."""
    while True:
        npts = rng.randint(rank + 1, max_points)
        pts = [tuple(rng.randint(-span, span) for _ in range(rank)) for _ in range(npts)]
        P = convex_hull_vertices(pts)
        if P.dim == rank:
            return P


def random_unimodular(rng: random.Random, n: int, steps: int = 6):
    """Random product of elementary row additions; determinant stays 1."""
    U = [list(row) for row in identity_matrix(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            U[i][k] += c * U[j][k]
    return tuple(tuple(row) for row in U)


@pytest.fixture(scope="session")
def polytope_corpus():
    """100 random lattice polygons and 3-polytopes with vertices in [-3, 3]."""
    rng = random.Random(987654321)
    corpus = [random_lattice_polytope(rng, 2) for _ in range(70)]
    corpus += [random_lattice_polytope(rng, 3, max_points=6) for _ in range(30)]
    return corpus
