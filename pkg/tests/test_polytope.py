import random
from fractions import Fraction

import pytest

from seshadri.lattice import dot
from seshadri.polytope import (
    Face,
    LatticePolytope,
    affine_transform,
    convex_hull_vertices,
    dilate,
    face_as_polytope,
    functional_image,
    hyperplane_slice,
    lattice_length,
    min_edge_length,
    normalized_volume,
    supporting_functional,
    translate,
)

from conftest import random_lattice_polytope, random_unimodular


def triangle():
    return LatticePolytope(2, [(1, 0), (0, 1), (-1, -1)])


def cube(a=1):
    return LatticePolytope(3, [(x, y, z) for x in (0, a) for y in (0, a) for z in (0, a)])


class TestConvexHull:
    def test_interior_point_dropped(self):
        P = convex_hull_vertices([(0, 0), (1, 0), (0, 1), (Fraction(1, 4), Fraction(1, 4))])
        assert len(P.vertices) == 3

    def test_already_minimal(self):
        P = convex_hull_vertices([(1, 0), (0, 1), (-1, -1)])
        assert P == triangle()

    def test_collinear_middle_dropped(self):
        P = convex_hull_vertices([(0, 0), (2, 0), (1, 0)])
        assert P.vertices == ((Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)))
        assert P.dim == 1

    def test_duplicates_collapse(self):
        P = convex_hull_vertices([(0, 0), (0, 0), (1, 1)])
        assert len(P.vertices) == 2


class TestFaceLattice:
    def test_triangle_counts(self):
        faces = triangle().faces
        assert sum(1 for f in faces if f.dim == 0) == 3
        assert sum(1 for f in faces if f.dim == 1) == 3

    def test_simplex_counts(self):
        P = LatticePolytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        counts = {d: sum(1 for f in P.faces if f.dim == d) for d in (0, 1, 2)}
        assert counts == {0: 4, 1: 6, 2: 4}

    def test_cube_counts(self):
        counts = {d: 0 for d in (0, 1, 2)}
        for f in cube().faces:
            counts[f.dim] += 1
        assert counts == {0: 8, 1: 12, 2: 6}

    def test_every_face_is_an_argmax(self):
        # Independent re-verification: a supporting functional whose
        # argmax vertex set is exactly the face must exist.
        for P in (triangle(), cube(2)):
            for f in P.faces:
                w = supporting_functional(P, f)
                values = [dot(w, v) for v in P.vertices]
                top = max(values)
                argmax = tuple(i for i, v in enumerate(values) if v == top)
                assert argmax == f.vertex_indices

    def test_random_polytopes_argmax(self):
        rng = random.Random(11)
        for _ in range(10):
            P = random_lattice_polytope(rng, 2)
            for f in P.faces:
                supporting_functional(P, f)


class TestFunctionalImage:
    def test_triangle_vertical(self):
        img = functional_image(triangle(), (0, 1))
        assert (img.lo, img.hi) == (-1, 1)

    def test_triangle_horizontal(self):
        img = functional_image(triangle(), (1, 0))
        assert (img.lo, img.hi) == (-1, 1)

    def test_segment(self):
        S = LatticePolytope(1, [(0,), (7,)])
        img = functional_image(S, (1,))
        assert (img.lo, img.hi) == (0, 7)
        assert img.length == 7

    def test_zero_functional_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            functional_image(triangle(), (0, 0))

    def test_equivariance_random(self):
        rng = random.Random(5)
        for _ in range(15):
            P = random_lattice_polytope(rng, 2)
            U = random_unimodular(rng, 2)
            shift = tuple(rng.randint(-4, 4) for _ in range(2))
            w = (rng.randint(-3, 3), rng.randint(-3, 3))
            if w == (0, 0):
                continue
            Q = affine_transform(P, U, shift)
            Ut_w = tuple(sum(U[i][j] * w[i] for i in range(2)) for j in range(2))
            if Ut_w == (0, 0):
                continue
            img_q = functional_image(Q, w)
            img_p = functional_image(P, Ut_w)
            offset = dot(w, shift)
            assert (img_q.lo, img_q.hi) == (img_p.lo + offset, img_p.hi + offset)


class TestSlice:
    def test_triangle_middle(self):
        s = hyperplane_slice(triangle(), (0, 1), 0)
        assert not s.degenerate
        assert s.polytope.vertices == ((Fraction(-1, 2),), (Fraction(1),))
        assert lattice_length(s.polytope) == Fraction(3, 2)

    def test_triangle_apex_degenerate(self):
        s = hyperplane_slice(triangle(), (0, 1), 1)
        assert s.degenerate
        assert s.polytope.dim == 0

    def test_cube_slice_is_square(self):
        s = hyperplane_slice(cube(2), (0, 0, 1), 1)
        assert not s.degenerate
        assert s.polytope == LatticePolytope(2, [(0, 0), (2, 0), (0, 2), (2, 2)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside projection image"):
            hyperplane_slice(triangle(), (0, 1), 2)

    def test_interior_slices_never_degenerate(self):
        rng = random.Random(23)
        for _ in range(8):
            P = random_lattice_polytope(rng, 3, max_points=6)
            img = functional_image(P, (1, 0, 0))
            t = Fraction(img.lo + img.hi, 2)
            if img.lo < t < img.hi:
                assert not hyperplane_slice(P, (1, 0, 0), t).degenerate


class TestLatticeLength:
    def test_rational_segment(self):
        S = LatticePolytope(1, [(Fraction(-1, 2),), (1,)])
        assert lattice_length(S) == Fraction(3, 2)

    def test_primitive_direction_in_plane(self):
        S = LatticePolytope(2, [(1, 0), (-1, -1)])
        assert lattice_length(S) == 1

    def test_axis_segment(self):
        S = LatticePolytope(1, [(0,), (5,)])
        assert lattice_length(S) == 5

    def test_needs_dimension_one(self):
        with pytest.raises(ValueError):
            lattice_length(triangle())

    def test_scales_under_dilation(self):
        S = LatticePolytope(2, [(0, 0), (3, 2)])
        for k in (2, Fraction(1, 2), 3):
            assert lattice_length(dilate(S, k)) == k * lattice_length(S)


class TestMinEdgeLength:
    def test_triangle_vertex(self):
        assert min_edge_length(triangle(), (1, 0)) == 1

    def test_square_corner(self):
        P = LatticePolytope(2, [(0, 0), (2, 0), (0, 2), (2, 2)])
        assert min_edge_length(P, (0, 0)) == 2

    def test_scaled_simplex(self):
        P = LatticePolytope(3, [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])
        for v in P.vertices:
            assert min_edge_length(P, v) == 4

    def test_point_is_infinite(self):
        P = LatticePolytope(2, [(1, 1)])
        assert min_edge_length(P, (1, 1)) == float("inf")

    def test_not_a_vertex(self):
        with pytest.raises(ValueError, match="not a vertex"):
            min_edge_length(triangle(), (5, 5))


class TestNormalizedVolume:
    def test_unit_simplices(self):
        for n in (1, 2, 3):
            verts = [tuple(0 for _ in range(n))]
            verts += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
            assert normalized_volume(LatticePolytope(n, verts)) == 1

    def test_triangle_matches_shoelace(self):
        (x1, y1), (x2, y2), (x3, y3) = triangle().vertices
        shoelace = abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))
        assert normalized_volume(triangle()) == shoelace == 3

    def test_rectangle(self):
        for a, b in [(1, 1), (2, 5), (3, 4)]:
            P = LatticePolytope(2, [(0, 0), (a, 0), (0, b), (a, b)])
            assert normalized_volume(P) == 2 * a * b

    def test_not_full_dimensional(self):
        P = LatticePolytope(2, [(0, 0), (1, 0)])
        with pytest.raises(ValueError, match="not full-dimensional"):
            normalized_volume(P)

    def test_invariance_and_scaling(self):
        rng = random.Random(31)
        for _ in range(10):
            P = random_lattice_polytope(rng, 2)
            vol = normalized_volume(P)
            U = random_unimodular(rng, 2)
            shift = tuple(rng.randint(-3, 3) for _ in range(2))
            assert normalized_volume(affine_transform(P, U, shift)) == vol
            assert normalized_volume(dilate(P, 3)) == vol * 9


class TestFaceAsPolytope:
    def test_triangle_edge(self):
        P = triangle()
        edge = next(f for f in P.faces
                    if f.dim == 1 and set(f.vertex_indices) ==
                    {P.vertices.index((Fraction(1), Fraction(0))),
                     P.vertices.index((Fraction(0), Fraction(1)))})
        E = face_as_polytope(P, edge)
        assert E == LatticePolytope(1, [(0,), (1,)])
        assert lattice_length(E) == 1

    def test_vertex_face(self):
        P = triangle()
        v = next(f for f in P.faces if f.dim == 0)
        F = face_as_polytope(P, v)
        assert F.ambient_rank == 0 and F.dim == 0

    def test_cube_facet(self):
        P = cube(2)
        facet = next(f for f in P.faces if f.dim == 2 and
                     all(P.vertices[i][2] == 0 for i in f.vertex_indices))
        F = face_as_polytope(P, facet)
        assert normalized_volume(F) == 8
        assert F == LatticePolytope(2, [(0, 0), (2, 0), (0, 2), (2, 2)])


class TestTransforms:
    def test_identity(self):
        P = triangle()
        assert affine_transform(P, ((1, 0), (0, 1)), (0, 0)) == P

    def test_dilate_doubles(self):
        P = dilate(triangle(), 2)
        assert P.vertices == LatticePolytope(2, [(2, 0), (0, 2), (-2, -2)]).vertices

    def test_shear_preserves_volume(self):
        P = LatticePolytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        Q = affine_transform(P, ((1, 1), (0, 1)), (0, 0))
        assert normalized_volume(Q) == normalized_volume(P) == 2

    def test_non_unimodular_rejected(self):
        with pytest.raises(ValueError, match="unimodular"):
            affine_transform(triangle(), ((2, 0), (0, 1)), (0, 0))

    def test_translate(self):
        P = translate(triangle(), (1, 1))
        assert (Fraction(2), Fraction(1)) in P.vertices


class TestJson:
    def test_round_trip(self):
        P = triangle()
        Q = LatticePolytope.loads(P.dumps())
        assert Q == P

    def test_fraction_coordinates(self):
        text = '{"rank": 2, "vertices": [["1", "0"], ["0", "1"], ["-1/2", "-1/2"]]}'
        P = LatticePolytope.loads(text)
        assert (Fraction(-1, 2), Fraction(-1, 2)) in P.vertices

    def test_malformed_coordinate(self):
        with pytest.raises(ValueError, match=r"vertices\[1\]\[0\]"):
            LatticePolytope.loads('{"rank": 2, "vertices": [["1", "0"], ["x", "1"]]}')

    def test_missing_fields(self):
        with pytest.raises(ValueError, match="rank"):
            LatticePolytope.loads('{"vertices": [["1"]]}')

    def test_bad_json_gives_line(self):
        with pytest.raises(ValueError, match="line"):
            LatticePolytope.loads("{nope")
