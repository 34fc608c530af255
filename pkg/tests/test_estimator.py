import random
from fractions import Fraction

import pytest

from seshadri.estimator import (
    BaseSegment,
    BoundValue,
    CertificateError,
    Projection,
    SearchStrategy,
    SimplexClosedForm,
    candidate_projections,
    candidate_slice_params,
    certificate_dumps,
    certificate_loads,
    certificate_value,
    estimate_interior,
    simplex_lower_bound,
    transform_certificate,
    verify_certificate,
)
from seshadri.polytope import LatticePolytope, affine_transform, dilate

from conftest import random_lattice_polytope, random_unimodular


def triangle():
    return LatticePolytope(2, [(1, 0), (0, 1), (-1, -1)])


def rectangle(a, b):
    return LatticePolytope(2, [(0, 0), (a, 0), (0, b), (a, b)])


def scaled_simplex_3d(k):
    return LatticePolytope(3, [(0, 0, 0), (k, 0, 0), (0, k, 0), (0, 0, k)])


class TestBoundValue:
    def test_rational_ordering(self):
        assert BoundValue.rational(Fraction(3, 2)) < BoundValue.rational(2)

    def test_root_vs_rational(self):
        root3 = BoundValue.nth_root(3, 2)
        assert BoundValue.rational(Fraction(3, 2)) < root3 < BoundValue.rational(2)

    def test_perfect_roots_normalize(self):
        assert BoundValue.nth_root(4, 2) == BoundValue.rational(2)
        assert BoundValue.nth_root(64, 3).is_rational
        assert BoundValue.nth_root(Fraction(9, 4), 2) == BoundValue.rational(Fraction(3, 2))

    def test_cross_index_comparison(self):
        # 2^(1/2) vs 2^(1/3): cross-powering gives 8 vs 4.
        assert BoundValue.nth_root(2, 3) < BoundValue.nth_root(2, 2)

    def test_scale(self):
        assert BoundValue.nth_root(3, 2).scale(2) == BoundValue.nth_root(12, 2)
        assert BoundValue.rational(5).scale(Fraction(1, 5)) == BoundValue.rational(1)

    def test_json_round_trip(self):
        for v in (BoundValue.rational(Fraction(3, 2)), BoundValue.nth_root(22, 3)):
            assert BoundValue.from_json(v.to_json()) == v

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            BoundValue(radicand=Fraction(-1), index=2)


class TestCandidateProjections:
    def test_rectangle_contains_axes(self):
        cands = candidate_projections(rectangle(3, 4), SearchStrategy.default(2))
        assert (1, 0) in cands and (0, 1) in cands

    def test_triangle_facet_normals(self):
        cands = candidate_projections(triangle(), SearchStrategy(functional_source="facet-normals"))
        assert set(cands) == {(1, 1), (2, -1), (1, -2)}

    def test_triangle_box_adds_axis(self):
        cands = candidate_projections(triangle(), SearchStrategy.default(2))
        assert (0, 1) in cands
        assert cands == tuple(sorted(cands))

    def test_segment(self):
        S = LatticePolytope(1, [(0,), (4,)])
        assert candidate_projections(S, SearchStrategy.default(1)) == ((1,),)


class TestCandidateSliceParams:
    def test_triangle(self):
        params = candidate_slice_params(triangle(), (0, 1))
        assert params == (Fraction(-1, 2), Fraction(0), Fraction(1, 2))

    def test_square_midpoint_only(self):
        params = candidate_slice_params(rectangle(2, 2), (1, 0))
        assert params == (Fraction(1),)

    def test_segment_never_sliced(self):
        S = LatticePolytope(1, [(0,), (4,)])
        assert candidate_slice_params(S, (1,)) == ()


class TestEstimateInterior:
    def test_cubic_triangle(self):
        r = estimate_interior(triangle())
        assert r.lower == Fraction(3, 2)
        assert r.upper == BoundValue.nth_root(3, 2)
        assert r.upper_witness.kind == "volume"
        assert not r.exact
        cert = r.lower_cert
        assert isinstance(cert, Projection)
        assert cert.functional == (0, 1)
        assert cert.slice_param == 0
        assert cert.width == 2
        assert cert.child == BaseSegment(length=Fraction(3, 2))

    def test_rectangle_family(self):
        r = estimate_interior(rectangle(2, 5))
        assert r.lower == 2 and r.exact
        assert r.upper == BoundValue.rational(2)

    def test_anticanonical_p3(self):
        r = estimate_interior(scaled_simplex_3d(4))
        assert r.lower == 4 and r.exact

    def test_sextic_weighted_polytope(self):
        P = LatticePolytope(3, [(0, 0, 0), (2, 0, 0), (0, 2, 0), (-2, -2, 2)])
        r = estimate_interior(P)
        assert r.lower == 2 and r.exact

    def test_segment_base_case(self):
        S = LatticePolytope(1, [(0,), (Fraction(7, 2),)])
        r = estimate_interior(S)
        assert r.lower == Fraction(7, 2) and r.exact
        assert r.lower_cert == BaseSegment(length=Fraction(7, 2))

    def test_rejects_non_full_dimensional(self):
        P = LatticePolytope(2, [(0, 0), (1, 0)])
        with pytest.raises(ValueError, match="full-dimensional"):
            estimate_interior(P)

    def test_memoization_agrees(self):
        P = scaled_simplex_3d(3)
        with_memo = estimate_interior(P, SearchStrategy(memoize=True))
        without = estimate_interior(P, SearchStrategy(memoize=False))
        assert with_memo == without

    def test_depth_cap_gives_trivial_lower(self):
        P = scaled_simplex_3d(2)
        r = estimate_interior(P, SearchStrategy(max_depth=1))
        assert r.lower == 0
        assert r.lower_cert is None
        assert BoundValue.rational(r.lower) <= r.upper

    def test_reaches_simplex_closed_form(self):
        rng = random.Random(3)
        for _ in range(6):
            a = tuple(Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(2))
            verts = [(1, 0), (0, 1), tuple(-x for x in a)]
            P = LatticePolytope(2, verts)
            if P.dim != 2 or len(P.vertices) != 3:
                continue
            r = estimate_interior(P)
            assert r.lower >= simplex_lower_bound(a)


class TestSimplexLowerBound:
    @staticmethod
    def brute_force(a):
        # Direct evaluation of every ratio, no running sums.
        a = [Fraction(x) for x in a]
        n = len(a)
        ratios = []
        for i in range(n):
            num = sum(a[i:], Fraction(0)) + 1
            den = sum(a[i + 1:], Fraction(0)) + 1
            ratios.append(num / den)
        return min(ratios)

    def test_unit_parameters(self):
        assert simplex_lower_bound((1, 1, 1)) == Fraction(4, 3)
        assert self.brute_force((1, 1, 1)) == Fraction(4, 3)

    def test_thirds(self):
        assert simplex_lower_bound((Fraction(1, 3),) * 3) == Fraction(6, 5)

    def test_zeros(self):
        assert simplex_lower_bound((0, 0, 0)) == 1

    def test_against_brute_force(self):
        rng = random.Random(42)
        for _ in range(200):
            n = rng.randint(1, 5)
            a = [Fraction(rng.randint(0, 12), rng.randint(1, 6)) for _ in range(n)]
            assert simplex_lower_bound(a) == self.brute_force(a)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            simplex_lower_bound((-1, 2))


class TestVerifyCertificate:
    def test_triangle_chain(self):
        r = estimate_interior(triangle())
        assert verify_certificate(triangle(), r.lower_cert) == Fraction(3, 2)

    def test_base_segment(self):
        S = LatticePolytope(1, [(0,), (6,)])
        assert verify_certificate(S, BaseSegment(length=Fraction(6))) == 6

    def test_tampered_width(self):
        r = estimate_interior(triangle())
        bad = Projection(functional=r.lower_cert.functional,
                         slice_param=r.lower_cert.slice_param,
                         width=r.lower_cert.width + 1,
                         child=r.lower_cert.child)
        with pytest.raises(CertificateError) as exc:
            verify_certificate(triangle(), bad)
        assert exc.value.code == CertificateError.VALUE_MISMATCH

    def test_degenerate_slice_param(self):
        cert = Projection(functional=(0, 1), slice_param=Fraction(1),
                          width=Fraction(2), child=BaseSegment(length=Fraction(0)))
        with pytest.raises(CertificateError) as exc:
            verify_certificate(triangle(), cert)
        assert exc.value.code == CertificateError.DEGENERATE_SLICE

    def test_param_out_of_range(self):
        cert = Projection(functional=(0, 1), slice_param=Fraction(5),
                          width=Fraction(2), child=BaseSegment(length=Fraction(0)))
        with pytest.raises(CertificateError) as exc:
            verify_certificate(triangle(), cert)
        assert exc.value.code == CertificateError.PARAM_OUT_OF_RANGE

    def test_dimension_mismatch(self):
        with pytest.raises(CertificateError) as exc:
            verify_certificate(triangle(), BaseSegment(length=Fraction(1)))
        assert exc.value.code == CertificateError.DIMENSION_MISMATCH

    def test_non_primitive_functional(self):
        cert = Projection(functional=(0, 2), slice_param=Fraction(0),
                          width=Fraction(2), child=BaseSegment(length=Fraction(1)))
        with pytest.raises(CertificateError) as exc:
            verify_certificate(triangle(), cert)
        assert exc.value.code == CertificateError.NOT_PRIMITIVE

    def test_simplex_closed_form_node(self):
        a = (Fraction(1, 3),) * 3
        P = LatticePolytope(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                (Fraction(-1, 3),) * 3])
        cert = SimplexClosedForm(a=a, value=Fraction(6, 5))
        assert verify_certificate(P, cert) == Fraction(6, 5)
        wrong = SimplexClosedForm(a=a, value=Fraction(7, 5))
        with pytest.raises(CertificateError) as exc:
            verify_certificate(P, wrong)
        assert exc.value.code == CertificateError.VALUE_MISMATCH

    def test_simplex_shape_mismatch(self):
        cert = SimplexClosedForm(a=(Fraction(1), Fraction(1)), value=Fraction(3, 2))
        with pytest.raises(CertificateError) as exc:
            verify_certificate(triangle(), cert)
        assert exc.value.code == CertificateError.SHAPE_MISMATCH


class TestCertificateJson:
    def test_spec_shapes(self):
        r = estimate_interior(triangle())
        data = certificate_dumps(r.lower_cert)
        assert '"type":"projection"' in data
        assert '"w":["0","1"]' in data
        assert '"t":"0"' in data
        assert '"child":{"length":"3/2","type":"base"}' in data

    def test_byte_identical_round_trip(self):
        r = estimate_interior(triangle())
        text = certificate_dumps(r.lower_cert)
        again = certificate_dumps(certificate_loads(text))
        assert text == again

    def test_simplex_node_round_trip(self):
        cert = SimplexClosedForm(a=(Fraction(1, 3),) * 3, value=Fraction(6, 5))
        text = certificate_dumps(cert)
        assert certificate_loads(text) == cert


class TestTransformCertificate:
    def test_value_preserved_on_fixtures(self):
        rng = random.Random(17)
        for P in (triangle(), rectangle(2, 5),
                  LatticePolytope(3, [(0, 0, 0), (2, 0, 0), (0, 2, 0), (-2, -2, 2)])):
            r = estimate_interior(P)
            for _ in range(4):
                U = random_unimodular(rng, P.ambient_rank)
                shift = tuple(rng.randint(-3, 3) for _ in range(P.ambient_rank))
                Q = affine_transform(P, U, shift)
                moved = transform_certificate(r.lower_cert, U, shift)
                assert verify_certificate(Q, moved) == r.lower

    def test_facet_normal_search_is_equivariant(self):
        rng = random.Random(29)
        strategy = SearchStrategy(functional_source="facet-normals")
        for _ in range(8):
            P = random_lattice_polytope(rng, 2)
            U = random_unimodular(rng, 2)
            shift = tuple(rng.randint(-3, 3) for _ in range(2))
            Q = affine_transform(P, U, shift)
            assert estimate_interior(P, strategy).lower == estimate_interior(Q, strategy).lower


class TestDilation:
    def test_lower_and_upper_scale(self):
        for P in (triangle(), rectangle(3, 4)):
            base = estimate_interior(P)
            for k in (2, 3):
                scaled = estimate_interior(dilate(P, k))
                assert scaled.lower == k * base.lower
                assert scaled.upper == base.upper.scale(k)
