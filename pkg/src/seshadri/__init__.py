"""Certified exact bounds for Seshadri constants of polarized toric
varieties, computed from lattice polytopes, with degeneration arithmetic
for hypersurfaces, complete intersections, and the Fano 3-fold table."""

from .lattice import (
    QuotientMap,
    hermite_normal_form,
    kernel_splitting,
    primitive_part,
    quotient_projection,
    smith_normal_form,
)
from .polytope import (
    Face,
    Interval,
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
)
from .estimator import (
    BaseSegment,
    BoundReport,
    BoundValue,
    Certificate,
    CertificateError,
    Projection,
    SearchStrategy,
    SimplexClosedForm,
    candidate_projections,
    candidate_slice_params,
    certificate_dumps,
    certificate_loads,
    estimate_interior,
    simplex_lower_bound,
    transform_certificate,
    verify_certificate,
)
from .orbits import bound_at_orbit, maximal_face, orbit_profile
from .degeneration import (
    CIDescriptor,
    ExponentMatrix,
    NefCertificate,
    canonical_exponents,
    ci_fano_exact_value,
    ci_toric_lower_bound,
    combine_nef_certificates,
    fano_table,
    integer_nth_root_floor,
    multipoint_hypersurface_bound,
    optimize_chain,
)

__version__ = "0.1.0"
