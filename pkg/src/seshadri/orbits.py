"""Bounds at points of arbitrary torus orbits.

A point on the orbit of a face sees two constraints: the value inside
the face (the face re-expressed as a full-rank polytope), and the
shortest quotient edge at the face's image vertex after collapsing the
face directions.  The orbit value is exactly the minimum of the two, so
whichever side is certified smaller decides exactness.

Torus-fixed points (vertex orbits) short-circuit to the minimum edge
length at the vertex, which is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .estimator import (
    BoundReport,
    BoundValue,
    SearchStrategy,
    UpperWitness,
    estimate_interior,
)
from .lattice import quotient_projection
from .polytope import (
    Face,
    LatticePolytope,
    _point_sub,
    _scale_to_int,
    convex_hull_vertices,
    face_as_polytope,
    min_edge_length,
)


def maximal_face(P: LatticePolytope) -> Face:
    """The improper face standing for the dense orbit of P itself."""
    return Face(vertex_indices=tuple(range(len(P.vertices))), dim=P.dim)


def _is_maximal(P: LatticePolytope, face: Face) -> bool:
    return tuple(face.vertex_indices) == tuple(range(len(P.vertices)))


def quotient_edge_length(P: LatticePolytope, face: Face) -> Fraction:
    """s(P', v'): shortest edge of the quotient image at the image of the face."""
    verts = [P.vertices[i] for i in face.vertex_indices]
    base = verts[0]
    gens = [_scale_to_int(_point_sub(v, base)) for v in verts[1:]]
    gens = [g for g in gens if any(g)]
    qmap = quotient_projection(gens, P.ambient_rank)
    images = [qmap.apply(v) for v in P.vertices]
    P_image = convex_hull_vertices(images)
    v_image = qmap.apply(base)
    image_set = {qmap.apply(v) for v in verts}
    if image_set != {v_image}:
        raise AssertionError("face did not collapse to a single quotient point")
    return min_edge_length(P_image, v_image)


def bound_at_orbit(P: LatticePolytope, face: Face,
                   strategy: Optional[SearchStrategy] = None) -> BoundReport:
    """Certified bound at any point of the orbit attached to a face.

    The maximal face delegates to the interior estimate; a vertex gives
    its exact minimum edge length; in between, the value is
    min(face interior value, quotient edge length), exact as soon as the
    edge side is known to dominate or the face side is itself exact.
    """
    n = P.ambient_rank
    if P.dim != n or n < 1:
        raise ValueError("orbit bounds need a full-dimensional polytope")
    if _is_maximal(P, face):
        return estimate_interior(P, strategy)
    if face not in P.faces:
        raise ValueError("not a face of the polytope")
    if face.dim == 0:
        v = P.vertices[face.vertex_indices[0]]
        s = min_edge_length(P, v)
        return BoundReport(
            lower=s,
            lower_cert=None,
            upper=BoundValue.rational(s),
            upper_witness=UpperWitness(kind="edge"),
            exact=True,
        )
    s = quotient_edge_length(P, face)
    face_poly = face_as_polytope(P, face)
    face_report = estimate_interior(face_poly, strategy)
    s_value = BoundValue.rational(s)
    if s_value <= face_report.upper:
        upper = s_value
        witness = UpperWitness(kind="quotient-edge")
    else:
        upper = face_report.upper
        witness = face_report.upper_witness
    lower = min(face_report.lower, s)
    exact = face_report.exact or s <= face_report.lower
    cert = face_report.lower_cert if face_report.lower < s else None
    return BoundReport(lower=lower, lower_cert=cert, upper=upper,
                       upper_witness=witness, exact=exact)


def orbit_profile(P: LatticePolytope,
                  strategy: Optional[SearchStrategy] = None) -> dict[Face, BoundReport]:
    """One report per orbit: every proper face plus the dense orbit."""
    n = P.ambient_rank
    if P.dim != n:
        raise ValueError("orbit profile needs a full-dimensional polytope")
    profile: dict[Face, BoundReport] = {}
    for face in P.faces:
        profile[face] = bound_at_orbit(P, face, strategy)
    top = maximal_face(P)
    profile[top] = bound_at_orbit(P, top, strategy)
    return profile


def profile_to_json(profile: dict[Face, BoundReport]) -> list[dict]:
    rows = []
    for face in sorted(profile, key=lambda f: (f.dim, f.vertex_indices)):
        report = profile[face]
        rows.append({
            "face_vertex_indices": list(face.vertex_indices),
            "dim": face.dim,
            "lower": str(report.lower),
            "upper": report.upper.to_json(),
            "exact": report.exact,
        })
    return rows
