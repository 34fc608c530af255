"""Certified bounds at a very general point of a polarized toric variety.

The lower-bound engine walks chains of rank-one lattice projections: for
a primitive functional w and a slice parameter t with a non-degenerate
slice, the target value is at least min(width in direction w, value of
the slice).  Recursion bottoms out at segments, whose value is exactly
the lattice length.  Every emitted lower bound carries a certificate
(the chain of functionals, parameters, and widths) that an independent
verifier can replay from scratch.

Upper bounds come from lattice widths and from the n-th root of the
normalized volume, compared exactly by cross-powering, so a report can
flag exactness without ever rounding.

The candidate search is a certified under-approximation: no finite set
of functionals and parameters is known to be complete, so ``lower`` is a
true bound but not necessarily the supremum over all chains.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from .lattice import (
    IntMatrix,
    IntVector,
    dot,
    invert_unimodular,
    is_primitive,
    kernel_splitting,
    matvec,
    primitive_part,
    transpose_matrix,
)
from .polytope import (
    LatticePolytope,
    SliceResult,
    _point_sub,
    _rank_of_vectors,
    functional_image,
    hyperplane_slice,
    lattice_length,
    normalized_volume,
)
from .rationals import format_rational, iroot, parse_rational, to_fraction


@dataclass(frozen=True, order=False)
class BoundValue:
    """A rational, or the n-th root of one, compared exactly.

    ``index == 1`` means the plain rational ``radicand``.  Roots whose
    radicand is a perfect power are normalized to rationals at
    construction, so equality behaves as expected.
    """

    radicand: Fraction
    index: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("root index must be >= 1")
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")

    @classmethod
    def rational(cls, q) -> "BoundValue":
        return cls(radicand=to_fraction(q), index=1)

    @classmethod
    def nth_root(cls, q, n: int) -> "BoundValue":
        q = to_fraction(q)
        if n == 1:
            return cls(radicand=q, index=1)
        pr, pexact = iroot(q.numerator, n)
        qr, qexact = iroot(q.denominator, n)
        if pexact and qexact:
            return cls(radicand=Fraction(pr, qr), index=1)
        return cls(radicand=q, index=n)

    def _cross(self, other: "BoundValue") -> tuple[Fraction, Fraction]:
        return self.radicand ** other.index, other.radicand ** self.index

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BoundValue.rational(other)
        if not isinstance(other, BoundValue):
            return NotImplemented
        a, b = self._cross(other)
        return a == b

    def __hash__(self):
        return hash((self.radicand, self.index))

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BoundValue.rational(other)
        a, b = self._cross(other)
        return a < b

    def __le__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BoundValue.rational(other)
        a, b = self._cross(other)
        return a <= b

    def __gt__(self, other):
        return not self.__le__(other)

    def __ge__(self, other):
        return not self.__lt__(other)

    def scale(self, k) -> "BoundValue":
        k = to_fraction(k)
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return BoundValue(radicand=self.radicand * k**self.index, index=self.index)

    @property
    def is_rational(self) -> bool:
        return self.index == 1

    def to_json(self):
        if self.index == 1:
            return format_rational(self.radicand)
        return {"root": {"radicand": format_rational(self.radicand), "index": self.index}}

    @classmethod
    def from_json(cls, data) -> "BoundValue":
        if isinstance(data, str):
            return cls.rational(parse_rational(data))
        if isinstance(data, dict) and "root" in data:
            r = data["root"]
            return cls(radicand=parse_rational(r["radicand"]), index=int(r["index"]))
        raise ValueError(f"invalid bound value {data!r}")

    def approx(self) -> float:
        return float(self.radicand) ** (1.0 / self.index)

    def __str__(self):
        if self.index == 1:
            return format_rational(self.radicand)
        return f"{self.index}-th root of {format_rational(self.radicand)}"


@dataclass(frozen=True)
class BaseSegment:
    """Certificate leaf: a segment whose value is its lattice length."""

    length: Fraction


@dataclass(frozen=True)
class SimplexClosedForm:
    """Certificate leaf: the closed-form value for conv(e_1..e_n, -sum a_i e_i)."""

    a: tuple[Fraction, ...]
    value: Fraction


@dataclass(frozen=True)
class Projection:
    """Certificate node: project along a primitive functional, slice, recurse.

    The node's value is min(width, value of the child certificate).
    """

    functional: IntVector
    slice_param: Fraction
    width: Fraction
    child: "Certificate"


Certificate = Union[BaseSegment, SimplexClosedForm, Projection]


def certificate_value(cert: Certificate) -> Fraction:
    if isinstance(cert, BaseSegment):
        return cert.length
    if isinstance(cert, SimplexClosedForm):
        return cert.value
    return min(cert.width, certificate_value(cert.child))


def certificate_to_json_dict(cert: Certificate) -> dict:
    if isinstance(cert, BaseSegment):
        return {"type": "base", "length": format_rational(cert.length)}
    if isinstance(cert, SimplexClosedForm):
        return {
            "type": "simplex",
            "a": [format_rational(x) for x in cert.a],
            "value": format_rational(cert.value),
        }
    return {
        "type": "projection",
        "w": [str(x) for x in cert.functional],
        "t": format_rational(cert.slice_param),
        "width": format_rational(cert.width),
        "child": certificate_to_json_dict(cert.child),
    }


def certificate_from_json_dict(data: dict) -> Certificate:
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("certificate JSON must be an object with a 'type'")
    kind = data["type"]
    if kind == "base":
        return BaseSegment(length=parse_rational(data["length"]))
    if kind == "simplex":
        return SimplexClosedForm(
            a=tuple(parse_rational(x) for x in data["a"]),
            value=parse_rational(data["value"]),
        )
    if kind == "projection":
        return Projection(
            functional=tuple(int(x) for x in data["w"]),
            slice_param=parse_rational(data["t"]),
            width=parse_rational(data["width"]),
            child=certificate_from_json_dict(data["child"]),
        )
    raise ValueError(f"unknown certificate type {kind!r}")


def certificate_dumps(cert: Certificate) -> str:
    return json.dumps(certificate_to_json_dict(cert), sort_keys=True, separators=(",", ":"))


def certificate_loads(text: str) -> Certificate:
    return certificate_from_json_dict(json.loads(text))


@dataclass(frozen=True)
class UpperWitness:
    """What produced the upper bound: a width functional, the volume root,
    or edge data from an orbit reduction."""

    kind: str  # "width" | "volume" | "edge" | "quotient-edge"
    functional: Optional[IntVector] = None

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.functional is not None:
            out["functional"] = [str(x) for x in self.functional]
        return out


@dataclass(frozen=True)
class BoundReport:
    """Certified two-sided bound with witnesses.

    ``lower <= upper`` always holds under exact comparison; ``exact``
    is set iff the two sides agree as exact values.  ``lower_cert`` is
    None only for reports whose lower bound is witnessed outside the
    projection-chain grammar (orbit edge data, exhausted search depth).
    """

    lower: Fraction
    lower_cert: Optional[Certificate]
    upper: BoundValue
    upper_witness: UpperWitness
    exact: bool

    def __post_init__(self):
        if BoundValue.rational(self.lower) > self.upper:
            raise AssertionError("lower bound exceeds upper bound")

    def to_json_dict(self) -> dict:
        out = {
            "lower": format_rational(self.lower),
            "upper": self.upper.to_json(),
            "exact": self.exact,
            "upper_witness": self.upper_witness.to_json_dict(),
            "approx": {"lower": float(self.lower), "upper": self.upper.approx()},
        }
        if self.lower_cert is not None:
            out["lower_certificate"] = certificate_to_json_dict(self.lower_cert)
        return out


@dataclass(frozen=True)
class SearchStrategy:
    """Which functionals and slice parameters the bound search tries.

    ``facet-normals`` uses the primitive facet normals of the current
    polytope; ``facet-normals+box`` adds every primitive vector with
    entries in [-box_height, box_height].  Slice parameters are always
    the vertex-image breakpoints and their midpoints (plus boundary
    parameters whose slice is a facet).  ``max_depth`` caps the number
    of projection steps in a chain; None means the ambient rank, which
    never binds.
    """

    functional_source: str = "facet-normals+box"
    box_height: int = 1
    slice_params: str = "breakpoints-and-midpoints"
    max_depth: Optional[int] = None
    memoize: bool = True

    def __post_init__(self):
        if self.functional_source not in ("facet-normals", "facet-normals+box"):
            raise ValueError(f"unknown functional source {self.functional_source!r}")
        if self.box_height < 1:
            raise ValueError("box height must be >= 1")
        if self.slice_params != "breakpoints-and-midpoints":
            raise ValueError(f"unknown slice parameter rule {self.slice_params!r}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max depth must be >= 1")

    @classmethod
    def default(cls, rank: int) -> "SearchStrategy":
        # Every projection the worked examples need has entries in
        # {-1, 0, 1}; the box keeps rank <= 3 searches both sharp and
        # small, while rank 4 falls back to facet normals only.
        if rank <= 3:
            return cls(functional_source="facet-normals+box", box_height=1)
        return cls(functional_source="facet-normals")


def _canonical_sign(v: IntVector) -> IntVector:
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return tuple(-y for y in v)
    raise ValueError("zero functional")


def candidate_projections(P: LatticePolytope, strategy: SearchStrategy) -> tuple[IntVector, ...]:
    """Deduplicated primitive functionals to try, in a deterministic order.

    Facet normals always participate; box mode adds all primitive
    vectors with bounded entries.  Vectors are normalized so their first
    nonzero entry is positive and then sorted lexicographically.
    """
    n = P.ambient_rank
    if P.dim != n or n < 1:
        raise ValueError("candidate projections need a full-dimensional polytope")
    cands = set()
    if n == 1:
        return ((1,),)
    for _, normal in P.facet_outward_normals:
        cands.add(_canonical_sign(primitive_part(normal)))
    if strategy.functional_source == "facet-normals+box":
        H = strategy.box_height
        for vec in product(range(-H, H + 1), repeat=n):
            if any(vec) and is_primitive(vec):
                cands.add(_canonical_sign(vec))
    return tuple(sorted(cands))


def candidate_slice_params(P: LatticePolytope, w: Sequence[int]) -> tuple[Fraction, ...]:
    """Slice parameters strictly inside the image interval.

    These are the vertex-image breakpoints in the open interval plus the
    midpoints of consecutive breakpoints; parameters whose slice drops
    dimension are filtered out.  One-dimensional polytopes are never
    sliced.
    """
    w = tuple(int(x) for x in w)
    params = _interior_slice_params(P, w)
    if P.dim == P.ambient_rank:
        # A slice of a full-dimensional polytope strictly between the
        # image endpoints always has dimension n-1, so no filter runs.
        return tuple(params)
    return tuple(t for t in params if not hyperplane_slice(P, w, t).degenerate)


def _interior_slice_params(P: LatticePolytope, w: IntVector) -> list[Fraction]:
    if P.dim == 1:
        return []
    values = sorted({dot(w, v) for v in P.vertices})
    cands = set(values[1:-1])
    for a, b in zip(values, values[1:]):
        cands.add(Fraction(a + b, 2))
    return sorted(cands)


def _boundary_slice_params(P: LatticePolytope, w: IntVector) -> list[Fraction]:
    """Image endpoints whose boundary face is a facet, so the slice there
    keeps dimension n-1 and the projection step still applies."""
    if P.dim == 1:
        return []
    values = [dot(w, v) for v in P.vertices]
    out = []
    for bound in (min(values), max(values)):
        pts = [v for v, val in zip(P.vertices, values) if val == bound]
        base = pts[0]
        if _rank_of_vectors([_point_sub(p, base) for p in pts[1:]]) == P.dim - 1:
            out.append(Fraction(bound))
    return out


def _search_slice_params(P: LatticePolytope, w: IntVector) -> list[Fraction]:
    """Interior parameters plus boundary ones whose slice is a facet."""
    return sorted(set(_interior_slice_params(P, w)) | set(_boundary_slice_params(P, w)))


_PROBE_CACHE: dict[int, tuple[IntVector, ...]] = {}


def _probe_functionals(rank: int) -> tuple[IntVector, ...]:
    probes = _PROBE_CACHE.get(rank)
    if probes is None:
        out = set()
        for vec in product((-1, 0, 1), repeat=rank):
            if any(vec) and is_primitive(vec):
                out.add(_canonical_sign(vec))
        probes = tuple(sorted(out))
        _PROBE_CACHE[rank] = probes
    return probes


def _probe_upper(P: LatticePolytope) -> Fraction:
    """A cheap upper bound on any estimate for P: every lattice width is one."""
    best = None
    for w in _probe_functionals(P.ambient_rank):
        width = functional_image(P, w).length
        if best is None or width < best:
            best = width
    return best


def _canonical_key(P: LatticePolytope):
    v0 = P.vertices[0]
    return (P.ambient_rank, tuple(tuple(c - z for c, z in zip(v, v0)) for v in P.vertices))


def estimate_interior(P: LatticePolytope, strategy: Optional[SearchStrategy] = None) -> BoundReport:
    """Two-sided certified bound at a very general point.

    The lower bound maximizes min(width, recursive slice value) over the
    candidate functionals and parameters; ties keep the first candidate
    in the deterministic order, so certificates are reproducible.  The
    upper bound is the exact minimum of the candidate widths and the
    n-th root of the normalized volume.
    """
    n = P.ambient_rank
    if P.dim != n or n < 1:
        raise ValueError("estimate needs a full-dimensional polytope of rank >= 1")
    if strategy is None:
        strategy = SearchStrategy.default(n)
    depth = strategy.max_depth if strategy.max_depth is not None else n
    memo: Optional[dict] = {} if strategy.memoize else None
    return _estimate(P, strategy, depth, memo)


def _estimate(P: LatticePolytope, strategy: SearchStrategy, depth: int,
              memo: Optional[dict]) -> BoundReport:
    key = None
    if memo is not None:
        key = (_canonical_key(P), depth)
        hit = memo.get(key)
        if hit is not None:
            return hit
    n = P.ambient_rank
    if n == 1:
        length = lattice_length(P)
        report = BoundReport(
            lower=length,
            lower_cert=BaseSegment(length=length),
            upper=BoundValue.rational(length),
            upper_witness=UpperWitness(kind="width", functional=(1,)),
            exact=True,
        )
    else:
        ws = candidate_projections(P, strategy)
        widths = [functional_image(P, w).length for w in ws]
        best_w_idx = 0
        for i in range(1, len(ws)):
            if widths[i] < widths[best_w_idx]:
                best_w_idx = i
        upper = BoundValue.rational(widths[best_w_idx])
        witness = UpperWitness(kind="width", functional=ws[best_w_idx])
        vol_root = BoundValue.nth_root(normalized_volume(P), n)
        if vol_root < upper:
            upper = vol_root
            witness = UpperWitness(kind="volume")
        lower = Fraction(0)
        cert: Optional[Certificate] = None
        if depth >= 1:
            for w, width in zip(ws, widths):
                if width <= lower:
                    continue  # min(width, child) can no longer beat the best
                for t in _search_slice_params(P, w):
                    sliced = hyperplane_slice(P, w, t)
                    child_poly = sliced.polytope
                    # Any single width already bounds the child's value,
                    # so a cheap probe can rule the branch out before the
                    # recursive search runs.  Ties lose to earlier
                    # candidates anyway, so skipping <= is safe.
                    if child_poly.ambient_rank >= 2 and _probe_upper(child_poly) <= lower:
                        continue
                    child = _estimate(child_poly, strategy, depth - 1, memo)
                    val = min(width, child.lower)
                    if val > lower:
                        lower = val
                        cert = Projection(functional=w, slice_param=t,
                                          width=width, child=child.lower_cert)
                    if lower >= width:
                        break
        report = BoundReport(
            lower=lower,
            lower_cert=cert,
            upper=upper,
            upper_witness=witness,
            exact=BoundValue.rational(lower) == upper,
        )
    if memo is not None:
        memo[key] = report
    return report


def simplex_lower_bound(a: Sequence) -> Fraction:
    """Closed-form bound for the simplex conv(e_1, ..., e_n, -sum a_i e_i).

    Equals min over i of (a_i + ... + a_n + 1) / (a_{i+1} + ... + a_n + 1)
    for nonnegative rational a_i.
    """
    avals = [to_fraction(x) for x in a]
    if any(x < 0 for x in avals):
        raise ValueError("simplex parameters must be nonnegative")
    best = None
    suffix = Fraction(1)
    # Walk from the last ratio backwards; suffix holds a_{i+1}+...+a_n+1.
    for ai in reversed(avals):
        num = suffix + ai
        ratio = num / suffix
        if best is None or ratio < best:
            best = ratio
        suffix = num
    return best if best is not None else Fraction(1)


class CertificateError(ValueError):
    """Verification failure with a machine-readable code."""

    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    PARAM_OUT_OF_RANGE = "PARAM_OUT_OF_RANGE"
    DEGENERATE_SLICE = "DEGENERATE_SLICE"
    VALUE_MISMATCH = "VALUE_MISMATCH"
    SHAPE_MISMATCH = "SHAPE_MISMATCH"
    NOT_PRIMITIVE = "NOT_PRIMITIVE"

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def verify_certificate(P: LatticePolytope, cert: Certificate) -> Fraction:
    """Recompute a certificate's value from scratch against P.

    Every stored intermediate (width, base length, closed-form value) is
    recomputed and compared exactly; any mismatch raises a
    CertificateError with a distinct code.
    """
    if isinstance(cert, BaseSegment):
        if P.dim != 1:
            raise CertificateError(CertificateError.DIMENSION_MISMATCH,
                                   "base segment certificate on a non-segment")
        length = lattice_length(P)
        if length != cert.length:
            raise CertificateError(CertificateError.VALUE_MISMATCH,
                                   f"segment length is {length}, certificate says {cert.length}")
        return length
    if isinstance(cert, SimplexClosedForm):
        n = P.ambient_rank
        if len(cert.a) != n:
            raise CertificateError(CertificateError.DIMENSION_MISMATCH,
                                   "simplex certificate rank mismatch")
        apex = tuple(-x for x in cert.a)
        expected = sorted({tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)}
                          | {tuple(map(Fraction, apex))})
        if list(P.vertices) != expected:
            raise CertificateError(CertificateError.SHAPE_MISMATCH,
                                   "polytope is not the simplex named by the certificate")
        value = simplex_lower_bound(cert.a)
        if value != cert.value:
            raise CertificateError(CertificateError.VALUE_MISMATCH,
                                   f"closed form gives {value}, certificate says {cert.value}")
        return value
    if isinstance(cert, Projection):
        w = cert.functional
        if len(w) != P.ambient_rank:
            raise CertificateError(CertificateError.DIMENSION_MISMATCH,
                                   "functional length does not match polytope rank")
        if not is_primitive(w):
            raise CertificateError(CertificateError.NOT_PRIMITIVE,
                                   "projection functional is not primitive")
        img = functional_image(P, w)
        if not img.contains(cert.slice_param):
            raise CertificateError(CertificateError.PARAM_OUT_OF_RANGE,
                                   "slice parameter outside projection image")
        width = img.length
        if width != cert.width:
            raise CertificateError(CertificateError.VALUE_MISMATCH,
                                   f"width is {width}, certificate says {cert.width}")
        sliced = hyperplane_slice(P, w, cert.slice_param)
        if sliced.degenerate:
            raise CertificateError(CertificateError.DEGENERATE_SLICE,
                                   "slice drops dimension at the stored parameter")
        child_value = verify_certificate(sliced.polytope, cert.child)
        return min(width, child_value)
    raise CertificateError(CertificateError.SHAPE_MISMATCH,
                           f"unknown certificate node {type(cert).__name__}")


def transform_certificate(cert: Certificate, U: IntMatrix, shift: Sequence) -> Certificate:
    """Rewrite a projection-chain certificate for the image polytope.

    If cert is valid for P with value c, the result is valid for
    affine_transform(P, U, shift) with the same value.  The functional
    maps by the inverse transpose; slice coordinates are realigned
    through the two kernel splittings, which stay unimodular.
    """
    if isinstance(cert, BaseSegment):
        return cert
    if isinstance(cert, SimplexClosedForm):
        raise ValueError("closed-form certificates do not transform")
    w = cert.functional
    n = len(w)
    Uinv = invert_unimodular(U)
    w_new = matvec(transpose_matrix(Uinv), w)
    w_new = primitive_part(w_new)
    shift = tuple(to_fraction(s) for s in shift)
    t_new = cert.slice_param + dot(w_new, shift)
    basis, section = kernel_splitting(tuple(w))
    basis_new, section_new = kernel_splitting(tuple(w_new))
    cols_new = list(basis_new) + [section_new]
    M_new = tuple(tuple(cols_new[j][i] for j in range(n)) for i in range(n))
    R = invert_unimodular(M_new)[:-1]  # top n-1 rows
    UB = tuple(matvec(U, b) for b in basis)  # columns of U @ B
    A = tuple(tuple(dot(R[i], UB[j]) for j in range(n - 1)) for i in range(n - 1))
    Us = matvec(U, section)
    offset = tuple(cert.slice_param * x for x in Us)
    y0 = tuple(o + s for o, s in zip(offset, shift))
    d = matvec(R, y0)
    child = transform_certificate(cert.child, A, d)
    return Projection(functional=tuple(w_new), slice_param=t_new,
                      width=cert.width, child=child)
