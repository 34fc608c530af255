"""Built-in suite of exact reference values.

Each fixture recomputes a published or hand-checkable quantity from
scratch and compares it exactly; the suite is the fast end-to-end sanity
check exposed by the command line.  A fixture failure reports both the
expected and the computed value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .degeneration import (
    CIDescriptor,
    ExponentMatrix,
    ci_fano_exact_value,
    ci_toric_lower_bound,
    fano_table,
    integer_nth_root_floor,
    multipoint_hypersurface_bound,
    optimize_chain,
)
from .estimator import (
    Projection,
    certificate_value,
    estimate_interior,
    simplex_lower_bound,
    verify_certificate,
)
from .orbits import bound_at_orbit, maximal_face, quotient_edge_length
from .polytope import (
    LatticePolytope,
    functional_image,
    hyperplane_slice,
    lattice_length,
    min_edge_length,
    normalized_volume,
)


def cubic_triangle() -> LatticePolytope:
    """The moment polytope of the binomial cubic surface in P^3."""
    return LatticePolytope(2, [(1, 0), (0, 1), (-1, -1)])


@dataclass
class FixtureResult:
    name: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def _result(name: str, expected, actual) -> FixtureResult:
    return FixtureResult(name=name, expected=str(expected), actual=str(actual))


def _fixtures() -> list[tuple[str, Callable[[], FixtureResult]]]:
    out: list[tuple[str, Callable[[], FixtureResult]]] = []

    def fixture(name):
        def register(fn):
            out.append((name, fn))
            return fn
        return register

    @fixture("triangle-projection-image")
    def _():
        img = functional_image(cubic_triangle(), (0, 1))
        return _result("triangle-projection-image", "[-1, 1]", f"[{img.lo}, {img.hi}]")

    @fixture("triangle-slice-length")
    def _():
        s = hyperplane_slice(cubic_triangle(), (0, 1), 0)
        return _result("triangle-slice-length", Fraction(3, 2), lattice_length(s.polytope))

    @fixture("triangle-volume")
    def _():
        return _result("triangle-volume", 3, normalized_volume(cubic_triangle()))

    @fixture("triangle-interior-lower")
    def _():
        r = estimate_interior(cubic_triangle())
        cert = r.lower_cert
        shape = ""
        if isinstance(cert, Projection):
            shape = f" via w={list(cert.functional)} t={cert.slice_param}"
        return _result("triangle-interior-lower", "3/2 via w=[0, 1] t=0",
                       f"{r.lower}{shape}")

    @fixture("triangle-certificate-replay")
    def _():
        r = estimate_interior(cubic_triangle())
        return _result("triangle-certificate-replay", r.lower,
                       verify_certificate(cubic_triangle(), r.lower_cert))

    @fixture("triangle-edge-orbit")
    def _():
        P = cubic_triangle()
        edge = next(f for f in P.faces if f.dim == 1)
        r = bound_at_orbit(P, edge)
        return _result("triangle-edge-orbit", "1 exact", f"{r.lower} {'exact' if r.exact else 'open'}")

    @fixture("triangle-quotient-edge")
    def _():
        P = cubic_triangle()
        edge = next(f for f in P.faces if f.dim == 1)
        return _result("triangle-quotient-edge", 3, quotient_edge_length(P, edge))

    @fixture("triangle-vertex-orbit")
    def _():
        P = cubic_triangle()
        vertex = next(f for f in P.faces if f.dim == 0)
        r = bound_at_orbit(P, vertex)
        return _result("triangle-vertex-orbit", "1 exact", f"{r.lower} {'exact' if r.exact else 'open'}")

    @fixture("p1xp1-rectangles")
    def _():
        vals = []
        for a in range(1, 4):
            for b in range(a, 4):
                P = LatticePolytope(2, [(0, 0), (a, 0), (0, b), (a, b)])
                r = estimate_interior(P)
                vals.append(r.exact and r.lower == a)
        return _result("p1xp1-rectangles", "all exact min side",
                       "all exact min side" if all(vals) else "mismatch")

    @fixture("simplex-form-6/5")
    def _():
        return _result("simplex-form-6/5", Fraction(6, 5),
                       simplex_lower_bound((Fraction(1, 3),) * 3))

    @fixture("simplex-form-4/3")
    def _():
        return _result("simplex-form-4/3", Fraction(4, 3), simplex_lower_bound((1, 1, 1)))

    @fixture("ci-fano-quartic")
    def _():
        v = ci_fano_exact_value(CIDescriptor(n=3, degrees=(4,)))
        return _result("ci-fano-quartic", "4/3 curve 8/6",
                       f"{v.value} curve {v.witness.degree}/{v.witness.multiplicity}")

    @fixture("ci-fano-(2,3)")
    def _():
        v = ci_fano_exact_value(CIDescriptor(n=3, degrees=(2, 3)))
        return _result("ci-fano-(2,3)", Fraction(3, 2), v.value)

    @fixture("ci-fano-(2,2,2)")
    def _():
        v = ci_fano_exact_value(CIDescriptor(n=3, degrees=(2, 2, 2)))
        return _result("ci-fano-(2,2,2)", Fraction(2), v.value)

    @fixture("exponent-bound-octic")
    def _():
        E = ExponentMatrix(entries=((4,), (2,), (1,)))
        r = ci_toric_lower_bound(CIDescriptor(n=3, degrees=(8,)), E)
        return _result("exponent-bound-octic", "bound 2 b=(8, 4, 2)",
                       f"bound {r.bound} b={r.b}")

    @fixture("exponent-bound-(2,3)")
    def _():
        E = ExponentMatrix(entries=((1, 0), (0, 1), (0, 1)))
        r = ci_toric_lower_bound(CIDescriptor(n=3, degrees=(2, 3)), E)
        return _result("exponent-bound-(2,3)", "bound 3/2 a=(3, 1, 1)",
                       f"bound {r.bound} a={r.a}")

    @fixture("chain-surface-degree-7")
    def _():
        r = optimize_chain(2, 7)
        return _result("chain-surface-degree-7", "7/3 via (7, 3)",
                       f"{r.bound} via {r.chain}")

    @fixture("chain-threefold-degree-22")
    def _():
        r = optimize_chain(3, 22)
        return _result("chain-threefold-degree-22", "8/3 via (22, 8, 3)",
                       f"{r.bound} via {r.chain}")

    @fixture("floor-root-22")
    def _():
        return _result("floor-root-22", 2, integer_nth_root_floor(22, 3))

    @fixture("multipoint-octic-two-points")
    def _():
        r = multipoint_hypersurface_bound(2, 8, (1, 1))
        return _result("multipoint-octic-two-points", "lower 2 = upper, exact",
                       f"lower {r.floor_lower} {'=' if r.exact else '<'} upper, "
                       f"{'exact' if r.exact else 'open'}")

    @fixture("fano-table-values")
    def _():
        values = [str(row.value) for row in fano_table()]
        expected = ["6/5", "4/3", "3/2"] + ["2"] * 12 + ["3", "4"]
        return _result("fano-table-values", " ".join(expected), " ".join(values))

    @fixture("fano-row-11-polytope")
    def _():
        P = LatticePolytope(3, [(0, 0, 0), (2, 0, 0), (0, 2, 0), (-2, -2, 2)])
        r = estimate_interior(P)
        return _result("fano-row-11-polytope", "2 exact",
                       f"{r.lower} {'exact' if r.exact else 'open'}")

    @fixture("fano-row-17-simplex")
    def _():
        P = LatticePolytope(3, [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])
        r = estimate_interior(P)
        return _result("fano-row-17-simplex", "4 exact",
                       f"{r.lower} {'exact' if r.exact else 'open'}")

    @fixture("fixed-point-min-edge")
    def _():
        P = LatticePolytope(3, [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4)])
        vals = {str(min_edge_length(P, v)) for v in P.vertices}
        return _result("fixed-point-min-edge", "{'4'}", str(vals))

    return out


def run_reference_suite(name_filter: Optional[str] = None) -> list[FixtureResult]:
    """Run every fixture (optionally substring-filtered) and collect results."""
    results = []
    for name, fn in _fixtures():
        if name_filter and name_filter not in name:
            continue
        try:
            results.append(fn())
        except Exception as exc:  # a crash is a failure, not an abort
            results.append(FixtureResult(name=name, expected="(no error)",
                                         actual=f"error: {exc}"))
    return results
