"""Command-line surface: polytope bounds, degeneration arithmetic,
certificate checking, and the built-in reference-value suite.

All numeric output is exact (integers, "p/q" strings, or structural
root records); decimals appear only in the advisory "approx" field.
Exit codes: 0 success, 1 reference-suite mismatch, 2 input error,
3 certificate verification failure.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from .degeneration import (
    CIDescriptor,
    best_ci_lower_bound,
    ci_fano_exact_value,
    fano_table,
    fano_table_text,
    multipoint_hypersurface_bound,
)
from .estimator import (
    CertificateError,
    SearchStrategy,
    certificate_loads,
    estimate_interior,
    verify_certificate,
)
from .orbits import bound_at_orbit, maximal_face, orbit_profile, profile_to_json
from .polytope import Face, LatticePolytope
from .selfcheck import run_reference_suite


def _load_polytope(path: str) -> LatticePolytope:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise click.ClickException(f"cannot read {path}: {exc}") from exc
    try:
        return LatticePolytope.loads(text)
    except ValueError as exc:
        click.echo(f"{path}: {exc}", err=True)
        sys.exit(2)


def _strategy_from_options(box, facet_normals_only, max_depth, rank) -> SearchStrategy:
    if facet_normals_only:
        source = "facet-normals"
        height = 1
    else:
        default = SearchStrategy.default(rank)
        source = default.functional_source
        height = box if box is not None else default.box_height
        if box is not None:
            source = "facet-normals+box"
    try:
        return SearchStrategy(functional_source=source, box_height=height,
                              max_depth=max_depth)
    except ValueError as exc:
        click.echo(f"invalid strategy: {exc}", err=True)
        sys.exit(2)


def _thread_cap() -> int:
    """Upper limit on worker parallelism; the engine is sequential, which
    satisfies any cap of at least one."""
    raw = os.environ.get("SESHADRI_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise click.ClickException(f"SESHADRI_THREADS must be an integer, got {raw!r}")
    if cap < 1:
        raise click.ClickException("SESHADRI_THREADS must be >= 1")
    return cap


def _emit(data: dict, fmt: str, text_renderer=None):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        if text_renderer is None:
            click.echo(json.dumps(data, indent=2, sort_keys=True))
        else:
            click.echo(text_renderer(data))


format_option = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                             default="json", show_default=True, help="Output format.")


@click.group()
def main():
    """Certified exact bounds for Seshadri constants from lattice polytopes."""
    _thread_cap()


@main.command("toric-bound")
@click.argument("polytope_path", type=click.Path())
@click.option("--point", default="interior", show_default=True,
              help="'interior' or 'face:I,J,...' (vertex indices of a face).")
@click.option("--box", type=int, default=None, help="Box height for candidate functionals.")
@click.option("--facet-normals-only", is_flag=True, help="Search facet normals only.")
@click.option("--max-depth", type=int, default=None, help="Cap on projection chain length.")
@format_option
def toric_bound(polytope_path, point, box, facet_normals_only, max_depth, fmt):
    """Bound the Seshadri constant of the polarized toric variety of a polytope."""
    P = _load_polytope(polytope_path)
    strategy = _strategy_from_options(box, facet_normals_only, max_depth, P.ambient_rank)
    if point == "interior":
        face = maximal_face(P)
    elif point.startswith("face:"):
        try:
            indices = tuple(sorted(int(x) for x in point[5:].split(",")))
        except ValueError:
            click.echo(f"--point: cannot parse face indices in {point!r}", err=True)
            sys.exit(2)
        match = [f for f in P.faces if f.vertex_indices == indices]
        if not match:
            click.echo(f"--point: {list(indices)} is not a face of the polytope", err=True)
            sys.exit(2)
        face = match[0]
    else:
        click.echo(f"--point: expected 'interior' or 'face:I,J,...', got {point!r}", err=True)
        sys.exit(2)
    report = bound_at_orbit(P, face, strategy)
    data = report.to_json_dict()
    data["point"] = "interior" if point == "interior" else {"face": list(face.vertex_indices)}

    def render(d):
        lines = [f"lower  = {d['lower']}",
                 f"upper  = {json.dumps(d['upper'])}",
                 f"exact  = {str(d['exact']).lower()}"]
        return "\n".join(lines)

    _emit(data, fmt, render)


@main.command("orbit-profile")
@click.argument("polytope_path", type=click.Path())
@click.option("--box", type=int, default=None)
@click.option("--facet-normals-only", is_flag=True)
@click.option("--max-depth", type=int, default=None)
@format_option
def orbit_profile_cmd(polytope_path, box, facet_normals_only, max_depth, fmt):
    """Per-orbit bounds for every face of the polytope."""
    P = _load_polytope(polytope_path)
    strategy = _strategy_from_options(box, facet_normals_only, max_depth, P.ambient_rank)
    profile = orbit_profile(P, strategy)
    rows = profile_to_json(profile)
    data = {"rank": P.ambient_rank, "orbits": rows}

    def render(d):
        lines = []
        for row in d["orbits"]:
            lines.append(f"face {row['face_vertex_indices']} (dim {row['dim']}): "
                         f"lower {row['lower']}, upper {json.dumps(row['upper'])}, "
                         f"exact {str(row['exact']).lower()}")
        return "\n".join(lines)

    _emit(data, fmt, render)


@main.command("hypersurface")
@click.option("--n", "n", type=int, required=True, help="Dimension of the hypersurface.")
@click.option("--d", "d", type=int, required=True, help="Degree.")
@click.option("--weights", default="1", show_default=True,
              help="Comma-separated positive integer weights.")
@format_option
def hypersurface(n, d, weights, fmt):
    """Multi-point floor bound and chain refinement for a very general hypersurface."""
    try:
        m = tuple(int(x) for x in weights.split(","))
        result = multipoint_hypersurface_bound(n, d, m)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    data = result.to_json_dict()

    def render(dd):
        lines = [f"floor lower = {dd['floor_lower']}"]
        if "lower" in dd:
            lines.append(f"chain lower = {dd['lower']}")
        lines.append(f"upper       = {json.dumps(dd['upper'])}")
        lines.append(f"exact       = {str(dd['exact']).lower()}")
        return "\n".join(lines)

    _emit(data, fmt, render)


@main.command("complete-intersection")
@click.option("--n", "n", type=int, required=True, help="Dimension of the complete intersection.")
@click.option("--degrees", required=True, help="Comma-separated degrees d1,...,dk.")
@format_option
def complete_intersection(n, degrees, fmt):
    """Best exponent-matrix lower bound, plus the exact Fano value when known."""
    try:
        degs = tuple(int(x) for x in degrees.split(","))
        desc = CIDescriptor(n=n, degrees=degs)
        bound, E = best_ci_lower_bound(desc)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    data = {"n": n, "degrees": list(degs), "lower": str(bound)}
    if E is not None:
        data["exponent_matrix"] = [list(row) for row in E.entries]
    sorted_degs = tuple(sorted(degs))
    if all(x >= 2 for x in sorted_degs) and sum(sorted_degs) <= n + len(sorted_degs):
        exact = ci_fano_exact_value(CIDescriptor(n=n, degrees=sorted_degs))
        data["fano_exact_value"] = str(exact.value)
        if exact.witness is not None:
            data["curve_witness"] = {"degree": exact.witness.degree,
                                     "multiplicity": exact.witness.multiplicity}

    def render(dd):
        lines = [f"lower = {dd['lower']}"]
        if "fano_exact_value" in dd:
            lines.append(f"exact = {dd['fano_exact_value']}")
        return "\n".join(lines)

    _emit(data, fmt, render)


@main.command("fano-table")
@format_option
def fano_table_cmd(fmt):
    """The 17 anticanonical values for Fano 3-folds of Picard rank one."""
    if fmt == "text":
        click.echo(fano_table_text())
    else:
        click.echo(json.dumps({"rows": [r.to_json_dict() for r in fano_table()]},
                              indent=2, sort_keys=True))


@main.command("verify-cert")
@click.argument("polytope_path", type=click.Path())
@click.argument("cert_path", type=click.Path())
@format_option
def verify_cert(polytope_path, cert_path, fmt):
    """Replay a bound certificate against a polytope."""
    P = _load_polytope(polytope_path)
    try:
        with open(cert_path, "r", encoding="utf-8") as fh:
            cert = certificate_loads(fh.read())
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        click.echo(f"{cert_path}: {exc}", err=True)
        sys.exit(2)
    try:
        value = verify_certificate(P, cert)
    except CertificateError as exc:
        _emit({"ok": False, "code": exc.code, "message": str(exc)}, fmt,
              lambda d: f"FAIL {d['code']}: {d['message']}")
        sys.exit(3)
    _emit({"ok": True, "value": str(value)}, fmt, lambda d: f"OK value = {d['value']}")


@main.command("verify-values")
@click.option("--filter", "name_filter", default=None,
              help="Run only fixtures whose name contains this substring.")
@format_option
def verify_values(name_filter, fmt):
    """Recompute the built-in table of exact reference values."""
    results = run_reference_suite(name_filter)
    failures = [r for r in results if not r.ok]
    if fmt == "json":
        click.echo(json.dumps({
            "total": len(results),
            "failed": len(failures),
            "results": [{"name": r.name, "expected": r.expected,
                         "actual": r.actual, "ok": r.ok} for r in results],
        }, indent=2, sort_keys=True))
    else:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            line = f"{status} {r.name}: {r.actual}"
            if not r.ok:
                line += f" (expected {r.expected})"
            click.echo(line)
        click.echo(f"{len(results) - len(failures)}/{len(results)} fixtures passed")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
