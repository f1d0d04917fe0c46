"""Command line front end.

Exit codes: 0 success, 1 computational failure (e.g. no limit cycle),
2 usage or validation error.  All numeric output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import manifolds, morse, solid
from .dynamics import SystemParams, equilibria, region, slow_manifold
from .integrate import DEFAULT_ATOL, DEFAULT_RTOL, IntegrationError, integrate
from .manifolds import InvalidManifold, invariants
from .orbits import (
    LimitCycleNotFound,
    classify_shell,
    detect_limit_cycle,
    poincare,
)
from .serialize import (
    CsvFormatError,
    atomic_write_text,
    classification_to_dict,
    complex_from_dict,
    complex_to_dict,
    crossings_to_dict,
    cycle_failure_to_dict,
    dumps,
    equilibrium_to_dict,
    family_to_dict,
    fmt,
    frame_to_dict,
    invariants_to_dict,
    limit_cycle_to_dict,
    read_trajectory_csv,
    section_report_to_dict,
    slow_manifold_to_dict,
    trajectory_csv,
)
from .surgery import (
    AnnulusSite,
    CurveSite,
    DiscPairSite,
    GluingMap,
    InvalidSite,
    surgery_1d_0,
    surgery_2d_0,
    surgery_2d_1,
)
from .svgplot import frame_svg, trajectory_svg

USAGE_ERROR = 2
FAILURE = 1


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _usage_error(msg: str) -> SystemExit:
    print(f"error: {msg}", file=sys.stderr)
    return SystemExit(USAGE_ERROR)


def _params(args) -> SystemParams:
    try:
        return SystemParams(args.A, args.B, args.C)
    except ValueError as exc:
        raise _usage_error(str(exc))


def _triple(text: str, name: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise _usage_error(f"{name} must be three comma-separated numbers")
    try:
        return tuple(float(x) for x in parts)
    except ValueError:
        raise _usage_error(f"{name}: could not parse {text!r}")


def _int_list(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError:
        raise _usage_error(f"{name}: could not parse {text!r}")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_equilibria(args) -> int:
    p = _params(args)
    reports = equilibria(p)
    sm = slow_manifold(p)
    doc = {
        "params": {"A": p.A, "B": p.B, "C": p.C},
        "region": region(p),
        "equilibria": [equilibrium_to_dict(e) for e in reports],
        "slow_manifold": slow_manifold_to_dict(sm),
    }
    if args.format == "json":
        _emit(dumps(doc), args.out)
    else:
        lines = [f"region: {doc['region']}"]
        for e in reports:
            lams = ", ".join(
                f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}i"
                if z.imag else fmt(z.real)
                for z in e.eigen.eigenvalues
            )
            coords = ", ".join(fmt(x) for x in e.coordinates)
            lines.append(f"{e.label} = ({coords})  eigenvalues {{{lams}}}  {e.stability_class}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_simulate(args) -> int:
    p = _params(args)
    ic = _triple(args.ic, "--ic")
    try:
        traj = integrate(p, ic, args.t_end, rtol=args.rtol, atol=args.atol)
    except ValueError as exc:
        raise _usage_error(str(exc))
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return FAILURE
    _emit(trajectory_csv(traj, resample_n=args.resample), args.out)
    return 0


def cmd_classify_shell(args) -> int:
    p = _params(args)
    ic = _triple(args.ic, "--ic")
    try:
        traj = integrate(p, ic, args.t_end, rtol=args.rtol, atol=args.atol)
    except ValueError as exc:
        raise _usage_error(str(exc))
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return FAILURE
    c = classify_shell(traj)
    doc = classification_to_dict(c)
    doc["params"] = {"A": p.A, "B": p.B, "C": p.C}
    doc["ic"] = list(ic)
    doc["t_end"] = args.t_end
    _emit(dumps(doc), args.out)
    return 0


def cmd_poincare(args) -> int:
    p = _params(args)
    ic = _triple(args.ic, "--ic")
    point = _triple(args.plane_point, "--plane-point")
    normal = _triple(args.plane_normal, "--plane-normal")
    try:
        traj = integrate(p, ic, args.t_end, rtol=args.rtol, atol=args.atol)
        crossings = poincare(traj, point, normal)
    except ValueError as exc:
        raise _usage_error(str(exc))
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return FAILURE
    _emit(dumps(crossings_to_dict(crossings)), args.out)
    return 0


def cmd_limit_cycle(args) -> int:
    p = _params(args)
    ic = _triple(args.ic, "--ic")
    if region(p) != "region_b":
        print(
            f"warning: parameters lie in {region(p)}, not region_b; "
            "an isolated cycle is not expected",
            file=sys.stderr,
        )
    try:
        lc = detect_limit_cycle(
            p, ic, eps_cycle=args.eps_cycle, explore_time=args.explore_time
        )
    except (LimitCycleNotFound, IntegrationError) as exc:
        history = getattr(exc, "history", ())
        _emit(dumps(cycle_failure_to_dict(str(exc), history)), args.out)
        return FAILURE
    _emit(dumps(limit_cycle_to_dict(lc)), args.out)
    return 0


def cmd_surgery(args) -> int:
    try:
        with open(args.input) as f:
            doc = json.load(f)
        if "kind" not in doc and "complex" in doc:
            doc = doc["complex"]  # accept our own output documents back
        m = complex_from_dict(doc)
    except (OSError, ValueError, KeyError, InvalidManifold) as exc:
        raise _usage_error(f"cannot load complex: {exc}")
    g = GluingMap(rotation=args.rotation, orientation_flip=args.flip)
    try:
        if args.dim == 1:
            arcs = _int_list(args.site, "--site")
            if len(arcs) != 2:
                raise _usage_error("1-dimensional site needs exactly 2 arcs")
            result = surgery_1d_0(m, CurveSite(arcs), g)
        elif args.type == 0:
            if not args.site_a or not args.site_b:
                raise _usage_error("2-dimensional 0-surgery needs --site-a and --site-b")
            site = DiscPairSite(
                _int_list(args.site_a, "--site-a"), _int_list(args.site_b, "--site-b")
            )
            result = surgery_2d_0(m, site, g)
        else:
            if not args.site:
                raise _usage_error("2-dimensional 1-surgery needs --site")
            result = surgery_2d_1(m, AnnulusSite(_int_list(args.site, "--site")), g)
    except (InvalidSite, InvalidManifold, TypeError) as exc:
        raise _usage_error(f"invalid surgery: {exc}")
    doc = {
        "complex": complex_to_dict(result),
        "invariants": invariants_to_dict(invariants(result)),
    }
    _emit(dumps(doc), args.out)
    return 0


def cmd_build(args) -> int:
    try:
        if args.kind in ("circle",):
            m = manifolds.build_standard("circle", args.n)
        elif args.kind == "two_circles":
            m = manifolds.build_standard("two_circles", args.n, args.m)
        elif args.kind == "genus_g":
            m = manifolds.build_standard("genus_g", args.g)
        elif args.kind == "globe":
            m = manifolds.globe(args.rings, args.segments)
        else:
            m = manifolds.build_standard(args.kind)
    except (InvalidManifold, ValueError) as exc:
        raise _usage_error(str(exc))
    doc = {
        "complex": complex_to_dict(m),
        "invariants": invariants_to_dict(invariants(m)),
    }
    _emit(dumps(doc), args.out)
    return 0


def cmd_morse_frames(args) -> int:
    try:
        frames = morse.morse_frames(args.t, box=args.box, resolution=args.resolution)
    except ValueError as exc:
        raise _usage_error(str(exc))
    if args.format == "json":
        doc = {"frames": [frame_to_dict(f) for f in frames]}
        _emit(dumps(doc), args.out)
    else:
        if not args.out_dir:
            raise _usage_error("--format svg requires --out-dir")
        for i, f in enumerate(frames):
            atomic_write_text(f"{args.out_dir}/frame_{i:03d}.svg", frame_svg(f))
        print(f"wrote {len(frames)} frames to {args.out_dir}")
    return 0


def cmd_solid_demo(args) -> int:
    kind = {"1d0": "solid_1d_0", "2d0": "solid_2d_0", "2d1": "solid_2d_1"}.get(
        args.kind, args.kind
    )
    try:
        fam_in, fam_out = solid.solid_surgery(kind, args.layers, args.direction)
        rep_in = solid.cross_section_check(fam_in)
        rep_out = solid.cross_section_check(fam_out)
    except ValueError as exc:
        raise _usage_error(str(exc))
    doc = {
        "input": family_to_dict(fam_in),
        "output": family_to_dict(fam_out),
        "limit": fam_out.limit,
        "cross_sections": {
            "input": section_report_to_dict(rep_in),
            "output": section_report_to_dict(rep_out),
        },
    }
    _emit(dumps(doc), args.out)
    return 0


def cmd_plot(args) -> int:
    try:
        with open(args.infile) as f:
            rows = read_trajectory_csv(f.read())
    except OSError as exc:
        raise _usage_error(f"cannot read CSV: {exc}")
    except CsvFormatError as exc:
        raise _usage_error(f"malformed CSV: {exc}")
    markers = None
    if args.equilibria:
        A, B, C = _triple(args.equilibria, "--equilibria")
        try:
            p = SystemParams(A, B, C)
        except ValueError as exc:
            raise _usage_error(str(exc))
        markers = [(e.label, e.coordinates) for e in equilibria(p)]
    try:
        svg = trajectory_svg(rows, projection=args.projection, markers=markers)
    except ValueError as exc:
        raise _usage_error(str(exc))
    _emit(svg, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_param_args(sp, with_ic=False):
    sp.add_argument("--A", type=float, required=True)
    sp.add_argument("--B", type=float, required=True)
    sp.add_argument("--C", type=float, required=True)
    if with_ic:
        sp.add_argument("--ic", required=True, help="initial state X,Y,Z")
        sp.add_argument("--t-end", dest="t_end", type=float, default=200.0)
        sp.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
        sp.add_argument("--atol", type=float, default=DEFAULT_ATOL)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toposurge",
        description="Topological surgery on combinatorial manifolds and the "
        "three-species system whose orbits drill holes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("equilibria", help="steady states, eigenvalues, stability")
    _add_param_args(sp)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_equilibria)

    sp = sub.add_parser("simulate", help="integrate and write trajectory CSV")
    _add_param_args(sp, with_ic=True)
    sp.add_argument("--resample", type=int, default=0, help="uniform rows (0 = raw steps)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("classify-shell", help="spherical/toroidal/stationary verdict")
    _add_param_args(sp, with_ic=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify_shell)

    sp = sub.add_parser("poincare", help="plane-crossing section of an orbit")
    _add_param_args(sp, with_ic=True)
    sp.add_argument("--plane-point", required=True)
    sp.add_argument("--plane-normal", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_poincare)

    sp = sub.add_parser("limit-cycle", help="locate the periodic orbit (region b)")
    _add_param_args(sp, with_ic=True)
    sp.add_argument("--eps-cycle", dest="eps_cycle", type=float, default=1e-9)
    sp.add_argument("--explore-time", dest="explore_time", type=float, default=300.0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_limit_cycle)

    sp = sub.add_parser("surgery", help="cut-and-glue on a complex JSON file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--dim", type=int, choices=(1, 2), required=True)
    sp.add_argument("--type", type=int, choices=(0, 1), default=0)
    sp.add_argument("--site", help="arc pair (1d) or annulus triangles (2d type 1)")
    sp.add_argument("--site-a", dest="site_a", help="first disc triangles (2d type 0)")
    sp.add_argument("--site-b", dest="site_b", help="second disc triangles (2d type 0)")
    sp.add_argument("--rotation", type=int, default=0)
    sp.add_argument("--flip", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_surgery)

    sp = sub.add_parser("build", help="emit a standard complex as JSON")
    sp.add_argument(
        "--kind",
        choices=("circle", "two_circles", "sphere", "torus", "genus_g", "globe"),
        required=True,
    )
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--m", type=int, default=6)
    sp.add_argument("--g", type=int, default=1)
    sp.add_argument("--rings", type=int, default=3)
    sp.add_argument("--segments", type=int, default=6)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("morse-frames", help="level sets of x^2 - y^2 = t")
    sp.add_argument("--t", type=float, nargs="+", required=True)
    sp.add_argument("--box", type=float, default=2.0)
    sp.add_argument("--resolution", type=int, default=64)
    sp.add_argument("--format", choices=("json", "svg"), default="json")
    sp.add_argument("--out")
    sp.add_argument("--out-dir", dest="out_dir")
    sp.set_defaults(func=cmd_morse_frames)

    sp = sub.add_parser("solid-demo", help="layered surgery family with limits")
    sp.add_argument("--kind", choices=("1d0", "2d0", "2d1"), required=True)
    sp.add_argument("--layers", type=int, default=5)
    sp.add_argument("--direction", choices=("forward", "dual"), default="forward")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_solid_demo)

    sp = sub.add_parser("plot", help="render a trajectory CSV to SVG")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--projection", choices=("xy", "xz", "yz", "iso"), default="iso")
    sp.add_argument("--equilibria", help="overlay steady states for A,B,C")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_plot)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except InvalidSite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
