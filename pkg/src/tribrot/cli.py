"""Command-line front end: 2D/3D renders, verification suites, algebra utils.

Exit codes: 0 success, 1 runtime failure (I/O, failed verification, zero
divisor), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .algebra import NonInvertibleError, idem4_decompose
from .dynamics import IterationConfig
from .parsing import ParseError, format_complex, format_tc, parse_tc
from .render import (
    Box3,
    Window2,
    extract_surface,
    raster2d,
    voxelize,
    write_obj,
    write_obj_layers,
    write_pgm,
    write_tbvx,
)
from .slices import PRINCIPAL_SLICES, SLICE_BOXES, SliceSpec
from .verify import CHECK_NAMES, run_checks

__all__ = ["main"]

_DEFAULT_WINDOWS = {
    "mandelbrot": (-2.5, 1.0, -1.5, 1.5),
    "hyperbrot": (-2.5, 1.0, -1.5, 1.5),
    "setA": (-1.5, 1.5, -1.5, 1.5),
}

_SLICE_CHOICES = tuple(PRINCIPAL_SLICES) + ("starbrot", "earthbrot")


def _parse_floats(text, count, flag):
    parts = [p for p in text.split(",") if p != ""]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{flag}: expected numbers, got {text!r}")
    if len(values) not in count:
        raise argparse.ArgumentTypeError(
            f"{flag}: expected {' or '.join(map(str, count))} comma-separated "
            f"values, got {len(values)}")
    return values


def _parse_res2d(text):
    try:
        w, h = text.lower().split("x")
        w, h = int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--res: expected WxH, got {text!r}")
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("--res: dimensions must be >= 1")
    return w, h


def _cmd_render2d(args) -> int:
    window = (_parse_floats(args.window, (4,), "--window")
              if args.window else _DEFAULT_WINDOWS[args.set])
    width, height = args.res
    win = Window2(window[0], window[1], window[2], window[3], width, height)
    cfg = IterationConfig(max_iter=args.max_iter)
    grid = raster2d(args.set, win, cfg)
    write_pgm(grid, args.out)
    return 0


def _default_box(args, parser):
    if args.slice is not None:
        return SLICE_BOXES[args.slice]
    # custom unit triple: the bounded set fits the per-axis extent of the
    # plain Mandelbrot set, wider along a real axis
    spec = _units_spec(args, parser)
    return tuple((-2.2, 0.8) if u == "1" else (-1.3, 1.3) for u in spec.units)


def _units_spec(args, parser) -> SliceSpec:
    units = tuple(u.strip() for u in args.units.split(","))
    try:
        return SliceSpec(units)
    except ValueError as exc:
        parser.error(str(exc))


def _cmd_render3d(args, parser) -> int:
    if args.box is not None:
        values = _parse_floats(args.box, (2, 6), "--box")
        if len(values) == 2:
            bounds = (tuple(values),) * 3
        else:
            bounds = (tuple(values[0:2]), tuple(values[2:4]), tuple(values[4:6]))
    else:
        bounds = _default_box(args, parser)
    box = Box3(bounds, args.res)
    cfg = IterationConfig(max_iter=args.max_iter)
    target = args.slice if args.slice is not None else _units_spec(args, parser)

    out = str(args.out)
    if out.endswith(".tbvx"):
        if args.layers:
            parser.error("--layers applies to OBJ output only")
        vox = voxelize(target, box, cfg)
        write_tbvx(vox, out)
        return 0
    if not out.endswith(".obj"):
        parser.error("--out must end in .obj or .tbvx")

    vox = voxelize(target, box, cfg)
    if args.layers:
        thresholds = [int(t) for t in args.layers.split(",")]
        if any(t < 1 for t in thresholds):
            parser.error("--layers thresholds must be >= 1")
        layers = [(f"layer_{t}", extract_surface(vox, t)) for t in thresholds]
        write_obj_layers(layers, out)
    else:
        write_obj(extract_surface(vox), out)
    return 0


def _cmd_verify(args) -> int:
    report = run_checks(
        [args.check],
        samples=args.samples,
        seed=args.seed,
        max_iter=args.max_iter,
        grid2d=args.grid2d,
        grid3d=args.grid3d,
    )
    for chk in report["checks"]:
        print(f"{chk['check']}: {'PASS' if chk['pass'] else 'FAIL'}")
    if args.report:
        with open(args.report, "w", encoding="ascii") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report["pass"] else 1


def _cmd_algebra(args, parser) -> int:
    try:
        if args.op == "mul":
            _require_operands(args, 2, parser)
            print(format_tc(parse_tc(args.operands[0]) * parse_tc(args.operands[1])))
        elif args.op == "inverse":
            _require_operands(args, 1, parser)
            print(format_tc(parse_tc(args.operands[0]).inverse()))
        elif args.op == "conj":
            _require_operands(args, 2, parser)
            value = parse_tc(args.operands[0])
            try:
                k = int(args.operands[1])
            except ValueError:
                parser.error(f"conj index must be an integer, got {args.operands[1]!r}")
            if not 1 <= k <= 7:
                parser.error("conj index must be in 1..7")
            print(format_tc(value.conjugate(k)))
        else:  # decompose
            _require_operands(args, 1, parser)
            components = idem4_decompose(parse_tc(args.operands[0]))
            labels = ("g1g3", "g1bg3", "g1g3b", "g1bg3b")
            for label, z in zip(labels, components):
                print(f"{label}: {format_complex(z)}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonInvertibleError:
        print("zero divisor", file=sys.stderr)
        return 1
    return 0


def _require_operands(args, count, parser):
    if len(args.operands) != count:
        parser.error(f"algebra {args.op} takes {count} operand(s)")


# Let values like "-0.75,0.75" or "-2.5,1,-1.5,1.5" follow --box/--window
# without being mistaken for option flags.
_NEGATIVE_VALUE = re.compile(r"^-\d+$|^-\d*\.\d+$|^-[\d.eE+-]*[\d.](,[\d.eE+-]+)+$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tribrot",
        description="Render and verify 3D slices of the tricomplex Mandelbrot set.",
    )
    parser._negative_number_matcher = _NEGATIVE_VALUE
    sub = parser.add_subparsers(dest="command", required=True)

    p2 = sub.add_parser("render2d", help="rasterize a 2D set to PGM")
    p2.add_argument("--set", required=True, choices=tuple(_DEFAULT_WINDOWS),
                    help="which 2D set to render")
    p2.add_argument("--window", default=None,
                    help="umin,umax,vmin,vmax (default depends on the set)")
    p2.add_argument("--res", type=_parse_res2d, default=(256, 256),
                    help="resolution WxH (default 256x256)")
    p2.add_argument("--max-iter", type=int, default=1000)
    p2.add_argument("--out", required=True, help="output PGM path")

    p3 = sub.add_parser("render3d", help="voxelize a 3D slice to OBJ or TBVX")
    group = p3.add_mutually_exclusive_group(required=True)
    group.add_argument("--slice", choices=_SLICE_CHOICES)
    group.add_argument("--units", help="three distinct units, e.g. j1,j2,j3")
    p3.add_argument("--box", default=None,
                    help="lo,hi for all axes or all six bounds "
                         "(default depends on the slice)")
    p3.add_argument("--res", type=int, default=64, help="voxels per axis")
    p3.add_argument("--max-iter", type=int, default=1000)
    p3.add_argument("--layers", default=None,
                    help="comma-separated escape-count thresholds; one OBJ "
                         "object per threshold")
    p3.add_argument("--out", required=True, help="output .obj or .tbvx path")

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--check", default="all", choices=CHECK_NAMES + ("all",))
    pv.add_argument("--samples", type=int, default=100000,
                    help="random sample budget (char-equivalence uses a "
                         "tenth per slice)")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--max-iter", type=int, default=1000)
    pv.add_argument("--grid2d", type=int, default=512,
                    help="2D grid resolution for closed-form checks")
    pv.add_argument("--grid3d", type=int, default=64,
                    help="3D grid resolution for closed-form checks")
    pv.add_argument("--report", default=None, help="write a JSON report here")

    pa = sub.add_parser("algebra", help="tricomplex arithmetic on text values")
    pa.add_argument("op", choices=("mul", "inverse", "conj", "decompose"))
    pa.add_argument("operands", nargs="*")

    for p in (p2, p3, pv, pa):
        p._negative_number_matcher = _NEGATIVE_VALUE
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        if args.command == "render2d":
            return _cmd_render2d(args)
        if args.command == "render3d":
            return _cmd_render3d(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_algebra(args, parser)
    except SystemExit as exc:  # parser.error inside handlers
        return exc.code if isinstance(exc.code, int) else 2
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
