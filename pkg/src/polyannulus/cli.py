"""Command line interface.

Exit codes: 0 success, 2 usage error, 3 invalid input, 4 approximation
guarantee violated under ``--oracle-check``.
"""

import argparse
import sys

import numpy as np

from . import io as fileio
from .annulus import fatness_stats
from .errors import AnnulusError
from .oracle import brute_force_oracle, dense_angle_scan
from .polytope import Rotation
from .render import render_svg
from .rotation import mwa_rigid, mwa_rotation_only
from .sampler import GeneratorSpec, delta_for_count, sample_boundary
from .translation import SolverConfig, mwa_translation

OK, USAGE, INVALID, VIOLATED = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _vector(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


def _solver_flags(p, points=True):
    p.add_argument("--polytope", required=True, help="polytope JSON file")
    if points:
        p.add_argument("--points", required=True, help="point cloud, CSV or JSON")
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.add_argument("--crossover", type=int, default=200_000,
                   help="n * gridpoints above which the planar sweep is used")
    p.add_argument("--max-orientations", type=int, default=None)


def build_parser():
    parser = _Parser(prog="polyannulus", description="Minimum-width polytope annulus tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (("solve", "translation-only annulus"),
                            ("solve-rigid", "annulus under rotations and translations"),
                            ("solve-fixed-center", "best orientation for a fixed center")):
        p = sub.add_parser(name, help=help_text)
        _solver_flags(p)
        p.add_argument("--render", help="also write an SVG drawing (2D only)")
        p.add_argument("--oracle-check", action="store_true",
                       help="compare against the brute-force oracle")
        if name == "solve-fixed-center":
            p.add_argument("--center", type=_vector, required=True, help="comma separated")

    p = sub.add_parser("sample", help="generate a sampled polytope boundary")
    p.add_argument("--polytope", required=True)
    p.add_argument("--output", required=True, help="points file, CSV or JSON")
    p.add_argument("--truth", help="write the generating annulus as JSON here")
    p.add_argument("--n", type=int, default=None, help="approximate sample count")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--band", type=float, default=0.0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--translation", type=_vector, default=None)
    p.add_argument("--angles", type=_vector, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("oracle", help="brute-force width bracket")
    p.add_argument("--polytope", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--mode", choices=("translation", "rigid"), default="translation")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")

    p = sub.add_parser("stats", help="fatness and slimness of a solution")
    p.add_argument("--polytope", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--output")

    p = sub.add_parser("bench", help="time the solvers, CSV output")
    p.add_argument("--n", type=_vector, default=[10_000, 100_000, 1_000_000])
    p.add_argument("--epsilon", type=_vector, default=[0.2, 0.1, 0.05])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-rigid", action="store_true")
    p.add_argument("--output")

    p = sub.add_parser("render", help="SVG of points and a solution")
    p.add_argument("--polytope", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--output", required=True)
    return parser


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args):
    return SolverConfig(epsilon=args.epsilon, seed=args.seed, threads=args.threads,
                        crossover=args.crossover, max_orientations=args.max_orientations)


def _solve(args):
    C = fileio.read_polytope(args.polytope)
    pts = fileio.read_points(args.points, C.dim).points
    cfg = _config(args)
    if args.command == "solve":
        sol = mwa_translation(C, pts, cfg)
    elif args.command == "solve-rigid":
        sol = mwa_rigid(C, pts, cfg)
    else:
        if len(args.center) != C.dim:
            raise AnnulusError(f"--center needs {C.dim} coordinates")
        sol = mwa_rotation_only(C, pts, np.array(args.center), cfg)
    code = OK
    if args.oracle_check:
        if args.command == "solve-fixed-center":
            best, _ = dense_angle_scan(C, pts, args.center)
            lower, upper, slack = best, best, 0.0
        else:
            mode = "translation" if args.command == "solve" else "rigid"
            report = brute_force_oracle(C, pts, mode, seed=args.seed)
            lower, upper, slack = report.lower, report.upper, report.slack
        ok = sol.width <= (1 + cfg.epsilon) * upper + slack + 1e-9 and sol.width >= lower - 1e-9
        sol.meta["oracle"] = {"lower": lower, "upper": upper, "ok": bool(ok)}
        if not ok:
            print(f"guarantee violated: width {sol.width} against oracle [{lower}, {upper}]",
                  file=sys.stderr)
            code = VIOLATED
    _emit(fileio.dumps(sol.to_dict()), args.output)
    if args.render:
        with open(args.render, "w") as fh:
            fh.write(render_svg(C, pts, sol, seed=args.seed))
    return code


def _sample(args):
    C = fileio.read_polytope(args.polytope)
    if args.delta is None:
        delta = delta_for_count(C, args.n or 200, args.scale)
    else:
        delta = args.delta
    angles = tuple(args.angles) if args.angles else (0.0,) * (C.dim - 1)
    if len(angles) != C.dim - 1:
        raise AnnulusError(f"--angles needs {C.dim - 1} values")
    translation = args.translation or [0.0] * C.dim
    if len(translation) != C.dim:
        raise AnnulusError(f"--translation needs {C.dim} values")
    spec = GeneratorSpec(C, np.array(translation), Rotation(C.dim, angles), args.scale,
                         delta, args.band, args.seed)
    inst = sample_boundary(spec)
    fileio.write_points(inst.points, args.output)
    truth = {"center": inst.center.tolist(), "rotation_angles": list(inst.rotation.angles),
             "inner_radius": inst.inner_radius, "outer_radius": inst.outer_radius,
             "width": inst.width, "delta": delta, "n": int(inst.points.shape[0]),
             "certified": inst.certified}
    _emit(fileio.dumps(truth), args.truth)
    return OK


def _oracle(args):
    C = fileio.read_polytope(args.polytope)
    pts = fileio.read_points(args.points, C.dim).points
    report = brute_force_oracle(C, pts, args.mode, levels=args.levels, seed=args.seed)
    _emit(fileio.dumps(report.to_dict()), args.output)
    return OK


def _stats(args):
    C = fileio.read_polytope(args.polytope)
    pts = fileio.read_points(args.points, C.dim).points
    sol = fileio.read_solution(args.solution)
    fatness, slimness = fatness_stats(C, pts, sol)
    _emit(fileio.dumps({"fatness": fatness, "slimness": slimness, "width": sol.width}), args.output)
    return OK


def _bench(args):
    from .bench import run_bench, to_csv
    rows = run_bench([int(n) for n in args.n], args.epsilon, seed=args.seed,
                     rigid_epsilons=() if args.no_rigid else (max(args.epsilon),))
    _emit(to_csv(rows), args.output)
    return OK


def _render(args):
    C = fileio.read_polytope(args.polytope)
    pts = fileio.read_points(args.points, C.dim).points
    sol = fileio.read_solution(args.solution)
    with open(args.output, "w") as fh:
        fh.write(render_svg(C, pts, sol))
    return OK


_COMMANDS = {"solve": _solve, "solve-rigid": _solve, "solve-fixed-center": _solve,
             "sample": _sample, "oracle": _oracle, "stats": _stats, "bench": _bench,
             "render": _render}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SystemExit as exc:  # --help
        return exc.code or OK
    try:
        return _COMMANDS[args.command](args)
    except (AnnulusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
