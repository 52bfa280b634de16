"""Command-line front end.

Subcommands: count, sweep, mass, moments, tnk, threshold.  Flags may come
from a JSON config file (``--config``); explicit flags override it.  Exit
codes: 0 success, 2 usage/parameter error, 3 resource-guard truncation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, analysis, svg
from .distributions import max_mass, min_mass, parse_distribution
from .errors import ParameterError, ResourceGuardError
from .fields import BOUNDARY_NONE, fitness_field
from .graphs import parse_family
from .paths import (
    DEFAULT_FRONTIER_GUARD,
    count_large_paths,
    count_open_vs_accessible,
    _total_paths,
)


def _parse_seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError as exc:
        raise ParameterError(f"bad seed {text!r} (decimal or 0x-hex)") from exc


def _parse_drifts(text):
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    if text.startswith("range:"):
        parts = text[len("range:") :].split(",")
        if len(parts) != 3:
            raise ParameterError("drift range needs start,stop,step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ParameterError("drift range needs step > 0 and stop >= start")
        out = []
        k = 0
        while True:
            c = round(start + k * step, 12)
            if c > stop + 1e-12:
                break
            out.append(c)
            k += 1
        return out
    return [float(p) for p in text.split(",")]


def _parse_int_list(text) -> list:
    if isinstance(text, int):
        return [text]
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    return [int(p) for p in text.split(",")]


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser):
    """Fill unset flags from the JSON config file, if given."""
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ParameterError("config file must hold a JSON object")
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ParameterError(f"config key {key!r} is not a recognized option")
        if getattr(args, attr) is None:
            setattr(args, attr, value)
    return args


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ParameterError(f"missing required option --{name.replace('_', '-')}")


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w"), True


# ---------------------------------------------------------------------------
# Subcommands


def cmd_count(args) -> int:
    _require(args, "family")
    dag = parse_family(args.family)
    if not dag.finite:
        raise ParameterError("count needs a finite family")
    if args.all_open:
        print(_total_paths(dag))
        return 0
    _require(args, "dist", "c", "seed")
    dist = parse_distribution(args.dist)
    field = fitness_field(dag, dist, float(args.c), _parse_seed(str(args.seed)))
    if args.compare_coupling:
        _require(args, "xc")
        open_count, acc_count = count_open_vs_accessible(dag, field, float(args.xc))
        print(f"open={open_count} accessible={acc_count}")
        return 0
    result = count_large_paths(dag, field)
    print(result.count)
    if args.verbose:
        print(json.dumps(result.field_descriptor), file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    _require(args, "family", "dist", "c", "heights", "runs", "seed")
    dag = parse_family(args.family)
    dist = parse_distribution(args.dist)
    drifts = _parse_drifts(args.c)
    heights = _parse_int_list(args.heights)
    runs = int(args.runs)
    seed = _parse_seed(str(args.seed))
    guard = int(args.guard) if args.guard is not None else DEFAULT_FRONTIER_GUARD
    workers = int(args.workers) if args.workers is not None else (os.cpu_count() or 1)
    boundary = args.boundary or BOUNDARY_NONE
    curve = analysis.run_survival_experiment(
        dag, dist, drifts, heights, runs, seed,
        boundary=boundary, guard=guard, workers=workers, backend=args.backend,
    )
    fmt = args.format or "csv"
    comments = []
    if args.timestamp:
        import datetime

        comments.append(f"generated {datetime.datetime.now().isoformat()}")
    censored_total = sum(pt.censored for pt in curve.points)
    if censored_total:
        comments.append(f"partial: {censored_total} guard-censored run rows")
    fh, close = _open_out(args.output)
    try:
        if fmt == "csv":
            analysis.curve_to_csv(curve, fh, comments)
        elif fmt == "json":
            fh.write(analysis.curve_to_json(curve) + "\n")
        elif fmt == "svg":
            fh.write(svg.curve_to_svg(curve) + "\n")
        else:
            raise ParameterError(f"unknown format {fmt!r}")
    finally:
        if close:
            fh.close()
    if args.svg_output:
        with open(args.svg_output, "w") as sfh:
            sfh.write(svg.curve_to_svg(curve) + "\n")
    return 0


def cmd_mass(args) -> int:
    _require(args, "dist", "c")
    dist = parse_distribution(args.dist)
    c = float(args.c)
    iv = min_mass(dist, c) if args.min else max_mass(dist, c)
    print(f"{iv.mass:.12g}")
    if args.verbose:
        print(
            f"interval=({iv.x_left:.12g}, {iv.x_left + iv.length:.12g}] "
            f"length={iv.length:.12g}",
            file=sys.stderr,
        )
    return 0


def cmd_moments(args) -> int:
    _require(args, "family", "p", "runs", "seed")
    dag = parse_family(args.family)
    merge = frozenset(_parse_int_list(args.merge)) if args.merge else frozenset()
    p_tilde = float(args.p_tilde) if args.p_tilde is not None else 1.0
    report = analysis.moment_report(
        dag, float(args.p), int(args.runs), _parse_seed(str(args.seed)),
        merge, p_tilde,
    )
    print(json.dumps(report.__dict__, indent=2))
    return 0


def cmd_tnk(args) -> int:
    _require(args, "n")
    table = analysis.path_intersection_table(int(args.n))
    for k in sorted(table):
        print(f"{k},{table[k]}")
    return 0


def cmd_threshold(args) -> int:
    _require(args, "input", "height")
    with open(args.input) as fh:
        curve = analysis.curve_from_csv(fh)
    min_survivals = int(args.min_survivals) if args.min_survivals is not None else 1
    bracket = analysis.estimate_threshold(curve, int(args.height), min_survivals)
    print(f"c_low={bracket.c_low:.10g} c_high={bracket.c_high:.10g}")
    if args.verbose:
        print(bracket.notes, file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmfperc",
        description="RMF accessibility percolation: counting, sweeps, thresholds.",
    )
    parser.add_argument("--version", action="version", version=f"rmfperc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("count", help="exact path counts on a finite family")
    common(p)
    p.add_argument("--family")
    p.add_argument("--all-open", action="store_true",
                   help="count all source-to-sink paths")
    p.add_argument("--dist")
    p.add_argument("--c")
    p.add_argument("--seed")
    p.add_argument("--compare-coupling", action="store_true",
                   help="also count open paths of the coupled site process")
    p.add_argument("--xc", help="left endpoint of the coupling window")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", help="survival-curve Monte Carlo over a drift grid")
    common(p)
    p.add_argument("--family")
    p.add_argument("--dist")
    p.add_argument("--c", help="drift: value, comma list, or range:start,stop,step")
    p.add_argument("--heights", help="comma list of target heights")
    p.add_argument("--runs")
    p.add_argument("--seed")
    p.add_argument("--boundary", choices=[BOUNDARY_NONE, "source_neg_inf"])
    p.add_argument("--guard", help="frontier-size guard (trees)")
    p.add_argument("--workers")
    p.add_argument("--backend", choices=["cython", "numpy", "default"])
    p.add_argument("--format", choices=["csv", "json", "svg"])
    p.add_argument("--output", help="output path ('-' for stdout)")
    p.add_argument("--svg-output", help="also write an SVG plot here")
    p.add_argument("--timestamp", action="store_true",
                   help="add a timestamp comment line to the CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mass", help="interval mass functionals of a distribution")
    common(p)
    p.add_argument("--dist")
    p.add_argument("--c")
    p.add_argument("--min", action="store_true",
                   help="minimal interval mass instead of maximal")
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("moments", help="open-path count moments vs closed form")
    common(p)
    p.add_argument("--family")
    p.add_argument("--p")
    p.add_argument("--runs")
    p.add_argument("--seed")
    p.add_argument("--merge", help="comma list of merge levels")
    p.add_argument("--p-tilde")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("tnk", help="hypercube path-intersection table T(n,k)")
    common(p)
    p.add_argument("--n")
    p.set_defaults(func=cmd_tnk)

    p = sub.add_parser("threshold", help="bracket the threshold from a sweep CSV")
    common(p)
    p.add_argument("--input", help="CSV produced by the sweep command")
    p.add_argument("--height")
    p.add_argument("--min-survivals")
    p.set_defaults(func=cmd_threshold)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args, parser)
        return args.func(args)
    except ParameterError as exc:
        print(f"rmfperc: error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"rmfperc: resource guard: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"rmfperc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
