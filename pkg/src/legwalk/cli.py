"""The ``legwalk`` command line.

Standard output carries machine-readable JSON (experiment reports, verify
results); progress and human-oriented notes go to standard error.  All
limit-like options accept 1e6 scientific and 10^6 caret notation.
"""

import argparse
import json
import os
import sys

from . import verify as verify_mod
from .experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    ExperimentError,
    parse_int_scalar,
    run_experiment,
)
from .primes import cache_path, save_cache, sieve_upto

_FORMATS = ("csv", "json", "svg")


def _parse_formats(text: str) -> tuple:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    bad = [p for p in parts if p not in _FORMATS]
    if bad or not parts:
        raise argparse.ArgumentTypeError(
            f"formats must be a comma list from {_FORMATS}, got {text!r}"
        )
    return parts


def _output_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--output-dir", default="out", help="artifact directory")
    parent.add_argument(
        "--formats",
        type=_parse_formats,
        default=("csv", "json"),
        help="comma list from csv,json,svg",
    )
    parent.add_argument(
        "--cache-dir",
        default=None,
        help="prime cache directory (default: $LEGWALK_CACHE)",
    )
    parent.add_argument(
        "--cache-file", default=None, help="explicit prime cache file to use"
    )
    parent.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit the generation timestamp comment from SVG output",
    )
    parent.add_argument(
        "--quiet", action="store_true", help="suppress progress on stderr"
    )
    return parent


def _progress_for(args):
    if args.quiet:
        return None
    return lambda message: print(message, file=sys.stderr)


def _run_named(args, name: str, params: dict, formats=None) -> int:
    config = ExperimentConfig(
        name=name,
        params={k: v for k, v in params.items() if v is not None},
        output_dir=args.output_dir,
        formats=formats if formats is not None else args.formats,
        cache_dir=args.cache_dir or os.environ.get("LEGWALK_CACHE"),
        cache_file=args.cache_file,
        svg_timestamp=not args.no_timestamp,
    )
    report = run_experiment(config, progress=_progress_for(args))
    sys.stdout.write(report.to_json())
    if not args.quiet:
        print(f"done in {report.wall_time_s:.2f}s -> {args.output_dir}", file=sys.stderr)
    return 0


def _cmd_sieve(args) -> int:
    cache_dir = args.cache_dir or os.environ.get("LEGWALK_CACHE") or "."
    limit = args.limit
    table = sieve_upto(limit, args.segment_size)
    path = cache_path(cache_dir, limit)
    digest = save_cache(table, path)
    sys.stdout.write(
        json.dumps(
            {"path": path, "limit": limit, "count": len(table), "sha256": digest},
            sort_keys=True,
            indent=2,
        )
        + "\n"
    )
    return 0


def _cmd_race(args) -> int:
    return _run_named(args, "race", {"mod": args.mod, "grid": args.grid})


def _cmd_walk(args) -> int:
    return _run_named(
        args,
        "walk",
        {
            "p": args.p,
            "q_limit": args.q_limit,
            "filter": args.filter,
            "direction": args.direction,
            "envelope": args.envelope or None,
        },
    )


def _cmd_gwalk(args) -> int:
    return _run_named(
        args,
        "gwalk",
        {
            "pi": args.pi,
            "max_norm": args.max_norm,
            "include_ramified": False if args.exclude_ramified else None,
            "envelope": args.envelope or None,
        },
    )


def _cmd_avg_ratio(args) -> int:
    return _run_named(
        args,
        "avg-ratio",
        {
            "p_below": args.p_below,
            "checkpoints": args.checkpoints,
            "stat": args.stat,
            "filter": args.filter,
        },
    )


def _cmd_log_measure(args) -> int:
    return _run_named(
        args,
        "log-measure",
        {
            "mod": args.mod,
            "leader": args.leader,
            "laggard": args.laggard,
            "x_max": args.X,
        },
    )


def _cmd_correlate(args) -> int:
    return _run_named(
        args, "gauss-corr", {"p": args.p, "max_norm": args.max_norm}
    )


def _cmd_experiment(args) -> int:
    params = {}
    for item in args.set or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise ExperimentError(f"--set expects key=value, got {item!r}")
        params[key.strip()] = value
    return _run_named(args, args.name, params)


def _cmd_verify(args) -> int:
    progress = _progress_for(args) or (lambda message: None)
    results = verify_mod.run_suite(args.suite, args.scale, progress=progress)
    sys.stdout.write(
        json.dumps([r.to_dict() for r in results], sort_keys=True, indent=2) + "\n"
    )
    ok = verify_mod.all_passed(results)
    if not args.quiet:
        state = "all checks passed" if ok else "FAILURES PRESENT"
        print(f"verify {args.suite}/{args.scale}: {state}", file=sys.stderr)
    return 0 if ok else 1


def _cmd_plot(args) -> int:
    if args.what == "walk":
        return _run_named(
            args,
            "walk",
            {
                "p": args.p,
                "q_limit": args.q_limit,
                "filter": args.filter,
                "direction": args.direction,
                "envelope": args.envelope or None,
            },
            formats=("svg",),
        )
    if args.what == "gwalk":
        return _run_named(
            args,
            "gwalk",
            {
                "pi": args.pi,
                "max_norm": args.max_norm,
                "include_ramified": False if args.exclude_ramified else None,
                "envelope": args.envelope or None,
            },
            formats=("svg",),
        )
    return _run_named(
        args, "gauss-plot", {"max_norm": args.max_norm}, formats=("svg",)
    )


def _int_arg(text):
    try:
        return parse_int_scalar(text)
    except ExperimentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_walk_options(sub, include_p=True):
    if include_p:
        sub.add_argument("--p", type=_int_arg, required=True, help="odd prime modulus")
    sub.add_argument("--q-limit", type=_int_arg, default=None)
    sub.add_argument("--filter", choices=("all", "1mod4", "3mod4"), default=None)
    sub.add_argument("--direction", choices=("qp", "pq"), default=None)
    sub.add_argument("--envelope", action="store_true")


def _add_gwalk_options(sub):
    sub.add_argument("--pi", required=True, help="Gaussian prime, e.g. 4+9i")
    sub.add_argument("--max-norm", type=_int_arg, default=None)
    sub.add_argument("--exclude-ramified", action="store_true")
    sub.add_argument("--envelope", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legwalk",
        description="quadratic-residue walks and prime races over rational "
        "and Gaussian primes",
    )
    out = _output_parent()
    sub = parser.add_subparsers(dest="command", required=True)

    p_sieve = sub.add_parser("sieve", parents=[out], help="build and cache a prime table")
    p_sieve.add_argument("--limit", type=_int_arg, required=True)
    p_sieve.add_argument("--segment-size", type=_int_arg, default=1 << 20)
    p_sieve.set_defaults(handler=_cmd_sieve)

    p_race = sub.add_parser("race", parents=[out], help="prime race tally")
    p_race.add_argument("--mod", type=_int_arg, required=True)
    p_race.add_argument("--grid", default=None, help="e.g. 10^1..10^6 or 10,100,1000")
    p_race.set_defaults(handler=_cmd_race)

    p_walk = sub.add_parser("walk", parents=[out], help="rational character walk")
    _add_walk_options(p_walk)
    p_walk.set_defaults(handler=_cmd_walk)

    p_gwalk = sub.add_parser("gwalk", parents=[out], help="Gaussian character walk")
    _add_gwalk_options(p_gwalk)
    p_gwalk.set_defaults(handler=_cmd_gwalk)

    p_avg = sub.add_parser("avg-ratio", parents=[out], help="averaged statistic curve")
    p_avg.add_argument("--p-below", type=_int_arg, default=None)
    p_avg.add_argument("--checkpoints", default=None, help="e.g. 10^3..10^6")
    p_avg.add_argument("--stat", choices=("qr", "run2", "run3", "run4"), default=None)
    p_avg.add_argument("--filter", choices=("all", "1mod4", "3mod4"), default=None)
    p_avg.set_defaults(handler=_cmd_avg_ratio)

    p_lm = sub.add_parser("log-measure", parents=[out], help="race lead measure")
    p_lm.add_argument("--mod", type=_int_arg, required=True)
    p_lm.add_argument("--leader", type=_int_arg, required=True)
    p_lm.add_argument("--laggard", type=_int_arg, required=True)
    p_lm.add_argument("--X", type=_int_arg, required=True)
    p_lm.set_defaults(handler=_cmd_log_measure)

    p_corr = sub.add_parser(
        "correlate", parents=[out], help="paired Gaussian walk correlation"
    )
    p_corr.add_argument("--p", type=_int_arg, required=True, help="prime = 1 mod 4")
    p_corr.add_argument("--max-norm", type=_int_arg, default=None)
    p_corr.set_defaults(handler=_cmd_correlate)

    p_verify = sub.add_parser("verify", parents=[out], help="run verification suites")
    p_verify.add_argument("--suite", choices=verify_mod.SUITES, default="all")
    p_verify.add_argument("--scale", choices=verify_mod.SCALES, default="quick")
    p_verify.set_defaults(handler=_cmd_verify)

    p_exp = sub.add_parser(
        "experiment", parents=[out], help="run any registered experiment by name"
    )
    p_exp.add_argument("name", choices=sorted(EXPERIMENTS))
    p_exp.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override an experiment parameter (repeatable)",
    )
    p_exp.set_defaults(handler=_cmd_experiment)

    p_plot = sub.add_parser("plot", parents=[out], help="render SVG figures")
    plot_sub = p_plot.add_subparsers(dest="what", required=True)
    pw = plot_sub.add_parser("walk", parents=[out])
    _add_walk_options(pw)
    pg = plot_sub.add_parser("gwalk", parents=[out])
    _add_gwalk_options(pg)
    ps = plot_sub.add_parser("gauss", parents=[out])
    ps.add_argument("--max-norm", type=_int_arg, default=None)
    p_plot.set_defaults(handler=_cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ExperimentError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
