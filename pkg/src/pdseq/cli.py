"""Command-line front end: sequence dumps, series inversion, kernel reports,
automaton synthesis, language counting, relation search, and the check suite.

Exit codes: 0 all requested work succeeded, 1 at least one check failed,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import automata, catalog, checks, kernel, series

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _parse_horizon_overrides(pairs, env=None):
    overrides = {}
    env_value = (env or os.environ).get("PDSEQ_HORIZONS", "")
    chunks = [c for c in env_value.split(",") if c.strip()]
    for chunk in chunks + list(pairs or []):
        if "=" not in chunk:
            raise ValueError(f"horizon override {chunk!r} is not of the form id=value")
        key, value = chunk.split("=", 1)
        overrides[key.strip()] = int(value)
    return overrides


def cmd_seq(args):
    lines = catalog.bfile_lines(args.name, args.count, offset=args.offset)
    sys.stdout.write("\n".join(lines) + ("\n" if lines else ""))
    return 0


def cmd_invert(args):
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file) as fh:
            text = fh.read()
    s = series.TruncatedSeries.from_json(text)
    sys.stdout.write(series.reversion(s).to_json() + "\n")
    return 0


def cmd_kernel(args):
    profile = kernel.rank_profile(
        catalog.sequence(args.name).prefix, args.k, max_depth=args.depth, horizon=args.horizon
    )
    report = profile.to_json_dict()
    report["sequence"] = args.name
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        for row in report["depths"]:
            sys.stdout.write(
                f"depth {row['depth']}: classes {row['class_count']} rank {row['rank']}\n"
            )
    return 0


def cmd_dfao(args):
    analysis = kernel.compute_kernel(
        catalog.sequence(args.name).prefix, args.k, horizon=args.horizon
    )
    if not analysis.closed:
        sys.stderr.write(f"kernel of {args.name} did not close within the depth cap\n")
        return USAGE_ERROR
    machine = automata.minimize(kernel.synthesize_dfao(analysis))
    if args.dot:
        sys.stdout.write(machine.to_dot(args.name) + "\n")
    else:
        sys.stdout.write(machine.to_json() + "\n")
    return 0


def cmd_complexity(args):
    dfa = catalog.language(args.language)
    counts = [automata.count_length_n(dfa, n) for n in range(args.count + 1)]
    if args.format == "json":
        sys.stdout.write(json.dumps({"language": args.language, "counts": [str(c) for c in counts]}) + "\n")
    else:
        for n, c in enumerate(counts):
            sys.stdout.write(f"{n} {c}\n")
    return 0


def cmd_ore(args):
    s = catalog.series_by_name(args.name, args.precision, args.p)
    relation = series.power_relation_search(s, args.depth, args.deg)
    if relation is None:
        sys.stdout.write("none\n")
        return 0
    sys.stdout.write(relation.to_json() + "\n")
    return 0


def cmd_check(args):
    overrides = _parse_horizon_overrides(args.horizon)
    selection = args.ids or None
    start = time.perf_counter()
    results = checks.run_paper_checks(selection, overrides)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        report = {
            "results": [r.to_json_dict() for r in results],
            "elapsed_seconds": round(elapsed, 3),
        }
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        for r in results:
            line = f"{r.check_id}: {r.status.upper()} [{r.horizon}] ({r.elapsed:.2f}s)"
            if r.detail:
                line += f"\n    {r.detail}"
            sys.stdout.write(line + "\n")
    return CHECK_FAILURE if any(r.status == "fail" for r in results) else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pdseq",
        description="automatic sequences, F_p power series, and the period-doubling formal inverse",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print a sequence as b-file lines")
    p.add_argument("name", choices=catalog.sequence_names())
    p.add_argument("count", type=int)
    p.add_argument("--offset", type=int, default=0)
    p.set_defaults(fn=cmd_seq)

    p = sub.add_parser("invert", help="compositional inverse of a series given as JSON")
    p.add_argument("file", help="path to the series JSON, or - for stdin")
    p.set_defaults(fn=cmd_invert)

    p = sub.add_parser("kernel", help="kernel class/rank report for a sequence")
    p.add_argument("name", choices=catalog.sequence_names())
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--horizon", type=int, default=512)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("dfao", help="synthesize the minimal automaton from a closed kernel")
    p.add_argument("name", choices=catalog.sequence_names())
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--horizon", type=int, default=512)
    p.add_argument("--dot", action="store_true", help="emit GraphViz instead of JSON")
    p.set_defaults(fn=cmd_dfao)

    p = sub.add_parser("complexity", help="accepted-word counts by length")
    p.add_argument("language", choices=sorted(catalog.LANGUAGES))
    p.add_argument("count", type=int, help="largest length to report")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(fn=cmd_complexity)

    p = sub.add_parser("ore", help="search a power-pattern relation for a series")
    p.add_argument("name", help="sequence name, gf:<name>, inv:<name>, u, or up<p>")
    p.add_argument("--p", type=int, default=None, help="prime field (inferred when omitted)")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--deg", type=int, default=3)
    p.add_argument("--precision", type=int, default=512)
    p.set_defaults(fn=cmd_ore)

    p = sub.add_parser("check", help="run the claim-check suite")
    p.add_argument("ids", nargs="*", help="check ids (default: all)")
    p.add_argument(
        "--horizon",
        action="append",
        default=[],
        metavar="ID=VALUE",
        help="override the main horizon of one check (also PDSEQ_HORIZONS env)",
    )
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--list", action="store_true", help="list known check ids and exit")
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "list", False):
        for check_id, (description, _) in checks.CHECKS.items():
            sys.stdout.write(f"{check_id}: {description}\n")
        return 0
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
