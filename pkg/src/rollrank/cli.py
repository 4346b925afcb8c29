"""Command-line interface.

Exit codes: 0 success, 2 parse or validation error, 3 singular system.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import ingest
from .errors import SingularSystemError, ValidationError
from .pipeline import DEFAULT_THRESHOLD, parse_anchor_spec, run
from .rank import format_score, kendall_tau, ranking_records, spearman_rho, write_ranking
from .similarity import write_weights_csv

logger = logging.getLogger("rollrank")

EXIT_OK, EXIT_INVALID, EXIT_SINGULAR = 0, 2, 3


def _add_input_args(p):
    p.add_argument("--input", required=True, help="vote file (CSV or .ord)")
    p.add_argument("--format", choices=["csv", "ord"], default=None,
                   help="input format (default: from file suffix)")
    p.add_argument("--filter-threshold", type=float, default=DEFAULT_THRESHOLD,
                   help="drop roll calls whose majority share exceeds this (default 0.95)")
    p.add_argument("--exclude", action="append", default=[], metavar="ID",
                   help="drop a member by id before ranking (repeatable)")
    p.add_argument("--out", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rollrank", description="Rank voters from roll-call records."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank all members")
    _add_input_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--anchor", action="extend", nargs="+", metavar="NAME_OR_ID=SCORE",
                       help="fix a member's score (give at least two)")
    group.add_argument("--auto-anchors", action="store_true",
                       help="anchor the least similar pair at +1/-1")
    p.add_argument("--orient", metavar="NAME_OR_ID",
                   help="with --auto-anchors, the member that gets +1")
    p.add_argument("--output", choices=["text", "csv", "json"], default="text")
    p.add_argument("--dump-weights", metavar="FILE", help="write the weight matrix as CSV")

    p = sub.add_parser("compare", help="rank with two anchor sets and correlate")
    _add_input_args(p)
    spec_help = "'auto', 'auto:NAME_OR_ID', or comma-separated NAME_OR_ID=SCORE pairs"
    p.add_argument("--anchors-a", required=True, help=spec_help)
    p.add_argument("--anchors-b", required=True, help=spec_help)
    p.add_argument("--output", choices=["text", "json"], default="text")

    p = sub.add_parser("synth", help="write a synthetic two-bloc vote file")
    p.add_argument("--n-per-bloc", type=int, default=25)
    p.add_argument("--rollcalls", type=int, default=60)
    p.add_argument("--flip-prob", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "ord"], default="csv")
    p.add_argument("--out", default=None)
    return parser


def _emit(data: bytes, path):
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _load(args):
    matrix = ingest.load(args.input, args.format)
    if args.exclude:
        matrix = ingest.exclude_members(matrix, args.exclude)
    return matrix


def _run_kwargs(spec: str) -> dict:
    spec = spec.strip()
    if spec == "auto":
        return {"auto": True}
    if spec.startswith("auto:"):
        return {"auto": True, "orient": spec[len("auto:"):]}
    return {"anchor_specs": [parse_anchor_spec(s) for s in spec.split(",") if s.strip()]}


def _describe_anchors(result) -> str:
    roster = result.matrix.roster
    return ", ".join(
        f"{roster[i].name} ({roster[i].id})={s:+g}" for i, s in result.anchors.entries.items()
    )


def _log_run(result):
    logger.info("dropped %d near-unanimous roll calls; %d remain",
                result.n_dropped, result.matrix.n_rollcalls)
    logger.info("anchors: %s", _describe_anchors(result))
    if result.anchors.arbitrary_orientation:
        logger.warning("anchor orientation is arbitrary (lower index got +1); "
                       "pass --orient to choose it")


def cmd_rank(args):
    kwargs = {"threshold": args.filter_threshold}
    if args.auto_anchors:
        kwargs.update(auto=True, orient=args.orient)
    else:
        if args.orient:
            raise ValidationError("--orient requires --auto-anchors")
        kwargs["anchor_specs"] = [parse_anchor_spec(s) for s in args.anchor]
    result = run(_load(args), **kwargs)
    _log_run(result)
    if args.dump_weights:
        _emit(write_weights_csv(result.weights, result.matrix.roster), args.dump_weights)
    _emit(write_ranking(result.ranking, args.output), args.out)


def cmd_compare(args):
    matrix = _load(args)
    a = run(matrix, threshold=args.filter_threshold, **_run_kwargs(args.anchors_a))
    b = run(matrix, threshold=args.filter_threshold, **_run_kwargs(args.anchors_b))
    for r in (a, b):
        _log_run(r)
    tau = kendall_tau(a.ranking, b.ranking)
    rho = spearman_rho(a.ranking, b.ranking)
    if args.output == "json":
        doc = {
            "a": {"anchors": _describe_anchors(a), "ranking": ranking_records(a.ranking)},
            "b": {"anchors": _describe_anchors(b), "ranking": ranking_records(b.ranking)},
            "kendall_tau": float(format_score(tau)),
            "spearman_rho": float(format_score(rho)),
        }
        data = (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    else:
        parts = [
            f"== Ranking A (anchors: {_describe_anchors(a)}) ==\n".encode(),
            write_ranking(a.ranking, "text"),
            f"\n== Ranking B (anchors: {_describe_anchors(b)}) ==\n".encode(),
            write_ranking(b.ranking, "text"),
            f"\nkendall_tau: {format_score(tau)}\nspearman_rho: {format_score(rho)}\n".encode(),
        ]
        data = b"".join(parts)
    _emit(data, args.out)


def cmd_synth(args):
    m = ingest.generate_synthetic(args.n_per_bloc, args.rollcalls, args.flip_prob, args.seed)
    writer = ingest.write_ord if args.format == "ord" else ingest.write_csv
    _emit(writer(m), args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.propagate = False
    logger.setLevel(logging.INFO if args.verbose else logging.WARNING)
    command = {"rank": cmd_rank, "compare": cmd_compare, "synth": cmd_synth}[args.command]
    try:
        command(args)
    except SingularSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
