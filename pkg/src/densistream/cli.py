"""Command-line front end: stream driver, reports, evaluation, service.

Machine-readable output goes to stdout, diagnostics to stderr; exit code
is 0 on success and nonzero with a diagnostic on any error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys

from . import aggregation, evaluation, saliency, snapshot
from .config import Config
from .engine import Engine
from .errors import EngineError
from .vectors import read_corpus


def _config_from_args(args: argparse.Namespace) -> Config:
    return Config(
        k=args.k,
        sim_threshold=args.threshold,
        rule=args.rule,
        density=args.density,
        surplombant=args.surplombant,
    )


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=3, help="nearest neighbours kept (default 3)")
    parser.add_argument(
        "--threshold", type=float, default=0.1, help="similarity threshold (default 0.1)"
    )
    parser.add_argument("--rule", choices=("A", "B"), default="B", help="inheritance rule")
    parser.add_argument(
        "--density", choices=("sum", "coefficient"), default="sum", help="density definition"
    )
    parser.add_argument(
        "--surplombant", choices=("strict", "dominates"), default="strict",
        help="overhang criterion",
    )


def cmd_ingest(args: argparse.Namespace) -> int:
    engine = snapshot.load(args.resume) if args.resume else Engine(_config_from_args(args))
    log_handle = open(args.log, "w", encoding="utf-8") if args.log else None
    try:
        for doc_id, counts in read_corpus(args.corpus):
            report = engine.ingest(doc_id, counts)
            line = report.to_json_line()
            print(line)
            if log_handle:
                log_handle.write(line + "\n")
    finally:
        if log_handle:
            log_handle.close()
    if args.snapshot:
        snapshot.save(engine, args.snapshot)
        print(f"snapshot written: {args.snapshot}", file=sys.stderr)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    engine = snapshot.load(args.snapshot)
    members = engine.strict_members()
    if args.all:
        heads = sorted(members, key=lambda h: (-len(members[h]), h))
    else:
        try:
            node = engine.node_of(args.class_id)
        except KeyError:
            print(f"unknown class id: {args.class_id}", file=sys.stderr)
            return 1
        if engine.lcc[node] != [node]:
            print(f"document {args.class_id} is not a class head", file=sys.stderr)
            return 1
        heads = [node]
    for head in heads:
        print(saliency.render_class_report(saliency.term_contributions(engine, head)))
    return 0


def cmd_sizes(args: argparse.Namespace) -> int:
    engine = snapshot.load(args.snapshot)
    print("size,count,log10_size,log10_count")
    for size, count in aggregation.size_distribution(engine.lcc).items():
        print(f"{size},{count},{math.log10(size):.6f},{math.log10(count):.6f}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    reference = aggregation.load_classification(args.reference)
    predicted = aggregation.load_classification(args.predicted)
    report = evaluation.evaluate(reference, predicted)
    for score in report.classes:
        print(
            f"{score.label}\tsize={score.size}\tmatched={score.matched_group}"
            f"\trecall={score.recall:.4f}\tprecision={score.precision:.4f}"
        )
    csv_text = evaluation.curve_csv(report)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write(csv_text)
    else:
        print(csv_text, end="")
    return 0


def permutation_test(
    records: list[tuple[str, dict[str, int]]],
    n_permutations: int,
    seed: int,
    config: Config,
) -> tuple[bool, str]:
    """Ingest the corpus in n random orders and compare final states by doc_id."""
    baseline_engine = Engine(config)
    baseline_engine.ingest_all(records)
    baseline = baseline_engine.fingerprint()
    rng = random.Random(seed)
    for trial in range(n_permutations):
        shuffled = list(records)
        rng.shuffle(shuffled)
        engine = Engine(config)
        engine.ingest_all(shuffled)
        candidate = engine.fingerprint()
        if candidate["heads"] != baseline["heads"]:
            return False, (
                f"permutation {trial}: head sets diverge "
                f"(only in baseline: {sorted(baseline['heads'] - candidate['heads'])}, "
                f"only in permutation: {sorted(candidate['heads'] - baseline['heads'])})"
            )
        for doc_id, expected in baseline["docs"].items():
            got = candidate["docs"][doc_id]
            if got != expected:
                return False, f"permutation {trial}: doc {doc_id!r} diverges: {expected} vs {got}"
    return True, f"{n_permutations} permutations identical"


def cmd_permtest(args: argparse.Namespace) -> int:
    records = list(read_corpus(args.corpus))
    ok, detail = permutation_test(records, args.n, args.seed, _config_from_args(args))
    print(f"{'PASS' if ok else 'FAIL'}: {detail}")
    return 0 if ok else 1


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import make_server  # defer http import

    engine = snapshot.load(args.snapshot)
    server = make_server(
        engine,
        host=args.host,
        port=args.port,
        valence=args.valence,
        journal_path=args.journal,
        static_dir=args.ui,
    )
    host, port = server.server_address[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densistream",
        description="Incremental density-peak clustering of sparse descriptor streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest a corpus file and write a snapshot")
    p.add_argument("corpus", help="corpus file: doc_id<TAB>term=count<TAB>...")
    p.add_argument("--snapshot", help="write the final engine snapshot here")
    p.add_argument("--resume", help="resume from a prior snapshot")
    p.add_argument("--log", help="also write ingest report lines to this file")
    _add_config_flags(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("report", help="render class reports from a snapshot")
    p.add_argument("--snapshot", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--class-id", help="head doc_id of the class to render")
    group.add_argument("--all", action="store_true", help="all classes, descending size")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sizes", help="noyau size distribution (log-log CSV)")
    p.add_argument("--snapshot", required=True)
    p.set_defaults(func=cmd_sizes)

    p = sub.add_parser("eval", help="recall/precision against a reference classification")
    p.add_argument("--reference", required=True)
    p.add_argument("--predicted", required=True)
    p.add_argument("--csv", help="write the cumulative curve CSV here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("permtest", help="verify order invariance over random permutations")
    p.add_argument("corpus")
    p.add_argument("-n", type=int, default=30, help="number of permutations (default 30)")
    p.add_argument("--seed", type=int, default=0)
    _add_config_flags(p)
    p.set_defaults(func=cmd_permtest)

    p = sub.add_parser("serve", help="serve the curation API (and UI) over HTTP")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8100)
    p.add_argument("--valence", type=int, default=2)
    p.add_argument("--journal", help="append curation actions to this JSON-lines file")
    p.add_argument("--ui", help="serve the single-page UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EngineError, OSError, ValueError, KeyError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
