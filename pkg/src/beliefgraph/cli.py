"""Command-line surface: validate, stats, eval, decode, seca-data, linearize.

Exit codes: 0 success, 1 validation failures in strict mode, 2 I/O or
format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from .decoder import EdgeProbTensor, decode
from .errors import BeliefGraphError
from .graph import parse_graph, serialize_graph
from .io import (
    DatasetFormatError,
    RunConfig,
    load_dataset,
    load_predictions,
    write_report,
)
from .metrics import EvalConfig, evaluate_corpus
from .ordering import ORDERINGS, reorder_graph
from .perturb import perturb
from .structure import compute_stats, validate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


@contextmanager
def _out_stream(path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def cmd_validate(args) -> int:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    vocab = config.load_vocabulary()
    rows: list[tuple[str, str, str]] = []
    if args.dataset:
        try:
            samples = load_dataset(args.dataset)
        except (DatasetFormatError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        rows = [(serialize_graph(s.gold_graphs[0]), s.belief, s.argument) for s in samples]
    else:
        if not (args.graph and args.belief and args.argument):
            print("error: provide --dataset or all of --graph/--belief/--argument",
                  file=sys.stderr)
            return EXIT_IO
        rows = [(args.graph, args.belief, args.argument)]
    any_invalid = False
    with _out_stream(args.out) as out:
        for i, (graph_text, belief, argument) in enumerate(rows):
            try:
                g = parse_graph(graph_text)
            except BeliefGraphError as exc:
                print(f"error: parse error at row {i + 1}: {exc}", file=sys.stderr)
                return EXIT_IO
            report = validate(g, belief, argument, vocab)
            if not report.overall:
                any_invalid = True
            print(json.dumps({"row": i, **report.as_dict()}), file=out)
    if any_invalid and args.strict:
        return EXIT_INVALID
    return EXIT_OK


def cmd_stats(args) -> int:
    header = f"{'Split':<12}{'#N':>7}{'#E':>7}{'#EN':>7}{'D':>7}{'%Non-linear':>13}{'%EN':>8}"
    all_rows = []
    lines = [header]
    for path in args.dataset:
        try:
            samples = load_dataset(path)
        except (DatasetFormatError, OSError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_IO
        rows = []
        for s in samples:
            for g in s.gold_graphs:
                try:
                    rows.append(compute_stats(g, s.belief, s.argument))
                except BeliefGraphError as exc:
                    print(f"error: {path}: sample {s.id}: {exc}", file=sys.stderr)
                    return EXIT_IO
        all_rows.extend(rows)
        lines.append(_stats_line(Path(path).stem, rows))
    lines.append(_stats_line("Total", all_rows))
    with _out_stream(args.out) as out:
        print("\n".join(lines), file=out)
    return EXIT_OK


def _stats_line(name: str, rows) -> str:
    n = len(rows)
    mean = lambda f: sum(f(r) for r in rows) / n
    return (f"{name:<12}"
            f"{mean(lambda r: r.node_count):>7.1f}"
            f"{mean(lambda r: r.edge_count):>7.1f}"
            f"{mean(lambda r: r.external_node_count):>7.1f}"
            f"{mean(lambda r: r.depth):>7.1f}"
            f"{100 * mean(lambda r: not r.is_linear):>13.1f}"
            f"{100 * mean(lambda r: r.external_node_count > 0):>8.1f}")


def cmd_eval(args) -> int:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    try:
        samples = load_dataset(args.dataset)
        predictions = load_predictions(args.predictions, samples)
        vocab = config.load_vocabulary()
        report = evaluate_corpus(
            samples, predictions, vocab,
            similarity=config.similarity_scorer(),
            stance=config.stance_scorer(),
            classifier=config.graph_classifier(),
            config=EvalConfig(ged_aggregation=config.ged_aggregation),
        )
    except (BeliefGraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        config.close()
    text = write_report(report, args.out)
    if not args.out:
        print(text)
    return EXIT_OK


def cmd_decode(args) -> int:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    vocab = config.load_vocabulary()
    failed = False
    with _out_stream(args.out) as out:
        for path in args.tensors:
            try:
                obj = json.loads(Path(path).read_text("utf-8"))
                tensor = EdgeProbTensor.from_dict(obj)
                decoded = decode(tensor, vocab)
            except (BeliefGraphError, json.JSONDecodeError, OSError) as exc:
                print(f"error: {path}: {exc}", file=sys.stderr)
                failed = True
                continue
            print(serialize_graph(decoded.graph), file=out)
    return EXIT_IO if failed else EXIT_OK


def cmd_seca_data(args) -> int:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    vocab = config.load_vocabulary()
    try:
        samples = load_dataset(args.dataset)
    except (DatasetFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    with _out_stream(args.out) as out:
        for s in samples:
            for g in s.gold_graphs:
                print(f"{s.belief}\t{serialize_graph(g)}\t{s.gold_stance}", file=out)
                for k in range(args.negatives):
                    try:
                        bad = perturb(g, vocab, ops=1 + k % 3,
                                      seed=args.seed * 100003 + int(s.id) * 31 + k)
                    except BeliefGraphError as exc:
                        print(f"warning: sample {s.id}: {exc}", file=sys.stderr)
                        continue
                    print(f"{s.belief}\t{serialize_graph(bad)}\tincorrect", file=out)
    return EXIT_OK


def cmd_linearize(args) -> int:
    try:
        samples = load_dataset(args.dataset)
    except (DatasetFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    failed = False
    with _out_stream(args.out) as out:
        for s in samples:
            try:
                g = reorder_graph(s.gold_graphs[0], args.ordering, args.seed)
            except BeliefGraphError as exc:
                print(f"error: sample {s.id}: {exc}", file=sys.stderr)
                failed = True
                continue
            print(serialize_graph(g), file=out)
    return EXIT_IO if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefgraph",
        description="Parse, validate, score and decode belief/argument explanation graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural checks per dataset row or single graph")
    p.add_argument("--dataset")
    p.add_argument("--graph")
    p.add_argument("--belief")
    p.add_argument("--argument")
    p.add_argument("--config")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="aggregate graph statistics per split")
    p.add_argument("--dataset", action="append", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eval", help="run the multi-level evaluation pipeline")
    p.add_argument("--dataset", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decode", help="decode edge-probability tensors into graphs")
    p.add_argument("tensors", nargs="+")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("seca-data", help="emit gold + perturbed graphs as classifier data")
    p.add_argument("--dataset", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--negatives", type=int, default=1)
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_seca_data)

    p = sub.add_parser("linearize", help="rewrite graphs in a chosen edge order")
    p.add_argument("--dataset", required=True)
    p.add_argument("--ordering", choices=ORDERINGS, default="dfs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_linearize)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
