"""Command-line front door.

Subcommands: ``retrieve``, ``eval``, ``char-sim``, ``align``,
``validate-resources``. Resource tables are read from ``--resources``
(default: the ``JSPG_RESOURCES_DIR`` environment variable), a directory
holding ``pinyin.tsv`` and optionally ``fourcorner.tsv``,
``structure.tsv`` and ``strokes.tsv``.

Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .align import HypothesisSet, Keyword, alignment_matrix, extended_sw
from .chardata import ResourceError, ResourceTable, load_resources
from .charsim import CharSimCache, SimilarityKind, glyph_components, sim_glyph, sim_pinyin
from .evalharness import DatasetError, load_dataset, run_eval, write_report_csv
from .fusion import (
    Dictionary,
    MissingSemanticPolicy,
    RetrievalConfig,
    load_dictionary,
    retrieve_topk,
    scored_to_record,
)
from .semantic import (
    EmbeddingError,
    EmbeddingStore,
    load_embedding_store,
    store_from_service,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

RESOURCE_FILES = {
    "pinyin": "pinyin.tsv",
    "four_corner": "fourcorner.tsv",
    "structure": "structure.tsv",
    "strokes": "strokes.tsv",
}

FEATURES = ("full", "semantic", "pg", "pinyin", "glyph")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="jspg", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_resources(p):
        p.add_argument(
            "--resources",
            default=os.environ.get("JSPG_RESOURCES_DIR"),
            help="directory with the resource TSV tables "
            "(default: $JSPG_RESOURCES_DIR)",
        )

    def add_retrieval(p):
        add_resources(p)
        p.add_argument("--dictionary", required=True, help="keyword list, one per line")
        p.add_argument("--dataset", required=True, help="utterance JSONL file")
        p.add_argument("--embeddings", help="embedding JSONL file")
        p.add_argument(
            "--embed-service",
            help="base URL of an embedding HTTP service (POST /embed); "
            "embeds keywords and query texts on the fly",
        )
        p.add_argument("--alpha", type=float, default=0.7, help="pinyin weight in the phonetic-glyph score")
        p.add_argument("--beta", type=float, default=0.4, help="semantic weight in the final score")
        p.add_argument(
            "--feature",
            choices=FEATURES,
            default="full",
            help="score selector; overrides --alpha/--beta at the endpoints",
        )
        p.add_argument(
            "--missing-semantic",
            choices=[policy.value for policy in MissingSemanticPolicy],
            default=MissingSemanticPolicy.RENORMALIZE.value,
            help="final-score policy for keywords without embeddings",
        )
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        p.add_argument("--gap-cost", type=float, default=1.0, help="alignment gap cost (expert knob)")

    p_retrieve = sub.add_parser("retrieve", help="rank the dictionary per utterance")
    add_retrieval(p_retrieve)
    p_retrieve.add_argument("--top-k", type=int, default=10)
    p_retrieve.add_argument("--out", default="-", help="output JSONL ('-' = stdout)")

    p_eval = sub.add_parser("eval", help="compute Recall@K over a labeled dataset")
    add_retrieval(p_eval)
    p_eval.add_argument(
        "--k-list", default="1,3,5,10,20,50,100", help="comma-separated K values"
    )
    p_eval.add_argument("--out-csv", help="write the recall table as CSV")
    p_eval.add_argument("--out-jsonl", help="write per-utterance retrievals as JSONL")

    p_char = sub.add_parser("char-sim", help="inspect one character pair")
    add_resources(p_char)
    p_char.add_argument("c1")
    p_char.add_argument("c2")

    p_align = sub.add_parser("align", help="print the alignment matrix for one pair")
    add_resources(p_align)
    p_align.add_argument("keyword")
    p_align.add_argument("hypothesis")
    p_align.add_argument(
        "--feature", choices=["pinyin", "glyph"], default="pinyin"
    )
    p_align.add_argument("--gap-cost", type=float, default=1.0)

    p_validate = sub.add_parser("validate-resources", help="load and check the tables")
    add_resources(p_validate)

    return parser


def _load_tables(args) -> ResourceTable:
    if not args.resources:
        raise UsageError("--resources is required (or set JSPG_RESOURCES_DIR)")
    root = Path(args.resources)
    paths = {name: root / fname for name, fname in RESOURCE_FILES.items()}
    return load_resources(
        pinyin_path=paths["pinyin"],
        four_corner_path=paths["four_corner"] if paths["four_corner"].is_file() else None,
        structure_path=paths["structure"] if paths["structure"].is_file() else None,
        strokes_path=paths["strokes"] if paths["strokes"].is_file() else None,
    )


def _apply_feature(args) -> tuple[float, float, bool]:
    """Map the feature selector onto (alpha, beta, semantic_enabled)."""
    if args.feature == "semantic":
        return args.alpha, 1.0, True
    if args.feature == "pg":
        return args.alpha, 0.0, False
    if args.feature == "pinyin":
        return 1.0, 0.0, False
    if args.feature == "glyph":
        return 0.0, 0.0, False
    return args.alpha, args.beta, True


def _build_config(args, top_k: int) -> RetrievalConfig:
    alpha, beta, semantic_enabled = _apply_feature(args)
    try:
        return RetrievalConfig(
            alpha=alpha,
            beta=beta,
            top_k=top_k,
            semantic_enabled=semantic_enabled,
            missing_semantic=MissingSemanticPolicy(args.missing_semantic),
            gap_cost=args.gap_cost,
            workers=args.workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _build_store(args, dictionary: Dictionary, dataset) -> EmbeddingStore | None:
    if args.embed_service:
        return store_from_service(
            args.embed_service,
            [kw.text for kw in dictionary.keywords],
            [record.hypotheses for record in dataset],
        )
    if args.embeddings:
        return load_embedding_store(args.embeddings)
    return None


def _open_out(path: str):
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def cmd_retrieve(args) -> int:
    table = _load_tables(args)
    cache = CharSimCache(table)
    dictionary = load_dictionary(args.dictionary)
    dataset = load_dataset(args.dataset)
    cfg = _build_config(args, args.top_k)
    store = _build_store(args, dictionary, dataset)
    out = _open_out(args.out)
    try:
        for record in dataset:
            ranked = retrieve_topk(cache, store, dictionary, record.hypotheses, cfg)
            line = json.dumps(
                scored_to_record(record.utterance_id, ranked), ensure_ascii=False
            )
            print(line, file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        k_values = [int(k) for k in args.k_list.split(",") if k.strip()]
    except ValueError:
        raise UsageError(f"--k-list must be comma-separated integers, got {args.k_list!r}")
    if not k_values or min(k_values) < 1:
        raise UsageError(f"--k-list values must be >= 1, got {args.k_list!r}")
    table = _load_tables(args)
    cache = CharSimCache(table)
    dictionary = load_dictionary(args.dictionary)
    dataset = load_dataset(args.dataset)
    cfg = _build_config(args, max(k_values))
    store = _build_store(args, dictionary, dataset)
    report = run_eval(cache, store, dictionary, dataset, cfg, k_values)

    recalls = [report.micro[k] for k in report.k_values]
    if any(a > b + 1e-12 for a, b in zip(recalls, recalls[1:])):
        print("internal error: Recall@K decreased with K", file=sys.stderr)
        return EXIT_INTERNAL

    for k in report.k_values:
        print(
            f"R@{k}: micro {report.micro[k]:.4f}  macro {report.macro[k]:.4f}  "
            f"({report.hits[k]}/{report.total_gold})"
        )
    if args.out_csv:
        write_report_csv(report, args.out_csv)
    if args.out_jsonl:
        with open(args.out_jsonl, "w", encoding="utf-8") as handle:
            for utt_id, ranked in report.retrieved.items():
                handle.write(
                    json.dumps(scored_to_record(utt_id, ranked), ensure_ascii=False)
                    + "\n"
                )
    return EXIT_OK


def cmd_char_sim(args) -> int:
    if len(args.c1) != 1 or len(args.c2) != 1:
        raise UsageError("char-sim takes exactly one character per argument")
    table = _load_tables(args)
    sp = sim_pinyin(table, args.c1, args.c2)
    sg = sim_glyph(table, args.c1, args.c2)
    components = glyph_components(table, args.c1, args.c2)
    print(f"pair: {args.c1} {args.c2}")
    print(f"sim_pinyin: {sp:.4f}")
    print(f"sim_glyph:  {sg:.4f}")
    for name, value in components.items():
        shown = f"{value:.4f}" if value is not None else "missing data"
        print(f"  {name:<12} {shown}")
    if args.c1 != args.c2:
        rec1, rec2 = table.lookup(args.c1), table.lookup(args.c2)
        if not (rec1 and rec1.pinyin) or not (rec2 and rec2.pinyin):
            print("note: pinyin data missing for at least one character")
    return EXIT_OK


def cmd_align(args) -> int:
    if not args.keyword or not args.hypothesis:
        raise UsageError("keyword and hypothesis must be non-empty")
    table = _load_tables(args)
    cache = CharSimCache(table)
    kind = SimilarityKind(args.feature)
    keyword = Keyword(args.keyword)
    result = extended_sw(
        cache, kind, keyword, args.hypothesis, gap_cost=args.gap_cost, keep_trace=True
    )
    costs = cache.cost_matrix(kind, args.hypothesis, args.keyword)
    d = alignment_matrix(costs, args.gap_cost)

    def cell(x: float) -> str:
        return "  inf" if not (x < float("inf")) else f"{x:5.2f}"

    header = ["    ∅"] + [f"{c:>5}" for c in args.keyword]
    print(f"D ({args.feature} costs)   rows: hypothesis, cols: keyword")
    print("      " + " ".join(header))
    labels = ["∅"] + list(args.hypothesis)
    for i, row in enumerate(d):
        print(f"  {labels[i]:>3} " + " ".join(cell(x) for x in row))
    if result.trace:
        moves = " -> ".join(f"{move}({i},{j})" for move, i, j in result.trace)
        print(f"path: {moves}")
    print(f"cost: {result.cost:.4f}")
    print(f"RL:   {result.rl:.4f}")
    if result.end_index:
        print(f"alignment ends at hypothesis position {result.end_index}")
    return EXIT_OK


def cmd_validate_resources(args) -> int:
    table = _load_tables(args)
    with_pinyin = sum(1 for r in table.records.values() if r.pinyin)
    with_fc = sum(1 for r in table.records.values() if r.four_corner)
    with_struct = sum(1 for r in table.records.values() if r.structure)
    with_strokes = sum(1 for r in table.records.values() if r.strokes)
    print(f"characters: {len(table)}")
    print(f"  pinyin:      {with_pinyin}")
    print(f"  four-corner: {with_fc}")
    print(f"  structure:   {with_struct}")
    print(f"  strokes:     {with_strokes}")
    for name, source in table.provenance.items():
        print(f"source {name}: {source}")
    print("OK")
    return EXIT_OK


_COMMANDS = {
    "retrieve": cmd_retrieve,
    "eval": cmd_eval,
    "char-sim": cmd_char_sim,
    "align": cmd_align,
    "validate-resources": cmd_validate_resources,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, DatasetError, EmbeddingError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
