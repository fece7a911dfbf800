"""Command-line surface: build frequency tables, mask corpora, emit reports.

Subcommands:
    freq       count words in a corpus and write a frequency-table file
    mask       apply one masking strategy to a corpus
    demo       print every strategy's output for a single caption, plus
               per-word masking probabilities
    analyze    dist | pos | budget | stats | slots reports (table to stdout,
               CSV to --output)

Defaults for k, threshold, seed and threads can be overridden with the
TEXTMASK_K, TEXTMASK_T, TEXTMASK_SEED and TEXTMASK_THREADS environment
variables.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from typing import Iterable, Iterator, Mapping, Sequence

from . import analysis
from .corpus_io import FORMATS, CaptionRecord, open_text_write, read_corpus, write_masked
from .freq import (
    DEFAULT_THRESHOLD,
    FrequencyTable,
    build_frequency_table,
    load_frequency_table,
    mask_probability,
    save_frequency_table,
)
from .maskers import (
    FREQUENCY_STRATEGIES,
    STRATEGIES,
    MaskedOutput,
    MaskingConfig,
    apply_mask,
    record_seed,
)
from .postag import DEFAULT_LEXICON, load_lexicon_file, load_pretagged, tag
from .tokenizer import tokenize

_CHUNK = 1024


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


def _env_float(name: str, default: float) -> float:
    return float(os.environ.get(name, default))


# --- corpus masking pipeline --------------------------------------------------


def prepare_record(
    record: CaptionRecord,
    pretagged: bool = False,
    lexicon: Mapping[str, str] | None = None,
    want_tags: bool = False,
) -> tuple[list[str], list[str] | None]:
    """Tokenize (or parse a pre-tagged line) and tag one record."""
    if pretagged:
        return load_pretagged(record.text)
    tokens = tokenize(record.text)
    tags = tag(tokens, lexicon) if want_tags else None
    return tokens, tags


def mask_records(
    records: Iterable[CaptionRecord],
    config: MaskingConfig,
    pretagged: bool = False,
    lexicon: Mapping[str, str] | None = None,
    threads: int = 1,
) -> Iterator[tuple[CaptionRecord, MaskedOutput]]:
    """Mask a record stream, yielding results in input order.

    Each record's seed depends only on (config.seed, config.epoch,
    record.index), so any thread count produces identical output.
    """
    want_tags = config.strategy == "syntax"

    def work(record: CaptionRecord) -> tuple[CaptionRecord, MaskedOutput]:
        tokens, tags = prepare_record(record, pretagged, lexicon, want_tags)
        seed = record_seed(config.seed, record.index, config.epoch)
        return record, apply_mask(tokens, config, tags=tags, seed=seed)

    if threads <= 1:
        for record in records:
            yield work(record)
        return
    it = iter(records)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            chunk = list(islice(it, _CHUNK))
            if not chunk:
                break
            yield from pool.map(work, chunk)


# --- shared argument plumbing -------------------------------------------------


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input corpus path (.gz ok)")
    p.add_argument("--format", choices=FORMATS, default="plain", help="corpus format")


def _add_masking_args(p: argparse.ArgumentParser, freq_table_required: bool = False) -> None:
    p.add_argument("--k", type=int, default=_env_int("TEXTMASK_K", 8),
                   help="number of tokens to keep per caption")
    p.add_argument("--t", type=float, default=_env_float("TEXTMASK_T", DEFAULT_THRESHOLD),
                   help="relative-frequency threshold for frequency/swclip")
    p.add_argument("--seed", type=int, default=_env_int("TEXTMASK_SEED", 0), help="run seed")
    p.add_argument("--epoch", type=int, default=0,
                   help="epoch number mixed into per-record seeds")
    p.add_argument("--freq-table", metavar="PATH", required=freq_table_required,
                   help="frequency-table file for frequency/swclip")
    p.add_argument("--lexicon", metavar="PATH",
                   help="word\\tTAG lexicon for the built-in tagger")
    p.add_argument("--pretagged", action="store_true",
                   help="captions are 'word/TAG word/TAG ...' lines")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="textmask",
                                     description="caption corpus masking toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_freq = sub.add_parser("freq", help="build a word-frequency table")
    _add_input_args(p_freq)
    p_freq.add_argument("--output", required=True, help="frequency-table file to write")

    p_mask = sub.add_parser("mask", help="mask a corpus with one strategy")
    _add_input_args(p_mask)
    p_mask.add_argument("--strategy", choices=STRATEGIES, required=True,
                        help="masking strategy to apply")
    _add_masking_args(p_mask)
    p_mask.add_argument("--output", required=True, help="masked corpus file to write")
    p_mask.add_argument("--output-format", choices=FORMATS, default=None,
                        help="output format (default: same as --format)")
    p_mask.add_argument("--threads", type=int, default=_env_int("TEXTMASK_THREADS", 1),
                        help="worker threads (output is identical for any value)")

    p_demo = sub.add_parser("demo", help="show every strategy on one caption")
    p_demo.add_argument("--caption", required=True, help="caption text")
    _add_masking_args(p_demo, freq_table_required=True)

    p_an = sub.add_parser("analyze", help="emit a diagnostic report")
    an_sub = p_an.add_subparsers(dest="report", required=True)

    p_dist = an_sub.add_parser("dist", help="top-N word distribution per strategy")
    _add_input_args(p_dist)
    _add_masking_args(p_dist)
    p_dist.add_argument("--strategies", default=",".join(STRATEGIES),
                        help="comma-separated strategies to compare")
    p_dist.add_argument("--top-n", type=int, default=50)
    p_dist.add_argument("--output", help="CSV file to write")

    p_pos = an_sub.add_parser("pos", help="POS-category shares per strategy")
    _add_input_args(p_pos)
    _add_masking_args(p_pos)
    p_pos.add_argument("--strategies", default=",".join(STRATEGIES))
    p_pos.add_argument("--output", help="CSV file to write")

    p_budget = an_sub.add_parser("budget", help="image+text token budget")
    p_budget.add_argument("--image-mask-ratio", type=float, default=None,
                          help="single-row mode: image masking ratio in [0, 1) "
                               "(default 0.75; omit both flags for the standard sweep)")
    p_budget.add_argument("--text-keep", type=int, default=None,
                          help="single-row mode: kept text tokens (default 8)")
    p_budget.add_argument("--image-patches", type=int, default=analysis.BASELINE_IMAGE_PATCHES)
    p_budget.add_argument("--text-context", type=int, default=analysis.BASELINE_TEXT_CONTEXT)
    p_budget.add_argument("--output", help="CSV file to write")

    p_stats = an_sub.add_parser("stats", help="caption-length statistics")
    _add_input_args(p_stats)
    p_stats.add_argument("--pretagged", action="store_true",
                         help="captions are 'word/TAG word/TAG ...' lines")
    p_stats.add_argument("--output", help="CSV file to write")

    p_slots = an_sub.add_parser("slots", help="slot utilization per strategy")
    _add_input_args(p_slots)
    _add_masking_args(p_slots)
    p_slots.add_argument("--strategies", default=",".join(STRATEGIES))
    p_slots.add_argument("--output", help="CSV file to write")

    return parser


def _load_lexicon_arg(args: argparse.Namespace) -> Mapping[str, str]:
    if getattr(args, "lexicon", None):
        return load_lexicon_file(args.lexicon)
    return DEFAULT_LEXICON


def _parse_strategies(parser: argparse.ArgumentParser, value: str) -> list[str]:
    strategies = [s.strip() for s in value.split(",") if s.strip()]
    for s in strategies:
        if s not in STRATEGIES:
            parser.error(f"unknown strategy {s!r}; expected one of {', '.join(STRATEGIES)}")
    if not strategies:
        parser.error("no strategies given")
    return strategies


def _freq_table_for(
    parser: argparse.ArgumentParser,
    args: argparse.Namespace,
    strategies: Sequence[str],
    corpus: Sequence[Sequence[str]],
) -> FrequencyTable | None:
    """Load --freq-table, or build one from the corpus when a frequency
    strategy needs it and no file was given."""
    if not FREQUENCY_STRATEGIES.intersection(strategies):
        return None
    if args.freq_table:
        return load_frequency_table(args.freq_table)
    return build_frequency_table(corpus)


# --- subcommands ---------------------------------------------------------------


def cmd_freq(args: argparse.Namespace) -> int:
    corpus = (tokenize(rec.text) for rec in read_corpus(args.input, args.format))
    table = build_frequency_table(corpus)
    save_frequency_table(table, args.output)
    print(f"wrote {len(table)} words ({table.total} tokens) to {args.output}")
    return 0


def cmd_mask(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.strategy in FREQUENCY_STRATEGIES and not args.freq_table:
        parser.error(f"--freq-table is required for strategy {args.strategy!r}")
    table = load_frequency_table(args.freq_table) if args.freq_table else None
    config = MaskingConfig(args.strategy, k=args.k, t=args.t, seed=args.seed,
                           epoch=args.epoch, freq_table=table)
    lexicon = _load_lexicon_arg(args)
    records = read_corpus(args.input, args.format)
    pairs = mask_records(records, config, pretagged=args.pretagged,
                         lexicon=lexicon, threads=args.threads)
    count = write_masked(pairs, args.output, args.output_format or args.format)
    print(f"masked {count} captions -> {args.output}")
    return 0


def cmd_demo(args: argparse.Namespace) -> int:
    table = load_frequency_table(args.freq_table)
    lexicon = _load_lexicon_arg(args)
    if args.pretagged:
        tokens, tags = load_pretagged(args.caption)
    else:
        tokens = tokenize(args.caption)
        tags = tag(tokens, lexicon)

    print(f"{'original':<10} : {args.caption}")
    for strategy in STRATEGIES:
        config = MaskingConfig(strategy, k=args.k, t=args.t, seed=args.seed,
                               epoch=args.epoch, freq_table=table)
        seed = record_seed(args.seed, 0, args.epoch)
        output = apply_mask(tokens, config, tags=tags, seed=seed)
        print(f"{strategy:<10} : {output.text()}")

    print()
    print(f"{'word':<16} P(mask)")
    seen: set[str] = set()
    for tok in tokens:
        if tok in seen:
            continue
        seen.add(tok)
        p = mask_probability(tok, table, args.t)
        marker = "" if tok in table else "  [not in table]"
        print(f"{tok:<16} {p:.6f}{marker}")
    return 0


def _emit_csv(args: argparse.Namespace, write) -> None:
    if getattr(args, "output", None):
        with open_text_write(args.output) as fh:
            write(fh)
        print(f"wrote {args.output}")


def _analyze_corpus(args: argparse.Namespace, parser: argparse.ArgumentParser):
    """Materialize tokens/tags and mask with every requested strategy."""
    strategies = _parse_strategies(parser, args.strategies)
    lexicon = _load_lexicon_arg(args)
    want_tags = "syntax" in strategies or args.report == "pos"
    token_lists: list[list[str]] = []
    tag_lists: list[list[str]] = []
    for record in read_corpus(args.input, args.format):
        tokens, tags = prepare_record(record, args.pretagged, lexicon, want_tags)
        token_lists.append(tokens)
        if tags is not None:
            tag_lists.append(tags)
    table = _freq_table_for(parser, args, strategies, token_lists)
    masked: dict[str, list[MaskedOutput]] = {}
    for strategy in strategies:
        config = MaskingConfig(strategy, k=args.k, t=args.t, seed=args.seed,
                               epoch=args.epoch,
                               freq_table=table if strategy in FREQUENCY_STRATEGIES else None)
        masked[strategy] = [
            apply_mask(tokens, config,
                       tags=tag_lists[i] if tag_lists else None,
                       seed=record_seed(args.seed, i, args.epoch))
            for i, tokens in enumerate(token_lists)
        ]
    return strategies, token_lists, tag_lists, masked


def cmd_analyze(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.report == "budget":
        if args.image_mask_ratio is not None or args.text_keep is not None:
            ratio = 0.75 if args.image_mask_ratio is None else args.image_mask_ratio
            keep = 8 if args.text_keep is None else args.text_keep
            budgets = [analysis.token_budget(ratio, keep,
                                             args.image_patches, args.text_context)]
        else:
            budgets = analysis.standard_budget_table(args.image_patches, args.text_context)
        print(f"{'image':>6} {'text':>5} {'total':>6} {'pct':>7}")
        for b in budgets:
            print(f"{b.image_tokens:>6} {b.text_tokens:>5} {b.total:>6} "
                  f"{analysis.round_half_up(b.percentage):>6.2f}%")
        _emit_csv(args, lambda fh: analysis.write_budget_csv(budgets, fh))
        return 0

    if args.report == "stats":
        pretagged = getattr(args, "pretagged", False)
        corpus = (
            prepare_record(rec, pretagged)[0]
            for rec in read_corpus(args.input, args.format)
        )
        stats = analysis.corpus_stats(corpus)
        print(f"samples      {stats.sample_count}")
        print(f"total words  {stats.total_words}")
        print(f"mean length  {stats.mean_length:.4f}")
        print(f"std length   {stats.std_length:.4f}")
        _emit_csv(args, lambda fh: analysis.write_stats_csv(stats, fh))
        return 0

    strategies, token_lists, tag_lists, masked = _analyze_corpus(args, parser)

    if args.report == "dist":
        report = analysis.distribution_report(token_lists, masked, args.top_n)
        width = max((len(r.word) for r in report.rows), default=4)
        header = f"{'rank':>4} {'word':<{width}} {'before':>8} " + " ".join(
            f"{s:>10}" for s in report.strategies)
        print(header)
        for row in report.rows:
            cells = " ".join(f"{row.after[s]:>10}" for s in report.strategies)
            print(f"{row.rank:>4} {row.word:<{width}} {row.before:>8} {cells}")
        _emit_csv(args, lambda fh: analysis.write_distribution_csv(report, fh))
        return 0

    if args.report == "pos":
        report = analysis.pos_share_report(tag_lists, masked)
        print(f"{'strategy':<12} " + " ".join(f"{c:>8}" for c in analysis.CATEGORIES)
              + f" {'total':>10}")
        for row in report.rows:
            shares = " ".join(
                f"{analysis.round_half_up(row.percentage(c)):>7.2f}%" for c in analysis.CATEGORIES)
            print(f"{row.label:<12} {shares} {row.total:>10}")
        _emit_csv(args, lambda fh: analysis.write_pos_csv(report, fh))
        return 0

    assert args.report == "slots"
    utilization = {s: analysis.slot_utilization(masked[s], args.k) for s in strategies}
    for strategy, value in utilization.items():
        print(f"{strategy:<12} {value:.6f}")
    _emit_csv(args, lambda fh: analysis.write_slots_csv(utilization, fh))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "freq":
            return cmd_freq(args)
        if args.command == "mask":
            return cmd_mask(args, parser)
        if args.command == "demo":
            return cmd_demo(args)
        assert args.command == "analyze"
        return cmd_analyze(args, parser)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
