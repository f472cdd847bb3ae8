"""Command-line interface.

Exit status: 0 on success (an empty query result is a success), 1 on I/O
failure, 2 on invalid arguments or unparseable input.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import shutil
import sys
from typing import List

from . import __version__
from .corpus import ingest, preprocess
from .embedding import TrainingConfig, load_word2vec_text, save_word2vec_text, train
from .errors import MigrationError, ParseError, ValidationError
from .insights import (bar_chart, combination_report, comments_by_combination, comments_by_tag,
                       format_table, load_bundle, save_bundle, suggest_tags, tag_frequency)
from .pipeline import PipelineParams, analyze

log = logging.getLogger("pulsetags")

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


def _unit_interval(name, upper_open=False):
    def check(text):
        x = _number(text, float, f"a number for {name}")
        if not (0.0 <= x < 1.0 if upper_open else 0.0 <= x <= 1.0):
            raise argparse.ArgumentTypeError(f"{name} must lie in [0, 1{')' if upper_open else ']'}, got {x}")
        return x
    return check


def _number(text, cast, kind):
    try:
        return cast(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected {kind}, got {text!r}") from None


def _positive_int(text):
    n = _number(text, int, "a positive integer")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _non_negative_int(text):
    n = _number(text, int, "a non-negative integer")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _positive_float(text):
    x = _number(text, float, "a positive number")
    if not x > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return x


def _non_negative_float(text):
    x = _number(text, float, "a non-negative number")
    if not x >= 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {x}")
    return x


def build_parser() -> argparse.ArgumentParser:
    d = TrainingConfig()
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text).")

    p = argparse.ArgumentParser(prog="pulsetags",
                                description="Group survey comments by similarity and tag them with keywords.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr.")
    sub = p.add_subparsers(dest="command", required=True)

    embed = sub.add_parser("embed", help="Train or check word vectors.")
    esub = embed.add_subparsers(dest="action", required=True)
    tr = esub.add_parser("train", parents=[fmt], help="Train word2vec vectors on a text file (one sentence per line).")
    tr.add_argument("--input", required=True, help="Plain-text training file.")
    tr.add_argument("--out", required=True, help="Output word2vec text file.")
    tr.add_argument("--mode", choices=["skipgram", "cbow"], default=d.mode)
    tr.add_argument("--dim", type=_positive_int, default=d.dim)
    tr.add_argument("--window", type=_positive_int, default=d.window)
    tr.add_argument("--negative", type=_non_negative_int, default=d.negative)
    tr.add_argument("--epochs", type=_positive_int, default=d.epochs)
    tr.add_argument("--lr", type=_positive_float, default=d.initial_lr, help="Initial learning rate.")
    tr.add_argument("--min-count", type=_positive_int, default=d.min_count)
    tr.add_argument("--sample", type=_non_negative_float, default=d.subsample_t,
                    help="Frequent-word subsampling threshold (0 disables).")
    tr.add_argument("--seed", type=int, default=d.seed)
    tr.add_argument("--deterministic", action="store_true",
                    help="Single-threaded, bit-reproducible training.")
    tr.add_argument("--workers", type=_positive_int, default=None, help="Threads for parallel mode.")
    ck = esub.add_parser("check", parents=[fmt], help="Validate a word2vec text file.")
    ck.add_argument("--vectors", required=True)

    an = sub.add_parser("analyze", parents=[fmt], help="Group and tag a comment file.")
    an.add_argument("--input", required=True, help="Comments as .csv (id,text) or .jsonl.")
    an.add_argument("--input-format", choices=["csv", "jsonl"], default=None,
                    help="Override format detection by extension.")
    an.add_argument("--vectors", required=True, help="word2vec text file.")
    an.add_argument("--out", required=True, help="Bundle JSON to write.")
    an.add_argument("--threshold", type=_unit_interval("threshold"), default=0.85)
    an.add_argument("--damping", type=_unit_interval("damping", upper_open=True), default=0.85)
    an.add_argument("--window", type=_positive_int, default=2)
    an.add_argument("--tag-cap", type=_positive_int, default=5)
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--deterministic", action="store_true",
                    help="Pin created_at and omit timings so identical inputs give identical bytes.")

    q = sub.add_parser("query", help="Retrieve comments by tag or tag combination.")
    qsub = q.add_subparsers(dest="action", required=True)
    qt = qsub.add_parser("tag", parents=[fmt])
    qt.add_argument("tag")
    qt.add_argument("--bundle", required=True)
    qc = qsub.add_parser("combo", parents=[fmt])
    qc.add_argument("tags", help="Comma-separated tags, e.g. work-life,balance")
    qc.add_argument("--bundle", required=True)

    r = sub.add_parser("report", help="Tag frequency and tag-combination reports.")
    rsub = r.add_subparsers(dest="action", required=True)
    rt = rsub.add_parser("tags", parents=[fmt])
    rt.add_argument("--bundle", required=True)
    rc = rsub.add_parser("combos", parents=[fmt])
    rc.add_argument("--top", type=_positive_int, default=3)
    rc.add_argument("--bottom", type=_positive_int, default=3)
    rc.add_argument("--bundle", required=True)
    return p


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, ensure_ascii=False, indent=2))
    else:
        print(text)


def _width() -> int:
    return shutil.get_terminal_size((80, 24)).columns


def cmd_embed(args) -> int:
    if args.action == "check":
        model = load_word2vec_text(args.vectors)
        _emit({"vectors": args.vectors, "vocab_size": len(model), "dim": model.dim}, args.format,
              f"{args.vectors}: ok, vocab {len(model)}, dim {model.dim}")
        return EXIT_OK

    config = TrainingConfig(mode=args.mode, dim=args.dim, window=args.window, negative=args.negative,
                            epochs=args.epochs, initial_lr=args.lr, min_count=args.min_count,
                            subsample_t=args.sample, seed=args.seed)
    with open(args.input, encoding="utf-8") as fh:
        sentences = [preprocess(line) for line in fh]
    model = train(sentences, config, deterministic=args.deterministic, workers=args.workers)
    save_word2vec_text(model, args.out)
    losses = [None if math.isnan(x) else round(x, 6) for x in model.loss_history]
    _emit({"out": args.out, "vocab_size": len(model), "dim": model.dim, "loss_history": losses},
          args.format, f"wrote {args.out}: vocab {len(model)}, dim {model.dim}, epoch loss {losses}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    corpus = ingest(args.input, args.input_format)
    model = load_word2vec_text(args.vectors)
    params = PipelineParams(threshold=args.threshold, damping=args.damping, window=args.window,
                            tag_cap=args.tag_cap, embedding=args.vectors, seed=args.seed,
                            deterministic=args.deterministic)
    bundle = analyze(corpus, model, params)
    save_bundle(bundle, args.out)

    top_groups = [g for g in bundle.groups if len(g.member_ids) > 1][:5]
    top_tags = tag_frequency(bundle).rows[:5]
    summary = {
        "comments": len(corpus),
        "excluded": len(bundle.excluded),
        "groups": len(bundle.groups),
        "top_groups": [{"id": g.id, "size": len(g.member_ids), "tags": list(bundle.tags_of(g))}
                       for g in top_groups],
        "top_tags": [{"tag": t, "count": n} for t, n in top_tags],
        "bundle": args.out,
    }
    lines = [f"comments: {len(corpus)}   excluded: {len(bundle.excluded)}   groups: {len(bundle.groups)}"]
    if top_groups:
        lines.append("largest groups:")
        lines += [f"  #{g.id}  {len(g.member_ids)} comments  [{', '.join(bundle.tags_of(g))}]"
                  for g in top_groups]
    lines.append("top tags: " + (", ".join(f"{t} ({n})" for t, n in top_tags) or "none"))
    lines += [f"warning: {w}" for w in bundle.warnings]
    lines.append(f"bundle written to {args.out}")
    _emit(summary, args.format, "\n".join(lines))
    return EXIT_OK


def cmd_query(args) -> int:
    bundle = load_bundle(args.bundle)
    if args.action == "tag":
        query = [args.tag]
        hits = comments_by_tag(bundle, args.tag)
    else:
        query = [t for t in args.tags.split(",") if t.strip()]
        if not query:
            raise ValidationError("combo query needs at least one tag")
        hits = comments_by_combination(bundle, query)
    near = [] if hits else sorted({s for t in query for s in suggest_tags(bundle, t)})
    payload = {"query": query, "count": len(hits),
               "comments": [{"id": c.id, "text": c.raw_text} for c in hits], "suggestions": near}
    if hits:
        text = f"{len(hits)} comments\n" + "\n".join(f"{c.id}\t{c.raw_text}" for c in hits)
    else:
        label = ",".join(query)
        text = f"0 comments; no {'tag' if args.action == 'tag' else 'tag combination'} '{label}'"
        if near:
            text += f"\ndid you mean: {', '.join(near)}"
    _emit(payload, args.format, text)
    return EXIT_OK


def cmd_report(args) -> int:
    bundle = load_bundle(args.bundle)
    if args.action == "tags":
        rows = tag_frequency(bundle).rows
        _emit([{"tag": t, "count": n} for t, n in rows], args.format,
              bar_chart(rows, _width()) if rows else "no tags")
        return EXIT_OK

    rows = combination_report(bundle, args.top, args.bottom)
    table = format_table([(r.rank, ", ".join(r.tags), r.count) for r in rows], ("rank", "tags", "comments"))
    bars = bar_chart([(f"{r.rank}. " + ", ".join(r.tags), r.count) for r in rows], _width())
    _emit([{"rank": r.rank, "tags": list(r.tags), "count": r.count} for r in rows], args.format,
          f"{table}\n\n{bars}" if rows else "no tag combinations")
    return EXIT_OK


COMMANDS = {"embed": cmd_embed, "analyze": cmd_analyze, "query": cmd_query, "report": cmd_report}


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, ParseError, MigrationError) as exc:
        print(f"pulsetags: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"pulsetags: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
