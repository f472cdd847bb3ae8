"""Analysis bundle persistence and the tag/combination queries over it."""
from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

from . import __version__
from .corpus import Comment, Corpus, LoadReport, preprocess
from .errors import MigrationError, ParseError, ValidationError
from .grouping import Group
from .keywords import TagAssignment

log = logging.getLogger(__name__)

BUNDLE_FORMAT = "pulsetags-bundle"


@dataclass
class AnalysisBundle:
    corpus: Corpus
    groups: list[Group]
    params: dict
    created_at: str
    tool_version: str = __version__
    excluded: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] | None = None

    def __post_init__(self):
        known = self.corpus.by_id
        for g in self.groups:
            for m in g.member_ids:
                if m not in known:
                    raise ValidationError(f"group {g.id} references unknown comment {m!r}")

    def tags_of(self, group: Group) -> tuple[str, ...]:
        return group.tags.terms if group.tags is not None else ()

    def all_tags(self) -> set[str]:
        return {t for g in self.groups for t in self.tags_of(g)}


class TagReport(NamedTuple):
    rows: list[tuple[str, int]]


class CombinationRow(NamedTuple):
    rank: int
    tags: tuple[str, ...]
    count: int


# ---------------------------------------------------------------------------
# queries

def normalize_tag(query: str) -> str | None:
    """A query term normalized like comment text; ``None`` unless it is one token."""
    toks = preprocess(query)
    return toks[0] if len(toks) == 1 else None


def _members(bundle: AnalysisBundle, groups: Iterable[Group]) -> list[Comment]:
    by_id = bundle.corpus.by_id
    ids = sorted(m for g in groups for m in g.member_ids)
    return [by_id[i] for i in ids]


def comments_by_tag(bundle: AnalysisBundle, tag: str) -> list[Comment]:
    term = normalize_tag(tag)
    hits = [g for g in bundle.groups if term is not None and term in bundle.tags_of(g)]
    if not hits:
        near = suggest_tags(bundle, tag)
        log.info("tag %r not found%s", tag, f"; did you mean {', '.join(near)}?" if near else "")
    return _members(bundle, hits)


def suggest_tags(bundle: AnalysisBundle, query: str, limit: int = 5) -> list[str]:
    """Known tags sharing a prefix of at least three characters with ``query``."""
    q = normalize_tag(query) or query.strip().lower()
    if not q:
        return []
    n = min(3, len(q))
    near = [t for t in bundle.all_tags() if t[:n] == q[:n] and t != q]
    return sorted(near)[:limit]


def comments_by_combination(bundle: AnalysisBundle, tags: Iterable[str]) -> list[Comment]:
    """Comments in groups whose tag set contains every query term."""
    tags = list(tags)
    if not tags:
        raise ValidationError("a combination query needs at least one tag")
    terms = {normalize_tag(t) for t in tags}
    if None in terms:
        return []
    return _members(bundle, [g for g in bundle.groups if terms <= set(bundle.tags_of(g))])


def combinations(bundle: AnalysisBundle) -> list[CombinationRow]:
    """Every distinct tag set with its comment count, most frequent first.

    Groups with the same tag set are merged; the displayed tuple is that of
    the largest contributing group.
    """
    merged: dict[frozenset, list] = {}
    for g in sorted(bundle.groups, key=lambda g: (-len(g.member_ids), g.id)):
        tup = bundle.tags_of(g)
        if not tup:
            continue
        key = frozenset(tup)
        if key in merged:
            merged[key][1] += len(g.member_ids)
        else:
            merged[key] = [tup, len(g.member_ids)]
    rows = sorted(merged.values(), key=lambda r: (-r[1], r[0]))
    return [CombinationRow(i, tup, n) for i, (tup, n) in enumerate(rows, 1)]


def combination_report(bundle: AnalysisBundle, k_top: int = 3, k_bottom: int = 3) -> list[CombinationRow]:
    if k_top < 1 or k_bottom < 1:
        raise ValidationError("k_top and k_bottom must be positive")
    rows = combinations(bundle)
    top = rows[:k_top]
    bottom = rows[max(len(top), len(rows) - k_bottom):]
    return top + bottom


def tag_frequency(bundle: AnalysisBundle) -> TagReport:
    counts: dict[str, int] = {}
    for g in bundle.groups:
        for t in set(bundle.tags_of(g)):
            counts[t] = counts.get(t, 0) + len(g.member_ids)
    return TagReport(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))


# ---------------------------------------------------------------------------
# text rendering

def format_table(rows: list[tuple], headers: tuple[str, ...]) -> str:
    cells = [tuple(str(c) for c in headers)] + [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def bar_chart(rows: list[tuple[str, int]], width: int = 80) -> str:
    """Horizontal bars, longest scaled to fill ``width`` columns."""
    if not rows:
        return ""
    label_w = max(len(label) for label, _ in rows)
    num_w = max(len(str(n)) for _, n in rows)
    room = max(10, width - label_w - num_w - 3)
    top = max(n for _, n in rows) or 1
    return "\n".join(
        f"{label.ljust(label_w)} {'#' * max(1, round(n / top * room)) if n else ''} {n}".rstrip()
        for label, n in rows)


# ---------------------------------------------------------------------------
# persistence

def _version_tuple(v: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in v.split("."))
    except (AttributeError, ValueError):
        raise MigrationError(f"unrecognised bundle tool_version {v!r}") from None


def bundle_to_dict(bundle: AnalysisBundle) -> dict:
    d = {
        "format": BUNDLE_FORMAT,
        "tool_version": bundle.tool_version,
        "created_at": bundle.created_at,
        "params": bundle.params,
        "corpus": {
            "source": bundle.corpus.source,
            "comments": [{"id": c.id, "text": c.raw_text, "tokens": list(c.tokens)}
                         for c in bundle.corpus],
        },
        "groups": [
            {"id": g.id, "members": list(g.member_ids),
             "tags": [{"term": t, "score": s} for t, s in (g.tags.tags if g.tags else ())]}
            for g in bundle.groups
        ],
        "excluded": [{"id": i, "reason": r} for i, r in bundle.excluded],
        "warnings": list(bundle.warnings),
    }
    if bundle.timings is not None:
        d["timings"] = bundle.timings
    return d


def bundle_from_dict(d: dict) -> AnalysisBundle:
    if not isinstance(d, dict) or d.get("format") != BUNDLE_FORMAT:
        raise ParseError("not a pulsetags bundle")
    found = d.get("tool_version")
    ours = _version_tuple(__version__)
    theirs = _version_tuple(found)
    if theirs > ours or theirs[0] != ours[0]:
        raise MigrationError(f"bundle written by tool_version {found}, this is {__version__}")
    try:
        comments = [Comment(c["id"], c["text"], tuple(c["tokens"])) for c in d["corpus"]["comments"]]
        corpus = Corpus(comments, d["corpus"]["source"],
                        LoadReport(len(comments), tuple(c.id for c in comments if not c.tokens)))
        groups = [
            Group(g["id"], tuple(g["members"]),
                  TagAssignment(g["id"], tuple((t["term"], t["score"]) for t in g["tags"])))
            for g in d["groups"]
        ]
        return AnalysisBundle(
            corpus=corpus,
            groups=groups,
            params=d["params"],
            created_at=d["created_at"],
            tool_version=found,
            excluded=[(e["id"], e["reason"]) for e in d["excluded"]],
            warnings=list(d.get("warnings", [])),
            timings=d.get("timings"),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed bundle: missing or invalid field {exc}") from None


def dumps_bundle(bundle: AnalysisBundle) -> str:
    return json.dumps(bundle_to_dict(bundle), indent=2, ensure_ascii=False) + "\n"


def bundle_digest(bundle: AnalysisBundle) -> str:
    return hashlib.sha256(dumps_bundle(bundle).encode("utf-8")).hexdigest()


def save_bundle(bundle: AnalysisBundle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_bundle(bundle))


def load_bundle(path) -> AnalysisBundle:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"corrupt bundle JSON ({exc.msg})", line=exc.lineno, path=path) from None
    return bundle_from_dict(data)
