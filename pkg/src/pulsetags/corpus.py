"""Comment ingestion and text normalization.

Normalization lowercases, deletes every numeric character, turns punctuation
and symbols into separators (keeping ``-`` and ``'`` only between two
letters), splits on whitespace and drops stopwords.
"""
from __future__ import annotations

import csv
import functools
import json
import os
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import ParseError, ValidationError

STOPWORDS_ENV = "PULSE_STOPWORDS"
STOPWORDS_VERSION = "en-127-v1"

_JOINERS = frozenset("-'")
# typographic apostrophes are folded onto the ASCII one before anything else
_APOSTROPHES = str.maketrans({"’": "'", "ʼ": "'"})


@dataclass(frozen=True)
class Comment:
    id: str
    raw_text: str
    tokens: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValidationError("comment id must be a non-empty string")
        object.__setattr__(self, "tokens", tuple(self.tokens))


@dataclass(frozen=True)
class LoadReport:
    n_records: int
    empty_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class Corpus:
    comments: tuple[Comment, ...]
    source: str = ""
    report: LoadReport | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "comments", tuple(self.comments))
        seen = set()
        for c in self.comments:
            if c.id in seen:
                raise ValidationError(f"duplicate comment id {c.id!r}")
            seen.add(c.id)

    def __len__(self):
        return len(self.comments)

    def __iter__(self):
        return iter(self.comments)

    @functools.cached_property
    def by_id(self) -> dict[str, Comment]:
        return {c.id: c for c in self.comments}

    @classmethod
    def from_texts(cls, texts: Iterable[str], source: str = "<memory>",
                   ids: Iterable[str] | None = None) -> "Corpus":
        texts = list(texts)
        if ids is None:
            width = len(str(max(len(texts), 1)))
            ids = [f"c{i:0{width}d}" for i in range(1, len(texts) + 1)]
        comments = [Comment(i, t, preprocess(t)) for i, t in zip(ids, texts)]
        return cls(comments, source, _report(comments))


@functools.lru_cache(maxsize=8)
def _read_stopwords(path: str | None) -> frozenset[str]:
    if path is None:
        text = resources.files("pulsetags.data").joinpath("stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def stopwords() -> frozenset[str]:
    """Active stopword set: ``$PULSE_STOPWORDS`` if set, else the bundled list."""
    return _read_stopwords(os.environ.get(STOPWORDS_ENV) or None)


def _is_separator(ch: str) -> bool:
    cat = unicodedata.category(ch)
    # P*: punctuation, S*: symbols, C*: control/format/unassigned
    return cat[0] in "PSC"


def preprocess(raw_text: str) -> list[str]:
    text = raw_text.translate(_APOSTROPHES).lower()
    text = "".join(ch for ch in text if unicodedata.category(ch)[0] != "N")

    chars = list(text)
    n = len(chars)
    for i, ch in enumerate(text):
        if ch in _JOINERS:
            if 0 < i < n - 1 and text[i - 1].isalpha() and text[i + 1].isalpha():
                continue
            chars[i] = " "
        elif _is_separator(ch):
            chars[i] = " "

    stop = stopwords()
    return [tok for tok in "".join(chars).split() if tok not in stop]


def _report(comments) -> LoadReport:
    return LoadReport(len(comments), tuple(c.id for c in comments if not c.tokens))


def _read_csv(path: Path):
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("missing header (expected id,text)", line=1, path=path) from None
        except csv.Error as exc:
            raise ParseError(str(exc), line=reader.line_num, path=path) from None
        header = [h.strip() for h in header]
        if "id" not in header or "text" not in header:
            raise ParseError(f"header must contain id,text; got {','.join(header)}", line=1, path=path)
        i_id, i_text = header.index("id"), header.index("text")
        while True:
            try:
                row = next(reader)
            except StopIteration:
                return
            except csv.Error as exc:
                raise ParseError(str(exc), line=reader.line_num, path=path) from None
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(f"expected {len(header)} fields, found {len(row)}",
                                 line=reader.line_num, path=path)
            yield reader.line_num, row[i_id], row[i_text]


def _read_jsonl(path: Path):
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON ({exc.msg})", line=lineno, path=path) from None
            if not isinstance(obj, dict):
                raise ParseError("expected a JSON object", line=lineno, path=path)
            cid, text = obj.get("id"), obj.get("text")
            if not isinstance(cid, str) or not isinstance(text, str):
                raise ParseError("fields 'id' and 'text' must be strings", line=lineno, path=path)
            yield lineno, cid, text


def ingest(path, format: str | None = None) -> Corpus:
    """Read comments from a CSV (``id,text`` header) or JSONL file.

    ``format`` defaults to the file extension. Comments whose text
    normalizes to nothing are kept and listed in ``corpus.report.empty_ids``.
    """
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".")).lower()
    if fmt not in ("csv", "jsonl"):
        raise ValidationError(f"unsupported input format {fmt!r} (use csv or jsonl)")
    rows = _read_csv(path) if fmt == "csv" else _read_jsonl(path)

    comments, lines = [], {}
    for lineno, cid, text in rows:
        if not cid:
            raise ParseError("empty comment id", line=lineno, path=path)
        if cid in lines:
            raise ValidationError(f"duplicate comment id {cid!r} (lines {lines[cid]} and {lineno})")
        lines[cid] = lineno
        comments.append(Comment(cid, text, preprocess(text)))
    return Corpus(comments, str(path), _report(comments))
