"""TextRank keyword tags for comment groups.

Scores follow the unweighted TextRank recurrence::

    S(i) = (1 - d) + d * sum_{j in In(i)} S(j) / |Out(j)|

iterated synchronously from ``S = 1`` until the largest per-term change drops
below ``epsilon``. Co-occurrence edges are undirected, stored as two arcs.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

log = logging.getLogger(__name__)

# scores are compared at this precision so ties fall back to the term
TIE_DECIMALS = 9


@dataclass(frozen=True)
class TermGraph:
    terms: tuple[str, ...]
    src: np.ndarray
    dst: np.ndarray

    @property
    def n_edges(self) -> int:
        return len(self.src) // 2

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.src, minlength=len(self.terms))

    def neighbors(self, term: str) -> set[str]:
        i = self.terms.index(term)
        return {self.terms[j] for j in self.dst[self.src == i]}

    def edge_set(self) -> set[frozenset[str]]:
        return {frozenset((self.terms[a], self.terms[b])) for a, b in zip(self.src, self.dst)}


@dataclass(frozen=True)
class TextRankResult:
    scores: dict[str, float]
    iterations: int
    converged: bool


@dataclass(frozen=True)
class KeywordParams:
    window: int = 2
    damping: float = 0.85
    epsilon: float = 1e-4
    max_iter: int = 100
    tag_cap: int = 5

    def __post_init__(self):
        if self.window < 1:
            raise ValidationError(f"window must be >= 1, got {self.window}")
        if not 0.0 <= self.damping < 1.0:
            raise ValidationError(f"damping must lie in [0, 1), got {self.damping}")
        if not self.epsilon > 0:
            raise ValidationError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_iter < 1 or self.tag_cap < 1:
            raise ValidationError("max_iter and tag_cap must be >= 1")


@dataclass(frozen=True)
class TagAssignment:
    group_id: int
    tags: tuple[tuple[str, float], ...] = ()

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.tags)


def build_term_graph(group_tokens: Iterable[Sequence[str]], window: int = 2) -> TermGraph:
    if window < 1:
        raise ValidationError(f"window must be >= 1, got {window}")
    group_tokens = [list(toks) for toks in group_tokens]
    terms = tuple(sorted({t for toks in group_tokens for t in toks}))
    index = {t: i for i, t in enumerate(terms)}
    edges = set()
    for toks in group_tokens:
        ids = [index[t] for t in toks]
        for i, a in enumerate(ids):
            for b in ids[i + 1:i + 1 + window]:
                if a != b:
                    edges.add((a, b) if a < b else (b, a))
    arcs = sorted(edges | {(b, a) for a, b in edges})
    src = np.array([a for a, _ in arcs], dtype=np.int64)
    dst = np.array([b for _, b in arcs], dtype=np.int64)
    return TermGraph(terms, src, dst)


def textrank(graph: TermGraph, d: float = 0.85, epsilon: float = 1e-4, max_iter: int = 100) -> TextRankResult:
    if not 0.0 <= d < 1.0:
        raise ValidationError(f"damping must lie in [0, 1), got {d}")
    if not epsilon > 0:
        raise ValidationError(f"epsilon must be > 0, got {epsilon}")
    n = len(graph.terms)
    if n == 0:
        return TextRankResult({}, 0, True)

    out = graph.out_degree().astype(np.float64)
    share = np.zeros(n)
    has_out = out > 0
    S = np.ones(n)
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        share[has_out] = S[has_out] / out[has_out]
        new = (1.0 - d) + d * np.bincount(graph.dst, weights=share[graph.src], minlength=n)
        delta = np.max(np.abs(new - S))
        S = new
        if delta < epsilon:
            converged = True
            break
    return TextRankResult(dict(zip(graph.terms, S.tolist())), it, converged)


def rank_terms(scores: dict[str, float]) -> list[tuple[str, float]]:
    return sorted(scores.items(), key=lambda kv: (-round(kv[1], TIE_DECIMALS), kv[0]))


def tag_count(n_terms: int, cap: int) -> int:
    return min(cap, math.ceil(n_terms / 3))


def assign_tags(group, corpus, params: KeywordParams | None = None) -> TagAssignment:
    """Top ``min(cap, ceil(|terms| / 3))`` TextRank terms of the group.

    Groups with fewer than two distinct terms are ranked by raw frequency.
    """
    params = params or KeywordParams()
    by_id = corpus.by_id
    missing = [m for m in group.member_ids if m not in by_id]
    if missing:
        raise ValidationError(f"group {group.id} has unknown member ids {missing}")
    token_lists = [by_id[m].tokens for m in group.member_ids]
    freq = Counter(t for toks in token_lists for t in toks)

    if not freq:
        log.warning("group %d has no usable tokens; no tags assigned", group.id)
        return TagAssignment(group.id, ())
    if len(freq) < 2:
        ranked = rank_terms({t: float(n) for t, n in freq.items()})
    else:
        result = textrank(build_term_graph(token_lists, params.window),
                          params.damping, params.epsilon, params.max_iter)
        if not result.converged:
            log.warning("TextRank for group %d stopped after %d iterations without converging",
                        group.id, result.iterations)
        ranked = rank_terms(result.scores)
    return TagAssignment(group.id, tuple(ranked[:tag_count(len(freq), params.tag_cap)]))
