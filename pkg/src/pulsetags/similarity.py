"""Cosine relevancy between comments."""
from __future__ import annotations

import csv
from typing import NamedTuple

import numpy as np

from .corpus import Corpus
from .embedding import EmbeddingModel, comment_vector
from .errors import ValidationError


class RelevancyScore(NamedTuple):
    a: str
    b: str
    score: float


def cosine(u, v) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValidationError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ValidationError("cosine undefined for a zero-norm vector")
    return float(np.clip(u @ v / (nu * nv), -1.0, 1.0))


def comment_vectors(corpus: Corpus, model: EmbeddingModel) -> dict[str, np.ndarray]:
    """Comment id -> vector, for comments with a defined, nonzero-norm vector."""
    out = {}
    for c in corpus:
        vec = comment_vector(model, c.tokens)
        if vec is not None and np.linalg.norm(vec) > 0:
            out[c.id] = vec
    return out


def pairwise_relevancy(corpus: Corpus, model: EmbeddingModel) -> list[RelevancyScore]:
    """Cosine score for every unordered pair of comments that have vectors.

    Pairs are canonical (smaller id first) and the list is sorted by (a, b).
    """
    vecs = comment_vectors(corpus, model)
    ids = sorted(vecs)
    if len(ids) < 2:
        return []
    X = np.stack([vecs[i] for i in ids])
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    sims = np.clip(X @ X.T, -1.0, 1.0)
    rows, cols = np.triu_indices(len(ids), k=1)
    return [RelevancyScore(ids[i], ids[j], float(s)) for i, j, s in zip(rows, cols, sims[rows, cols])]


def write_scores_csv(scores, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a", "b", "score"])
        for s in scores:
            w.writerow([s.a, s.b, f"{s.score:.6f}"])
