"""End-to-end analysis: relevancy, graph, groups, tags, bundle."""
from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .corpus import Corpus
from .embedding import EmbeddingModel, TrainingConfig, load_word2vec_text, train
from .errors import ValidationError
from .grouping import build_graph, connected_components
from .insights import AnalysisBundle
from .keywords import KeywordParams, assign_tags
from .similarity import comment_vectors, pairwise_relevancy

log = logging.getLogger(__name__)

EXCLUDED_WARN_FRACTION = 0.5


@dataclass(frozen=True)
class PipelineParams:
    threshold: float = 0.85
    damping: float = 0.85
    window: int = 2
    tag_cap: int = 5
    epsilon: float = 1e-4
    max_iter: int = 100
    embedding: TrainingConfig | str | None = None
    seed: int = 0
    deterministic: bool = True
    keyword: KeywordParams = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError(f"threshold must lie in [0, 1], got {self.threshold}")
        object.__setattr__(self, "keyword", KeywordParams(
            self.window, self.damping, self.epsilon, self.max_iter, self.tag_cap))

    def to_dict(self) -> dict:
        if isinstance(self.embedding, TrainingConfig):
            emb = {"train": self.embedding.to_dict()}
        elif self.embedding is not None:
            emb = {"pretrained": str(self.embedding)}
        else:
            emb = None
        return {
            "threshold": self.threshold,
            "damping": self.damping,
            "window": self.window,
            "tag_cap": self.tag_cap,
            "epsilon": self.epsilon,
            "max_iter": self.max_iter,
            "embedding": emb,
            "seed": self.seed,
            "deterministic": self.deterministic,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineParams":
        d = dict(d)
        emb = d.pop("embedding", None)
        if emb is None:
            embedding = None
        elif "train" in emb:
            embedding = TrainingConfig.from_dict(emb["train"])
        else:
            embedding = emb["pretrained"]
        return cls(embedding=embedding, **d)


def _timestamp(deterministic: bool) -> str:
    if deterministic:
        # reproducible-builds convention; the epoch when unset
        ts = datetime.fromtimestamp(int(os.environ.get("SOURCE_DATE_EPOCH", "0")), timezone.utc)
    else:
        ts = datetime.now(timezone.utc)
    return ts.isoformat(timespec="seconds").replace("+00:00", "Z")


def prepare_model(corpus: Corpus, params: PipelineParams) -> EmbeddingModel:
    """Load or train the embedding named by ``params.embedding``."""
    if isinstance(params.embedding, TrainingConfig):
        return train([c.tokens for c in corpus], params.embedding, deterministic=params.deterministic)
    if params.embedding is None:
        raise ValidationError("params.embedding names neither a vector file nor a training config")
    return load_word2vec_text(params.embedding)


def analyze(corpus: Corpus, model: EmbeddingModel, params: PipelineParams | None = None) -> AnalysisBundle:
    params = params or PipelineParams()
    if len(corpus) == 0:
        raise ValidationError("cannot analyze an empty corpus")
    timings = {}

    t0 = time.perf_counter()
    vector_ids = set(comment_vectors(corpus, model))
    scores = pairwise_relevancy(corpus, model)
    timings["relevancy"] = time.perf_counter() - t0

    excluded = [
        (c.id, "no tokens after preprocessing" if not c.tokens else "no in-vocabulary tokens")
        for c in corpus if c.id not in vector_ids
    ]
    warnings = []
    if len(excluded) > EXCLUDED_WARN_FRACTION * len(corpus):
        msg = (f"{len(excluded)} of {len(corpus)} comments have no vector; "
               "the embedding model does not cover this corpus")
        log.warning(msg)
        warnings.append(msg)

    t0 = time.perf_counter()
    graph = build_graph(scores, vector_ids, params.threshold)
    groups = connected_components(graph)
    timings["grouping"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for g in groups:
        g.tags = assign_tags(g, corpus, params.keyword)
    timings["keywords"] = time.perf_counter() - t0

    return AnalysisBundle(
        corpus=corpus,
        groups=groups,
        params=params.to_dict(),
        created_at=_timestamp(params.deterministic),
        tool_version=__version__,
        excluded=excluded,
        warnings=warnings,
        # wall-clock numbers would break byte-identical deterministic output
        timings=None if params.deterministic else timings,
    )
