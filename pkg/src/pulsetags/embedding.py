"""Word vectors: a from-scratch word2vec trainer and the word2vec text format.

Training is single-hidden-layer word2vec with negative sampling, in either
skip-gram (center word predicts each context word) or CBOW (mean of the
context predicts the center) mode. Per positive pair the trainer maximizes::

    log sigma(u_o . v_c) + sum_k log sigma(-u_k . v_c)

where ``v`` rows live in the input table (exported as the word vectors) and
``u`` rows in the output table. All randomness (subsampling, dynamic window
sizes, negative draws) is generated up front with numpy from ``seed``; the
SGD kernels are compiled with numba and consume it. ``deterministic=True``
runs one sequential kernel and is bit-reproducible; ``deterministic=False``
splits pairs across threads with unsynchronized (Hogwild-style) updates.
"""
from __future__ import annotations

import logging
import math
import warnings
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numba import njit, prange

from .errors import ParseError, ValidationError

log = logging.getLogger(__name__)

MODES = ("skipgram", "cbow")
MIN_LR_FRACTION = 1e-4
NOISE_POWER = 0.75


@dataclass(frozen=True)
class TrainingConfig:
    mode: str = "skipgram"
    dim: int = 100
    window: int = 5
    negative: int = 5
    epochs: int = 5
    initial_lr: float = 0.025
    min_count: int = 5
    subsample_t: float = 1e-3
    seed: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}, got {self.mode!r}")
        for name in ("dim", "window", "epochs", "min_count"):
            if int(getattr(self, name)) < 1:
                raise ValidationError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.negative < 0:
            raise ValidationError(f"negative must be >= 0, got {self.negative}")
        if not self.initial_lr > 0:
            raise ValidationError(f"initial_lr must be > 0, got {self.initial_lr}")
        if not self.subsample_t >= 0:
            raise ValidationError(f"subsample_t must be >= 0, got {self.subsample_t}")
        if not -(2**63) <= int(self.seed) < 2**64:
            raise ValidationError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TrainingConfig":
        return cls(**d)


@dataclass(eq=False)
class EmbeddingModel:
    """Vocabulary plus one dense vector per word.

    ``counts`` holds training-corpus frequencies; it is all zeros for models
    read from a word2vec file. ``loss_history`` is the mean loss per epoch.
    """

    words: list[str]
    vectors: np.ndarray
    counts: np.ndarray | None = None
    hyperparams: TrainingConfig | None = None
    loss_history: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.words):
            raise ValidationError(
                f"vectors shape {self.vectors.shape} does not match {len(self.words)} words")
        if not np.all(np.isfinite(self.vectors)):
            raise ValidationError("vectors contain non-finite values")
        self.vocab = {w: i for i, w in enumerate(self.words)}
        if len(self.vocab) != len(self.words):
            dup = next(w for w, n in Counter(self.words).items() if n > 1)
            raise ValidationError(f"duplicate word {dup!r}")
        if self.counts is None:
            self.counts = np.zeros(len(self.words), dtype=np.int64)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.vocab

    def __getitem__(self, word) -> np.ndarray:
        return self.vectors[self.vocab[word]]

    def similarity(self, a: str, b: str) -> float:
        from .similarity import cosine

        return cosine(self[a], self[b])


# ---------------------------------------------------------------------------
# loss and gradients (reference numpy formulas, also used by the tests)

def log_sigmoid(x):
    x = np.asarray(x, dtype=np.float64)
    return np.where(x >= 0, -np.log1p(np.exp(-np.abs(x))), x - np.log1p(np.exp(-np.abs(x))))


def sigmoid(x):
    return np.exp(log_sigmoid(x))


def sgns_loss(v, u_pos, u_neg) -> float:
    """Negative log-likelihood of one positive pair and its negative rows."""
    u_neg = np.asarray(u_neg, dtype=np.float64).reshape(-1, len(v))
    return float(-log_sigmoid(u_pos @ v) - log_sigmoid(-(u_neg @ v)).sum())


def sgns_grads(v, u_pos, u_neg):
    """Gradients of :func:`sgns_loss` w.r.t. ``v``, ``u_pos`` and each ``u_neg`` row."""
    u_neg = np.asarray(u_neg, dtype=np.float64).reshape(-1, len(v))
    g_pos = sigmoid(u_pos @ v) - 1.0
    g_neg = sigmoid(u_neg @ v)
    dv = g_pos * u_pos + g_neg @ u_neg
    return dv, g_pos * v, np.outer(g_neg, v)


def cbow_loss(v_ctx, u_pos, u_neg) -> float:
    return sgns_loss(np.mean(v_ctx, axis=0), u_pos, u_neg)


def cbow_grads(v_ctx, u_pos, u_neg):
    """Gradients of :func:`cbow_loss`; every context row gets ``dh / n_ctx``."""
    v_ctx = np.asarray(v_ctx, dtype=np.float64)
    dh, du_pos, du_neg = sgns_grads(v_ctx.mean(axis=0), u_pos, u_neg)
    return np.tile(dh / len(v_ctx), (len(v_ctx), 1)), du_pos, du_neg


# ---------------------------------------------------------------------------
# SGD kernels

@njit(inline="always")
def _log_sig(x):
    if x >= 0:
        return -math.log1p(math.exp(-x))
    return x - math.log1p(math.exp(x))


@njit(inline="always")
def _lr_at(lr0, k, total):
    if total <= 1:
        return lr0
    return lr0 * (1.0 - (1.0 - MIN_LR_FRACTION) * k / (total - 1))


def _skipgram_kernel(w_in, w_out, centers, contexts, negs, lr0, start, total, n_chunks):
    n = centers.shape[0]
    dim = w_in.shape[1]
    n_neg = negs.shape[1]
    chunk = (n + n_chunks - 1) // n_chunks
    loss = 0.0
    for ch in prange(n_chunks):
        lo = ch * chunk
        hi = min(n, lo + chunk)
        grad = np.empty(dim)
        local = 0.0
        for k in range(lo, hi):
            lr = _lr_at(lr0, start + k, total)
            c = centers[k]
            o = contexts[k]
            grad[:] = 0.0
            for j in range(n_neg + 1):
                if j == 0:
                    t = o
                    label = 1.0
                else:
                    t = negs[k, j - 1]
                    if t == o:
                        continue
                    label = 0.0
                f = 0.0
                for d in range(dim):
                    f += w_in[c, d] * w_out[t, d]
                if label == 1.0:
                    local -= _log_sig(f)
                    g = -math.exp(_log_sig(-f))  # sigma(f) - 1
                else:
                    local -= _log_sig(-f)
                    g = math.exp(_log_sig(f))
                for d in range(dim):
                    grad[d] += g * w_out[t, d]
                    w_out[t, d] -= lr * g * w_in[c, d]
            for d in range(dim):
                w_in[c, d] -= lr * grad[d]
        loss += local
    return loss


def _cbow_kernel(w_in, w_out, centers, ctx_ptr, ctx_idx, negs, lr0, start, total, n_chunks):
    n = centers.shape[0]
    dim = w_in.shape[1]
    n_neg = negs.shape[1]
    chunk = (n + n_chunks - 1) // n_chunks
    loss = 0.0
    for ch in prange(n_chunks):
        lo = ch * chunk
        hi = min(n, lo + chunk)
        h = np.empty(dim)
        grad = np.empty(dim)
        local = 0.0
        for k in range(lo, hi):
            lr = _lr_at(lr0, start + k, total)
            o = centers[k]
            a = ctx_ptr[k]
            b = ctx_ptr[k + 1]
            m = b - a
            h[:] = 0.0
            for q in range(a, b):
                for d in range(dim):
                    h[d] += w_in[ctx_idx[q], d]
            for d in range(dim):
                h[d] /= m
            grad[:] = 0.0
            for j in range(n_neg + 1):
                if j == 0:
                    t = o
                    label = 1.0
                else:
                    t = negs[k, j - 1]
                    if t == o:
                        continue
                    label = 0.0
                f = 0.0
                for d in range(dim):
                    f += h[d] * w_out[t, d]
                if label == 1.0:
                    local -= _log_sig(f)
                    g = -math.exp(_log_sig(-f))
                else:
                    local -= _log_sig(-f)
                    g = math.exp(_log_sig(f))
                for d in range(dim):
                    grad[d] += g * w_out[t, d]
                    w_out[t, d] -= lr * g * h[d]
            for q in range(a, b):
                for d in range(dim):
                    w_in[ctx_idx[q], d] -= lr * grad[d] / m
        loss += local
    return loss


skipgram_step = njit(cache=True)(_skipgram_kernel)
cbow_step = njit(cache=True)(_cbow_kernel)
_skipgram_parallel = njit(cache=True, parallel=True)(_skipgram_kernel)
_cbow_parallel = njit(cache=True, parallel=True)(_cbow_kernel)


# ---------------------------------------------------------------------------
# training schedule

def build_vocab(sentences: Sequence[Sequence[str]], min_count: int):
    counts = Counter(tok for s in sentences for tok in s)
    kept = sorted((w for w, n in counts.items() if n >= min_count), key=lambda w: (-counts[w], w))
    return kept, np.array([counts[w] for w in kept], dtype=np.int64)


def _keep_probability(counts: np.ndarray, t: float) -> np.ndarray:
    if t <= 0:
        return np.ones(len(counts))
    threshold = t * counts.sum()
    p = (np.sqrt(counts / threshold) + 1.0) * threshold / counts
    return np.minimum(p, 1.0)


def _epoch_windows(tokens, sent_ids, keep, reduced, window):
    """Positions of kept tokens plus per-center (center, context) candidate grid."""
    pos = np.flatnonzero(keep)
    ids = tokens[pos]
    sids = sent_ids[pos]
    b = reduced[pos]
    n = len(pos)
    offsets = np.concatenate([np.arange(-window, 0), np.arange(1, window + 1)])
    j = np.arange(n)[:, None] + offsets[None, :]
    valid = (j >= 0) & (j < n) & (np.abs(offsets)[None, :] <= b[:, None])
    jc = np.clip(j, 0, max(n - 1, 0))
    valid &= sids[jc] == sids[:, None]
    return ids, jc, valid


def _skipgram_pairs(ids, jc, valid):
    rows, cols = np.nonzero(valid)
    return ids[rows].astype(np.int64), ids[jc[rows, cols]].astype(np.int64)


def _cbow_batches(ids, jc, valid):
    n_ctx = valid.sum(axis=1)
    has = n_ctx > 0
    rows, cols = np.nonzero(valid[has])
    ctx_idx = ids[jc[has][rows, cols]].astype(np.int64)
    ptr = np.zeros(int(has.sum()) + 1, dtype=np.int64)
    np.cumsum(n_ctx[has], out=ptr[1:])
    return ids[has].astype(np.int64), ptr, ctx_idx


def train(corpus_tokens: Iterable[Sequence[str]], config: TrainingConfig | None = None,
          deterministic: bool = True, workers: int | None = None) -> EmbeddingModel:
    """Train word vectors over tokenized sentences."""
    config = config or TrainingConfig()
    sentences = [list(s) for s in corpus_tokens]
    if not any(sentences):
        raise ValidationError("training corpus is empty")
    words, counts = build_vocab(sentences, config.min_count)
    if not words:
        raise ValidationError(f"no word occurs at least min_count={config.min_count} times")
    vocab = {w: i for i, w in enumerate(words)}

    encoded = [[vocab[t] for t in s if t in vocab] for s in sentences]
    tokens = np.fromiter((i for s in encoded for i in s), dtype=np.int64)
    sent_ids = np.repeat(np.arange(len(encoded)), [len(s) for s in encoded])
    V, D, W = len(words), config.dim, config.window

    struct_ss, neg_ss, init_ss = np.random.SeedSequence(int(config.seed) % 2**64).spawn(3)
    struct_rng = np.random.default_rng(struct_ss)
    neg_rng = np.random.default_rng(neg_ss)

    keep_p = _keep_probability(counts.astype(np.float64), config.subsample_t)
    noise = counts.astype(np.float64) ** NOISE_POWER
    noise_cdf = np.cumsum(noise / noise.sum())
    noise_cdf[-1] = 1.0

    schedule, total = [], 0
    for _ in range(config.epochs):
        keep = struct_rng.random(len(tokens)) < keep_p[tokens]
        reduced = struct_rng.integers(1, W + 1, size=len(tokens))
        ids, jc, valid = _epoch_windows(tokens, sent_ids, keep, reduced, W)
        units = int(valid.sum()) if config.mode == "skipgram" else int(valid.any(axis=1).sum())
        schedule.append((keep, reduced, units))
        total += units

    init_rng = np.random.default_rng(init_ss)
    w_in = (init_rng.random((V, D)) - 0.5) / D
    w_out = np.zeros((V, D))
    n_chunks = 1 if deterministic else max(1, int(workers or _thread_count()))

    losses, done = [], 0
    for epoch, (keep, reduced, units) in enumerate(schedule):
        ids, jc, valid = _epoch_windows(tokens, sent_ids, keep, reduced, W)
        negs = np.searchsorted(noise_cdf, neg_rng.random((units, config.negative)), side="right")
        negs = np.minimum(negs, V - 1).astype(np.int64)
        if units == 0:
            losses.append(float("nan"))
            continue
        if config.mode == "skipgram":
            centers, contexts = _skipgram_pairs(ids, jc, valid)
            fn = skipgram_step if deterministic else _skipgram_parallel
            args = (w_in, w_out, centers, contexts, negs)
        else:
            centers, ptr, ctx = _cbow_batches(ids, jc, valid)
            fn = cbow_step if deterministic else _cbow_parallel
            args = (w_in, w_out, centers, ptr, ctx, negs)
        with warnings.catch_warnings():
            # numba complains about an old TBB before falling back to another threading layer
            warnings.filterwarnings("ignore", message=".*TBB.*")
            loss = fn(*args, config.initial_lr, done, total, n_chunks)
        done += units
        losses.append(loss / units)
        log.debug("epoch %d: %d units, mean loss %.5f", epoch + 1, units, losses[-1])

    return EmbeddingModel(words, w_in, counts, config, losses)


def _thread_count() -> int:
    import numba

    return numba.get_num_threads()


# ---------------------------------------------------------------------------
# comment vectors

def comment_vector(model: EmbeddingModel, tokens: Iterable[str]) -> np.ndarray | None:
    """Mean of the in-vocabulary token vectors, or ``None`` if there are none."""
    idx = [model.vocab[t] for t in tokens if t in model.vocab]
    if not idx:
        return None
    return model.vectors[np.sort(idx)].mean(axis=0)


# ---------------------------------------------------------------------------
# word2vec text format

def save_word2vec_text(model: EmbeddingModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(model.words)} {model.dim}\n")
        for word, row in zip(model.words, model.vectors):
            fh.write(word + " " + " ".join(f"{x:.8g}" for x in row) + "\n")


def load_word2vec_text(path) -> EmbeddingModel:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("missing header 'V D'", line=1, path=path)
    header = lines[0].split()
    try:
        if len(header) != 2:
            raise ValueError
        n_words, dim = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"header must be 'V D', got {lines[0]!r}", line=1, path=path) from None
    if n_words < 0 or dim < 1:
        raise ParseError(f"invalid header {lines[0]!r}", line=1, path=path)

    words, seen = [], {}
    vectors = np.empty((n_words, dim))
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            raise ParseError("blank line", line=lineno, path=path)
        if len(words) == n_words:
            raise ParseError(f"more rows than the {n_words} declared", line=lineno, path=path)
        parts = line.split()
        if len(parts) != dim + 1:
            raise ParseError(f"expected word plus {dim} values, found {len(parts) - 1} values",
                             line=lineno, path=path)
        word = parts[0]
        try:
            row = [float(x) for x in parts[1:]]
        except ValueError:
            raise ParseError("non-numeric vector component", line=lineno, path=path) from None
        if not all(math.isfinite(x) for x in row):
            raise ParseError("non-finite vector component", line=lineno, path=path)
        if word in seen:
            raise ValidationError(f"{path}:{lineno}: duplicate word {word!r} (first on line {seen[word]})")
        seen[word] = lineno
        vectors[len(words)] = row
        words.append(word)
    if len(words) != n_words:
        raise ParseError(f"header declares {n_words} rows, found {len(words)}",
                         line=len(lines) + 1, path=path)
    return EmbeddingModel(words, vectors)
