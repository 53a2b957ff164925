"""Skip-gram negative-sampling trainer over walk corpora.

Pure-numpy SGD implementation. Deterministic for a fixed seed when run
single-threaded (the only mode provided). Defaults follow the word2vec
conventions: dynamic window radius, unigram^0.75 negative distribution,
linear learning-rate decay.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class TrainingConfig:
    dim: int = 200
    window: int = 5
    epochs: int = 5
    negatives: int = 25
    mode: str = "sg"  # "sg" or "cbow"; cbow accepted but untuned
    alpha: float = 0.025
    alpha_min: float = 1e-4
    min_count: int = 1
    subsample: float = 0.0  # frequent-token threshold t; 0 disables
    power: float = 0.75
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1 or self.window < 1 or self.epochs < 1:
            raise ValueError("dim, window and epochs must be >= 1")
        if self.negatives < 0:
            raise ValueError("negatives must be >= 0")
        if not self.alpha > self.alpha_min >= 0:
            raise ValueError("need alpha > alpha_min >= 0")
        if self.mode not in ("sg", "cbow"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class Vocabulary:
    tokens: list[str]
    counts: np.ndarray  # per-token corpus frequency, aligned with tokens
    index: dict[str, int] = field(init=False)
    total: int = field(init=False)

    def __post_init__(self):
        self.index = {t: i for i, t in enumerate(self.tokens)}
        self.total = int(self.counts.sum())

    def __len__(self) -> int:
        return len(self.tokens)


def build_vocab(sentences: Iterable[Sequence[str]], min_count: int = 1) -> Vocabulary:
    """Count tokens and keep those with frequency >= min_count.

    Indices are assigned by descending frequency, ties by first
    occurrence in the corpus.
    """
    counts: dict[str, int] = {}
    for sentence in sentences:
        for token in sentence:
            counts[token] = counts.get(token, 0) + 1
    # dicts preserve insertion order, so a stable sort on -count keeps
    # first-occurrence order among ties
    kept = [(t, c) for t, c in counts.items() if c >= min_count]
    kept.sort(key=lambda tc: -tc[1])
    if not kept:
        raise ValueError("no trainable tokens")
    tokens = [t for t, _ in kept]
    freqs = np.array([c for _, c in kept], dtype=np.int64)
    return Vocabulary(tokens, freqs)


class NegativeSampler:
    """Samples token indices with probability freq^power / sum."""

    def __init__(self, vocab: Vocabulary, power: float = 0.75):
        weights = vocab.counts.astype(np.float64) ** power
        self.probabilities = weights / weights.sum()
        self._cumulative = np.cumsum(self.probabilities)
        self._cumulative[-1] = 1.0

    def sample(self, k: int, rng: np.random.Generator) -> np.ndarray:
        return np.searchsorted(self._cumulative, rng.random(k), side="right")


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def sgns_pair_loss(
    center: int,
    context: int,
    negatives: Sequence[int],
    w_in: np.ndarray,
    w_out: np.ndarray,
) -> tuple[float, np.ndarray, dict[int, np.ndarray]]:
    """Loss and analytic gradients for one (center, context) pair.

    Returns (loss, gradient for the center input row, accumulated
    gradients per touched output row). Duplicate negatives accumulate.
    """
    v = w_in[center]
    idxs = np.concatenate(([context], np.asarray(negatives, dtype=np.int64)))
    u = w_out[idxs]
    scores = u @ v
    # log sigma(x) = -logaddexp(0, -x), stable in both tails
    loss = float(np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum())
    g = _sigmoid(scores)
    g[0] -= 1.0  # positive label
    grad_center = g @ u
    grad_out: dict[int, np.ndarray] = {}
    for row, gi in zip(idxs, g):
        row = int(row)
        if row in grad_out:
            grad_out[row] = grad_out[row] + gi * v
        else:
            grad_out[row] = gi * v
    return loss, grad_center, grad_out


def _subsample_keep(vocab: Vocabulary, t: float) -> np.ndarray | None:
    if t <= 0:
        return None
    freq = vocab.counts / vocab.total
    keep = np.sqrt(t / freq)
    return np.minimum(keep, 1.0)


class TrainedEmbeddings:
    """Training result: input matrix rows keyed by vocabulary token."""

    def __init__(self, vocab: Vocabulary, matrix: np.ndarray, metadata: dict):
        self.vocab = vocab
        self.matrix = matrix
        self.metadata = metadata

    def vector(self, token: str) -> np.ndarray:
        return self.matrix[self.vocab.index[token]]


def train(sentences: Sequence[Sequence[str]], config: TrainingConfig) -> TrainedEmbeddings:
    """Run SGD over the corpus and return the input embedding matrix.

    Pairs the center token with each in-vocabulary token inside a
    per-position window radius drawn uniformly from 1..window; applies
    the SGNS update with config.negatives noise samples per pair.
    """
    vocab = build_vocab(sentences, config.min_count)
    encoded = []
    for sentence in sentences:
        ids = [vocab.index[t] for t in sentence if t in vocab.index]
        if ids:
            encoded.append(np.array(ids, dtype=np.int64))

    rng = np.random.default_rng(config.seed)
    w_in = (rng.random((len(vocab), config.dim)) - 0.5) / config.dim
    w_out = np.zeros((len(vocab), config.dim))
    sampler = NegativeSampler(vocab, config.power)
    keep_prob = _subsample_keep(vocab, config.subsample)

    total_positions = config.epochs * sum(len(s) for s in encoded)
    processed = 0
    alpha_span = config.alpha - config.alpha_min
    epoch_losses = []

    for epoch in range(config.epochs):
        epoch_loss = 0.0
        epoch_pairs = 0
        for ids in encoded:
            if keep_prob is not None:
                mask = rng.random(len(ids)) < keep_prob[ids]
                ids = ids[mask]
            n = len(ids)
            for pos in range(n):
                lr = config.alpha_min + alpha_span * max(
                    0.0, 1.0 - processed / total_positions
                )
                processed += 1
                radius = int(rng.integers(1, config.window + 1))
                lo = max(0, pos - radius)
                hi = min(n, pos + radius + 1)
                context_positions = [j for j in range(lo, hi) if j != pos]
                if not context_positions:
                    continue
                if config.mode == "sg":
                    for j in context_positions:
                        center, target = int(ids[pos]), int(ids[j])
                        loss = _pair_update(
                            center, target, w_in, w_out, sampler, rng,
                            config.negatives, lr,
                        )
                        epoch_loss += loss
                        epoch_pairs += 1
                else:
                    ctx = ids[context_positions]
                    loss = _cbow_update(
                        int(ids[pos]), ctx, w_in, w_out, sampler, rng,
                        config.negatives, lr,
                    )
                    epoch_loss += loss
                    epoch_pairs += 1
        if epoch_pairs and not np.isfinite(epoch_loss):
            raise RuntimeError(
                f"non-finite loss in epoch {epoch}: {epoch_loss!r} "
                f"after {processed} positions"
            )
        epoch_losses.append(epoch_loss / max(epoch_pairs, 1))

    metadata = {
        "dim": config.dim,
        "window": config.window,
        "epochs": config.epochs,
        "negatives": config.negatives,
        "mode": config.mode,
        "seed": config.seed,
        "min_count": config.min_count,
        "epoch_mean_loss": epoch_losses,
    }
    return TrainedEmbeddings(vocab, w_in, metadata)


def _draw_negatives(
    sampler: NegativeSampler, rng: np.random.Generator, k: int, positive: int
) -> np.ndarray:
    negs = sampler.sample(k, rng)
    clash = negs == positive
    if clash.any():
        # resample once; repeats after that are accepted (bounded work)
        negs[clash] = sampler.sample(int(clash.sum()), rng)
    return negs


def _pair_update(center, target, w_in, w_out, sampler, rng, k, lr) -> float:
    v = w_in[center]
    negs = _draw_negatives(sampler, rng, k, target)
    idxs = np.concatenate(([target], negs))
    u = w_out[idxs]
    scores = u @ v
    loss = float(np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum())
    g = _sigmoid(scores)
    g[0] -= 1.0
    grad_v = g @ u
    np.add.at(w_out, idxs, (-lr * g)[:, None] * v)
    w_in[center] = v - lr * grad_v
    return loss


def _cbow_update(center, context_ids, w_in, w_out, sampler, rng, k, lr) -> float:
    v = w_in[context_ids].mean(axis=0)
    negs = _draw_negatives(sampler, rng, k, center)
    idxs = np.concatenate(([center], negs))
    u = w_out[idxs]
    scores = u @ v
    loss = float(np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum())
    g = _sigmoid(scores)
    g[0] -= 1.0
    grad_v = (g @ u) / len(context_ids)
    np.add.at(w_out, idxs, (-lr * g)[:, None] * v)
    np.add.at(w_in, context_ids, -lr * grad_v)
    return loss


def read_corpus(path: str) -> list[list[str]]:
    """Load a walk corpus file: one sentence per line, space-separated."""
    sentences = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            tokens = line.split()
            if tokens:
                sentences.append(tokens)
    return sentences
