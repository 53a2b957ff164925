"""Model loading, label resolution, and cosine-based query operations.

A Dataset couples an embedding model with a label index so that natural
words resolve to one or more graph tokens (POS variants). All queries
are pure functions over immutable in-memory state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

MODEL_FORMAT = "graphvec-model"
MODEL_VERSION = 1


class DatasetNotFound(KeyError):
    pass


class ModelFormatError(ValueError):
    pass


class EmbeddingModel:
    def __init__(self, name: str, tokens: list[str], vectors: np.ndarray, metadata: dict | None = None):
        if len(tokens) != vectors.shape[0]:
            raise ModelFormatError("token count does not match matrix rows")
        self.name = name
        self.tokens = tokens
        self.vectors = vectors
        self.metadata = metadata or {}
        self.index = {}
        for i, t in enumerate(tokens):
            if t in self.index:
                raise ModelFormatError(f"duplicate token {t!r} at row {i + 1}")
            self.index[t] = i
        # norm cache for brute-force neighbor scans
        norms = np.linalg.norm(vectors, axis=1)
        self._norms = np.where(norms == 0.0, 1.0, norms)
        self._zero_rows = norms == 0.0

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def vector(self, token: str) -> np.ndarray:
        return self.vectors[self.index[token]]

    def cosine_to_all(self, query: np.ndarray) -> np.ndarray:
        """Cosine of query against every vocabulary vector."""
        qnorm = np.linalg.norm(query)
        if qnorm == 0.0:
            return np.zeros(len(self.tokens))
        scores = (self.vectors @ query) / (self._norms * qnorm)
        scores[self._zero_rows] = 0.0
        return scores


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(u @ v / (nu * nv))


def save_text(model: EmbeddingModel, path: str) -> None:
    """word2vec-compatible text format: header then one token per line."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{len(model.tokens)} {model.dim}\n")
        for token, row in zip(model.tokens, model.vectors):
            f.write(token + " " + " ".join(repr(float(x)) for x in row) + "\n")


def load_text(path: str, name: str) -> EmbeddingModel:
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise ModelFormatError("bad header, expected '<vocab_size> <dim>'")
        size, dim = int(header[0]), int(header[1])
        tokens = []
        vectors = np.empty((size, dim))
        for i in range(size):
            parts = f.readline().split()
            if len(parts) != dim + 1:
                raise ModelFormatError(
                    f"line {i + 2}: expected 1 token + {dim} floats, got {len(parts)} fields"
                )
            tokens.append(parts[0])
            vectors[i] = [float(x) for x in parts[1:]]
    return EmbeddingModel(name, tokens, vectors)


_BINARY_MAGIC = b"GRAPHVEC-MODEL 1\n"


def save_binary(model: EmbeddingModel, path: str) -> None:
    """Versioned binary snapshot: bit-exact floats, byte-deterministic."""
    meta = dict(model.metadata)
    meta["format"] = MODEL_FORMAT
    meta["version"] = MODEL_VERSION
    header = json.dumps(
        {"dim": model.dim, "tokens": model.tokens, "meta": meta},
        sort_keys=True,
        ensure_ascii=False,
    ).encode("utf-8")
    with open(path, "wb") as f:
        f.write(_BINARY_MAGIC)
        f.write(len(header).to_bytes(8, "little"))
        f.write(header)
        f.write(np.ascontiguousarray(model.vectors, dtype="<f8").tobytes())


def load_binary(path: str, name: str) -> EmbeddingModel:
    with open(path, "rb") as f:
        magic = f.read(len(_BINARY_MAGIC))
        if magic != _BINARY_MAGIC:
            raise ModelFormatError("not a graphvec binary model file")
        header_len = int.from_bytes(f.read(8), "little")
        header = json.loads(f.read(header_len).decode("utf-8"))
        tokens = header["tokens"]
        dim = header["dim"]
        raw = f.read(len(tokens) * dim * 8)
        vectors = np.frombuffer(raw, dtype="<f8").reshape(len(tokens), dim).copy()
    return EmbeddingModel(name, tokens, vectors, header.get("meta", {}))


def load_model(path: str, name: str) -> EmbeddingModel:
    with open(path, "rb") as f:
        sniff = f.read(len(_BINARY_MAGIC))
    if sniff == _BINARY_MAGIC:
        return load_binary(path, name)
    return load_text(path, name)


@dataclass(frozen=True)
class LabelEntry:
    token: str
    pos: str | None = None


class LabelIndex:
    """Maps normalized labels to model tokens.

    Rules:
      exact      - the label is the token
      iri-suffix - case-folded, space/underscore-insensitive match on
                   the IRI local name (text after the last '/' or '#')
      sidecar    - explicit TSV file: label<TAB>token<TAB>pos?
    """

    def __init__(self, model: EmbeddingModel, rule: str = "exact", sidecar_path: str | None = None):
        self.rule = rule
        self.model = model
        self._map: dict[str, list[LabelEntry]] = {}
        if rule == "exact":
            pass
        elif rule == "iri-suffix":
            for token in model.tokens:
                local = token.rstrip("/#").rsplit("/", 1)[-1].rsplit("#", 1)[-1]
                key = self._normalize(local)
                self._map.setdefault(key, []).append(LabelEntry(token))
        elif rule == "sidecar":
            if sidecar_path is None:
                raise ValueError("sidecar rule requires a sidecar file path")
            self._load_sidecar(sidecar_path)
        else:
            raise ValueError(f"unknown label rule {rule!r}")

    @staticmethod
    def _normalize(label: str) -> str:
        return label.strip().casefold().replace("_", " ")

    def _load_sidecar(self, path: str) -> None:
        with open(path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) not in (2, 3):
                    raise ValueError(f"{path}:{lineno}: expected 2 or 3 tab-separated fields")
                label, token = parts[0], parts[1]
                pos = parts[2] if len(parts) == 3 and parts[2] else None
                if token not in self.model:
                    raise ValueError(f"{path}:{lineno}: token {token!r} not in model vocabulary")
                self._map.setdefault(self._normalize(label), []).append(LabelEntry(token, pos))

    def resolve(self, label: str) -> list[LabelEntry]:
        if self.rule == "exact":
            token = label.strip()
            return [LabelEntry(token)] if token in self.model else []
        return list(self._map.get(self._normalize(label), []))


class Dataset:
    """One named model plus its label index; all queries live here."""

    def __init__(self, name: str, model: EmbeddingModel, labels: LabelIndex):
        self.name = name
        self.model = model
        self.labels = labels

    def resolve(self, label: str) -> list[tuple[str, str | None, np.ndarray]]:
        return [
            (e.token, e.pos, self.model.vector(e.token))
            for e in self.labels.resolve(label)
        ]

    def similarity(self, label1: str, label2: str) -> float:
        """Max cosine over resolved vector cross product; OOV scores 0."""
        left = self.resolve(label1)
        right = self.resolve(label2)
        if not left or not right:
            return 0.0
        return max(cosine(u, v) for _, _, u in left for _, _, v in right)

    def is_oov(self, label: str) -> bool:
        return not self.labels.resolve(label)

    def closest_concepts(self, label: str, n: int) -> list[tuple[str, float]]:
        """Top-n tokens by cosine, merged over POS variants by max score.

        The query's own resolved tokens are excluded; ties break on the
        token string for determinism.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        resolved = self.resolve(label)
        if not resolved:
            return []
        best = None
        for _, _, vec in resolved:
            scores = self.model.cosine_to_all(vec)
            best = scores if best is None else np.maximum(best, scores)
        exclude = {token for token, _, _ in resolved}
        ranked = [
            (token, float(score))
            for token, score in zip(self.model.tokens, best)
            if token not in exclude
        ]
        ranked.sort(key=lambda ts: (-ts[1], ts[0]))
        return ranked[:n]

    def analogy(self, a: str, b: str, c: str, n: int) -> list[tuple[str, float]]:
        """3CosAdd: rank tokens by cosine to vec(b) - vec(a) + vec(c)."""
        resolved = [self.resolve(x) for x in (a, b, c)]
        if any(not r for r in resolved):
            return []
        va = resolved[0][0][2]
        vb = resolved[1][0][2]
        vc = resolved[2][0][2]
        target = vb - va + vc
        scores = self.model.cosine_to_all(target)
        exclude = {token for group in resolved for token, _, _ in group}
        ranked = [
            (token, float(score))
            for token, score in zip(self.model.tokens, scores)
            if token not in exclude
        ]
        ranked.sort(key=lambda ts: (-ts[1], ts[0]))
        return ranked[:n]


class ModelStore:
    """Immutable collection of named datasets."""

    def __init__(self, datasets: list[Dataset]):
        self.datasets = {d.name: d for d in datasets}
        if len(self.datasets) != len(datasets):
            raise ValueError("dataset names must be unique")

    def __getitem__(self, name: str) -> Dataset:
        try:
            return self.datasets[name]
        except KeyError:
            raise DatasetNotFound(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.datasets

    def names(self) -> list[str]:
        return list(self.datasets)

    def combined_similarity(self, label1: str, label2: str) -> tuple[float, dict[str, float]]:
        """Unnormalized sum of per-dataset similarities (OOV adds 0)."""
        per_dataset = {
            name: d.similarity(label1, label2) for name, d in self.datasets.items()
        }
        return sum(per_dataset.values()), per_dataset


def load_dataset(name: str, model_path: str, rule: str = "exact", sidecar_path: str | None = None) -> Dataset:
    model = load_model(model_path, name)
    labels = LabelIndex(model, rule, sidecar_path)
    return Dataset(name, model, labels)
