import numpy as np
import pytest

from graphvec.graph import Graph, build_graph
from graphvec.model import Dataset, EmbeddingModel, LabelIndex
from graphvec.ntriples import Triple


def triples(*spec):
    """Build Triples from (s, p, o) short names under a test namespace."""
    return [
        Triple(f"http://x/{s}", f"http://x/{p}", f"http://x/{o}")
        for s, p, o in spec
    ]


def make_model(name, token_vectors) -> EmbeddingModel:
    tokens = list(token_vectors)
    vectors = np.array([token_vectors[t] for t in tokens], dtype=np.float64)
    return EmbeddingModel(name, tokens, vectors)


def make_dataset(name, token_vectors, rule="exact", sidecar=None) -> Dataset:
    model = make_model(name, token_vectors)
    return Dataset(name, model, LabelIndex(model, rule, sidecar))


@pytest.fixture
def chain_graph() -> Graph:
    # a -p-> b -q-> c
    return build_graph(triples(("a", "p", "b"), ("b", "q", "c")))
