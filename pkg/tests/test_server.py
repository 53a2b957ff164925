import numpy as np
import pytest
from fastapi.testclient import TestClient

from graphvec.model import ModelStore
from graphvec.server import ServerConfig, create_app

from conftest import make_dataset


@pytest.fixture
def dual_pos_dataset(tmp_path):
    vectors = {
        "laugh#n": list(np.eye(200)[0]),
        "laugh#v": list(np.eye(200)[1]),
        "smile#n": list(0.5 * (np.eye(200)[0] + np.eye(200)[2])),
        "cry#v": list(np.eye(200)[3]),
    }
    sidecar = tmp_path / "labels.tsv"
    sidecar.write_text(
        "laugh\tlaugh#n\tn\nlaugh\tlaugh#v\tv\nsmile\tsmile#n\tn\ncry\tcry#v\tv\n"
    )
    return make_dataset("wordnetish", vectors, rule="sidecar", sidecar=str(sidecar))


@pytest.fixture
def client(dual_pos_dataset):
    space = make_dataset("spacey", {"New York": [1.0] * 200})
    app = create_app(ModelStore([dual_pos_dataset, space]), max_top_n=100)
    return TestClient(app)


def test_health(client, dual_pos_dataset):
    r = client.get("/health")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok"
    assert set(body["datasets"]) == {"wordnetish", "spacey"}
    assert body["vocab_sizes"]["wordnetish"] == len(dual_pos_dataset.model.tokens)


def test_health_before_load():
    app = create_app(None)
    r = TestClient(app).get("/health")
    assert r.status_code == 503


def test_get_vector_single_pos(client):
    r = client.get("/rest/get-vector/wordnetish/cry")
    assert r.status_code == 200
    body = r.json()
    assert body["dataset"] == "wordnetish"
    assert len(body["results"]) == 1
    assert len(body["results"][0]["vector"]) == 200
    assert body["results"][0]["pos"] == "v"


def test_get_vector_dual_pos(client):
    body = client.get("/rest/get-vector/wordnetish/laugh").json()
    assert len(body["results"]) == 2


def test_get_vector_oov_empty(client):
    r = client.get("/rest/get-vector/wordnetish/zzzz")
    assert r.status_code == 200
    assert r.json()["results"] == []


def test_unknown_dataset_404(client):
    r = client.get("/rest/get-vector/foo/laugh")
    assert r.status_code == 404
    assert r.json() == {"error": "unknown dataset"}


def test_similarity_identical_concept(client):
    body = client.get("/rest/get-similarity/wordnetish/cry/cry").json()
    assert body["similarity"] == pytest.approx(1.0)
    assert "oov" not in body


def test_similarity_oov_zero(client):
    body = client.get("/rest/get-similarity/wordnetish/cry/zzzz").json()
    assert body["similarity"] == 0.0
    assert body["oov"] is True


def test_similarity_matches_model_store(client, dual_pos_dataset):
    body = client.get("/rest/get-similarity/wordnetish/laugh/smile").json()
    assert body["similarity"] == pytest.approx(dual_pos_dataset.similarity("laugh", "smile"))


def test_closest_concepts_matches_model_store(client, dual_pos_dataset):
    body = client.get("/rest/closest-concepts/wordnetish/3/laugh").json()
    expected = dual_pos_dataset.closest_concepts("laugh", 3)
    assert [(e["concept"], pytest.approx(e["score"])) for e in body["result"]] == expected


def test_closest_concepts_top_n_zero_is_400(client):
    assert client.get("/rest/closest-concepts/wordnetish/0/laugh").status_code == 400


def test_closest_concepts_top_n_not_integer_is_400(client):
    assert client.get("/rest/closest-concepts/wordnetish/three/laugh").status_code == 400


def test_closest_concepts_top_n_above_cap_is_400(client):
    assert client.get("/rest/closest-concepts/wordnetish/101/laugh").status_code == 400


def test_closest_concepts_oov_is_empty_200(client):
    r = client.get("/rest/closest-concepts/wordnetish/5/zzzz")
    assert r.status_code == 200
    assert r.json()["result"] == []


def test_combined_similarity(client, dual_pos_dataset):
    body = client.get("/rest/get-similarity-combined/laugh/smile").json()
    assert body["combined"] == pytest.approx(sum(body["per_dataset"].values()))
    assert body["per_dataset"]["wordnetish"] == pytest.approx(
        dual_pos_dataset.similarity("laugh", "smile")
    )
    assert body["per_dataset"]["spacey"] == 0.0


def test_combined_all_oov(client):
    body = client.get("/rest/get-similarity-combined/zzzz/yyyy").json()
    assert body["combined"] == 0.0


def test_url_encoded_space_resolves(client):
    direct = client.get("/rest/get-vector/spacey/New%20York").json()
    assert len(direct["results"]) == 1
    assert direct["results"][0]["token"] == "New York"


def test_content_type_and_api_version(client):
    r = client.get("/health")
    assert r.headers["content-type"].startswith("application/json")
    assert r.headers["x-api-version"] == "1"


def test_identical_requests_identical_bodies(client):
    r1 = client.get("/rest/closest-concepts/wordnetish/3/laugh")
    r2 = client.get("/rest/closest-concepts/wordnetish/3/laugh")
    assert r1.content == r2.content


def test_server_config_rejects_duplicate_names():
    from graphvec.server import DatasetSpec

    with pytest.raises(ValueError, match="unique"):
        ServerConfig(datasets=[DatasetSpec("a", "x"), DatasetSpec("a", "y")])
