"""REST API serving vectors, similarities and nearest neighbors.

GET-only JSON endpoints over an immutable ModelStore snapshot. OOV is a
legitimate zero-result outcome (200), never an error status.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .model import DatasetNotFound, ModelStore, load_dataset

API_VERSION = "1"


@dataclass
class DatasetSpec:
    name: str
    model: str
    label_rule: str = "exact"
    sidecar: str | None = None


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    max_top_n: int = 100
    cors_origins: list[str] = field(default_factory=lambda: ["*"])
    datasets: list[DatasetSpec] = field(default_factory=list)

    def __post_init__(self):
        names = [d.name for d in self.datasets]
        if len(set(names)) != len(names):
            raise ValueError("dataset names must be unique")


def load_server_config(path: str) -> ServerConfig:
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    datasets = [
        DatasetSpec(
            name=d["name"],
            model=d["model"],
            label_rule=d.get("label_rule", "exact"),
            sidecar=d.get("sidecar"),
        )
        for d in raw.get("datasets", [])
    ]
    if not datasets:
        raise ValueError("server config needs at least one dataset")
    return ServerConfig(
        host=raw.get("host", "127.0.0.1"),
        port=raw.get("port", 8000),
        max_top_n=raw.get("max_top_n", 100),
        cors_origins=raw.get("cors_origins", ["*"]),
        datasets=datasets,
    )


def build_store(config: ServerConfig) -> ModelStore:
    return ModelStore(
        [
            load_dataset(d.name, d.model, d.label_rule, d.sidecar)
            for d in config.datasets
        ]
    )


def create_app(store: ModelStore | None, max_top_n: int = 100, cors_origins: list[str] | None = None) -> FastAPI:
    """Build the API app over an already-loaded store (None = warming up)."""
    app = FastAPI(title="graphvec", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.max_top_n = max_top_n
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def add_api_version(request: Request, call_next):
        response = await call_next(request)
        response.headers["X-API-Version"] = API_VERSION
        return response

    def get_dataset(name: str):
        if app.state.store is None:
            return None, JSONResponse({"error": "loading"}, status_code=503)
        try:
            return app.state.store[name], None
        except DatasetNotFound:
            return None, JSONResponse({"error": "unknown dataset"}, status_code=404)

    @app.get("/health")
    def health():
        if app.state.store is None:
            return JSONResponse({"status": "loading"}, status_code=503)
        return {
            "status": "ok",
            "datasets": app.state.store.names(),
            "vocab_sizes": {
                name: len(d.model.tokens)
                for name, d in app.state.store.datasets.items()
            },
        }

    @app.get("/rest/get-vector/{data_set}/{concept_name}")
    def get_vector(data_set: str, concept_name: str):
        dataset, err = get_dataset(data_set)
        if err:
            return err
        results = [
            {"token": token, "pos": pos, "vector": vector.tolist()}
            for token, pos, vector in dataset.resolve(concept_name)
        ]
        return {"dataset": data_set, "label": concept_name, "results": results}

    @app.get("/rest/get-similarity/{data_set}/{concept_name_1}/{concept_name_2}")
    def get_similarity(data_set: str, concept_name_1: str, concept_name_2: str):
        dataset, err = get_dataset(data_set)
        if err:
            return err
        oov = dataset.is_oov(concept_name_1) or dataset.is_oov(concept_name_2)
        body = {
            "dataset": data_set,
            "concept_1": concept_name_1,
            "concept_2": concept_name_2,
            "similarity": dataset.similarity(concept_name_1, concept_name_2),
        }
        if oov:
            body["oov"] = True
        return body

    @app.get("/rest/closest-concepts/{data_set}/{top_n}/{concept_name}")
    def closest_concepts(data_set: str, top_n: str, concept_name: str):
        dataset, err = get_dataset(data_set)
        if err:
            return err
        try:
            n = int(top_n)
        except ValueError:
            return JSONResponse({"error": "top_n must be an integer"}, status_code=400)
        if not 1 <= n <= app.state.max_top_n:
            return JSONResponse(
                {"error": f"top_n must be in 1..{app.state.max_top_n}"},
                status_code=400,
            )
        result = [
            {"concept": token, "score": score}
            for token, score in dataset.closest_concepts(concept_name, n)
        ]
        return {"dataset": data_set, "concept": concept_name, "result": result}

    @app.get("/rest/get-similarity-combined/{concept_1}/{concept_2}")
    def get_similarity_combined(concept_1: str, concept_2: str):
        if app.state.store is None:
            return JSONResponse({"error": "loading"}, status_code=503)
        combined, per_dataset = app.state.store.combined_similarity(concept_1, concept_2)
        return {
            "concept_1": concept_1,
            "concept_2": concept_2,
            "combined": combined,
            "per_dataset": per_dataset,
        }

    return app


def serve(config: ServerConfig) -> None:
    import uvicorn

    store = build_store(config)
    app = create_app(store, config.max_top_n, config.cors_origins)
    uvicorn.run(app, host=config.host, port=config.port)
