"""Knowledge-graph embedding toolkit: ingest, walk, train, serve, evaluate."""

__version__ = "0.1.0"
