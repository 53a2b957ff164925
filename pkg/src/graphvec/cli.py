"""Command-line entry point: ingest, walk, train, serve, eval, query, pipeline."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import evaluate as ev
from . import model as modelmod
from . import sgns
from .graph import build_graph, graph_stats, load_graph, save_graph
from .ntriples import ParseError, open_ntriples, parse_ntriples
from .walks import WalkConfig, generate_corpus


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def cmd_ingest(args) -> int:
    errors = [0]
    try:
        with open_ntriples(args.input) as f:
            graph = build_graph(parse_ntriples(f, strict=args.strict, error_counter=errors))
    except ParseError as e:
        _log(f"ingest failed: {e}")
        return 1
    save_graph(graph, args.output)
    stats = graph_stats(graph)
    stats["parse_errors"] = errors[0]
    _log(f"ingest: {json.dumps(stats)}")
    return 0


def cmd_walk(args) -> int:
    graph = load_graph(args.graph)
    config = WalkConfig(depth=args.depth, walks_per_entity=args.walks, seed=args.seed)
    try:
        with open(args.output, "w", encoding="utf-8") as sink:
            stats = generate_corpus(graph, config, sink)
    except OSError as e:
        _log(f"walk aborted: {e}")
        return 1
    _log(f"walk: {json.dumps(stats)}")
    return 0


def cmd_train(args) -> int:
    sentences = sgns.read_corpus(args.corpus)
    config = sgns.TrainingConfig(
        dim=args.dim,
        window=args.window,
        epochs=args.epochs,
        negatives=args.negative,
        mode=args.mode,
        alpha=args.alpha,
        alpha_min=args.alpha_min,
        min_count=args.min_count,
        subsample=args.subsample,
        seed=args.seed,
    )
    try:
        trained = sgns.train(sentences, config)
    except ValueError as e:
        _log(f"train failed: {e}")
        return 1
    with open(args.corpus, "rb") as f:
        corpus_hash = hashlib.sha256(f.read()).hexdigest()
    trained.metadata["corpus_sha256"] = corpus_hash
    result = modelmod.EmbeddingModel(
        "trained", trained.vocab.tokens, trained.matrix, trained.metadata
    )
    if args.format == "binary":
        modelmod.save_binary(result, args.output)
    else:
        modelmod.save_text(result, args.output)
    _log(f"train: vocab={len(result.tokens)} dim={result.dim}")
    return 0


def cmd_serve(args) -> int:
    from . import server

    config = server.load_server_config(args.config)
    server.serve(config)
    return 0


def _parse_model_args(specs: list[str], rule: str) -> list[modelmod.Dataset]:
    datasets = []
    for spec in specs:
        if "=" not in spec:
            raise ValueError(f"--model expects name=path, got {spec!r}")
        name, path = spec.split("=", 1)
        sidecar = None
        if ":" in path and rule == "sidecar":
            path, sidecar = path.rsplit(":", 1)
        datasets.append(modelmod.load_dataset(name, path, rule, sidecar))
    return datasets


def cmd_eval(args) -> int:
    gold = ev.load_gold(args.gold, args.format)
    datasets = _parse_model_args(args.model, args.label_rule)
    results = [ev.evaluate(d, gold) for d in datasets]
    if args.combined:
        results.append(ev.evaluate(modelmod.ModelStore(datasets), gold))
    rendered = ev.report(results)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(rendered["text"])
        with open(args.out + ".csv", "w", encoding="utf-8") as f:
            f.write(rendered["csv"])
    print(rendered["text"], end="")
    return 0


def cmd_query(args) -> int:
    datasets = _parse_model_args(args.model, args.label_rule)
    store = modelmod.ModelStore(datasets)
    if args.operation == "combined":
        combined, per = store.combined_similarity(args.a, args.b)
        print(json.dumps({"combined": combined, "per_dataset": per}))
        return 0
    dataset = store[args.dataset or datasets[0].name]
    if args.operation == "vector":
        for token, pos, vec in dataset.resolve(args.a):
            print(json.dumps({"token": token, "pos": pos, "vector": vec.tolist()}))
    elif args.operation == "similarity":
        print(dataset.similarity(args.a, args.b))
    elif args.operation == "closest":
        for token, score in dataset.closest_concepts(args.a, args.n):
            print(f"{token}\t{score}")
    elif args.operation == "analogy":
        for token, score in dataset.analogy(args.a, args.b, args.c, args.n):
            print(f"{token}\t{score}")
    return 0


def cmd_pipeline(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    graph_path = os.path.join(args.outdir, "graph.txt")
    corpus_path = os.path.join(args.outdir, "corpus.txt")
    model_path = os.path.join(args.outdir, "model.txt")

    rc = cmd_ingest(argparse.Namespace(input=args.input, strict=args.strict, output=graph_path))
    if rc:
        return rc
    rc = cmd_walk(
        argparse.Namespace(
            graph=graph_path, depth=args.depth, walks=args.walks,
            seed=args.seed, output=corpus_path,
        )
    )
    if rc:
        return rc
    return cmd_train(
        argparse.Namespace(
            corpus=corpus_path, dim=args.dim, window=args.window,
            epochs=args.epochs, negative=args.negative, mode="sg",
            alpha=args.alpha, alpha_min=args.alpha_min,
            min_count=args.min_count, subsample=0.0, seed=args.seed,
            format="text", output=model_path,
        )
    )


def _add_train_flags(p):
    p.add_argument("--dim", type=int, default=200)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--negative", type=int, default=25)
    p.add_argument("--alpha", type=float, default=0.025)
    p.add_argument("--alpha-min", type=float, default=1e-4)
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphvec")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse N-Triples into a graph snapshot")
    p.add_argument("--input", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("walk", help="generate the random-walk corpus")
    p.add_argument("--graph", required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--walks", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("train", help="train skip-gram embeddings")
    p.add_argument("--corpus", required=True)
    _add_train_flags(p)
    p.add_argument("--mode", choices=["sg", "cbow"], default="sg")
    p.add_argument("--subsample", type=float, default=0.0)
    p.add_argument("--format", choices=["text", "binary"], default="text")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("serve", help="run the REST API server")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("eval", help="evaluate against a gold standard")
    p.add_argument("--gold", required=True)
    p.add_argument("--format", choices=["ws353", "simlex", "men"], required=True)
    p.add_argument("--model", action="append", required=True, metavar="name=path")
    p.add_argument("--label-rule", choices=["exact", "iri-suffix", "sidecar"], default="exact")
    p.add_argument("--combined", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("query", help="offline queries against local models")
    p.add_argument("operation", choices=["vector", "similarity", "closest", "combined", "analogy"])
    p.add_argument("--model", action="append", required=True, metavar="name=path")
    p.add_argument("--label-rule", choices=["exact", "iri-suffix", "sidecar"], default="exact")
    p.add_argument("--dataset")
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--n", type=int, default=10)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("pipeline", help="ingest -> walk -> train end to end")
    p.add_argument("--input", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--outdir", required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--walks", type=int, default=100)
    _add_train_flags(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, modelmod.DatasetNotFound) as e:
        _log(f"error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
