"""Interned directed multigraph built from object-property triples.

Node and edge IRIs are interned to dense integer ids in first-seen
order; adjacency is an outgoing (edge_id, node_id) list per node.
Triples whose object is a literal never enter the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .ntriples import BlankNode, Literal, Triple

SNAPSHOT_MAGIC = "graphvec-graph v1"


class Interner:
    """Bijective string<->dense-id table, ids assigned first-seen."""

    def __init__(self):
        self.strings: list[str] = []
        self.ids: dict[str, int] = {}

    def intern(self, s: str) -> int:
        idx = self.ids.get(s)
        if idx is None:
            idx = len(self.strings)
            self.ids[s] = idx
            self.strings.append(s)
        return idx

    def __len__(self) -> int:
        return len(self.strings)

    def __contains__(self, s: str) -> bool:
        return s in self.ids


def _token(term) -> str:
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    return term


@dataclass
class Graph:
    nodes: Interner = field(default_factory=Interner)
    edges: Interner = field(default_factory=Interner)
    adjacency: list[list[tuple[int, int]]] = field(default_factory=list)
    dropped_literals: int = 0

    @property
    def vertex_count(self) -> int:
        return len(self.nodes)

    def node_iri(self, node_id: int) -> str:
        return self.nodes.strings[node_id]

    def edge_iri(self, edge_id: int) -> str:
        return self.edges.strings[edge_id]

    def out_edges(self, node_id: int) -> list[tuple[int, int]]:
        return self.adjacency[node_id]

    def stats(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "predicates": len(self.edges),
            "adjacency_entries": sum(len(a) for a in self.adjacency),
            "dropped_literals": self.dropped_literals,
        }


def build_graph(triples: Iterable[Triple]) -> Graph:
    """Intern subjects, predicates and IRI/blank objects into a Graph.

    Literal-object statements are dropped and counted. Duplicate
    identical triples collapse to one adjacency entry.
    """
    graph = Graph()
    seen: list[set[tuple[int, int]]] = []

    def ensure(node_id: int):
        while len(graph.adjacency) <= node_id:
            graph.adjacency.append([])
            seen.append(set())

    for triple in triples:
        if isinstance(triple.object, Literal):
            graph.dropped_literals += 1
            continue
        src = graph.nodes.intern(_token(triple.subject))
        ensure(src)
        edge = graph.edges.intern(_token(triple.predicate))
        dst = graph.nodes.intern(_token(triple.object))
        ensure(dst)
        entry = (edge, dst)
        if entry not in seen[src]:
            seen[src].add(entry)
            graph.adjacency[src].append(entry)
    return graph


def graph_stats(graph: Graph) -> dict:
    return graph.stats()


def save_graph(graph: Graph, path: str) -> None:
    """Write the version-tagged text snapshot (id tables + adjacency)."""
    entries = sum(len(a) for a in graph.adjacency)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{SNAPSHOT_MAGIC}\n")
        f.write(f"nodes {graph.vertex_count}\n")
        f.write(f"edges {len(graph.edges)}\n")
        f.write(f"adj {entries}\n")
        f.write(f"dropped {graph.dropped_literals}\n")
        for iri in graph.nodes.strings:
            f.write(iri + "\n")
        for iri in graph.edges.strings:
            f.write(iri + "\n")
        for src, out in enumerate(graph.adjacency):
            for edge, dst in out:
                f.write(f"{src} {edge} {dst}\n")


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        magic = f.readline().rstrip("\n")
        if magic != SNAPSHOT_MAGIC:
            raise ValueError(f"not a graph snapshot (header {magic!r})")
        n_nodes = int(f.readline().split()[1])
        n_edges = int(f.readline().split()[1])
        n_adj = int(f.readline().split()[1])
        dropped = int(f.readline().split()[1])
        graph = Graph(dropped_literals=dropped)
        for _ in range(n_nodes):
            graph.nodes.intern(f.readline().rstrip("\n"))
        for _ in range(n_edges):
            graph.edges.intern(f.readline().rstrip("\n"))
        graph.adjacency = [[] for _ in range(n_nodes)]
        for _ in range(n_adj):
            src, edge, dst = (int(x) for x in f.readline().split())
            graph.adjacency[src].append((edge, dst))
    return graph
