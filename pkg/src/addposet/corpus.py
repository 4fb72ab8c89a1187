"""Test corpora: isomorph-free multigraphs, random graphs and random posets."""

from __future__ import annotations

import random
from typing import Iterator

import networkx as nx

from .gf2 import rank_of
from .homology import Graph
from .poset import (AdditivePoset, even_powerset, from_functionals, pointed_poset, powerset,
                    subspace_pointed_poset, trivial_poset)


def _to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n_vertices), loops=0)
    for u, v in G.edges:
        if u == v:
            H.nodes[u]["loops"] += 1
        elif H.has_edge(u, v):
            H[u][v]["mult"] += 1
        else:
            H.add_edge(u, v, mult=1)
    return H


def _same(x: dict, y: dict, key: str) -> bool:
    return x[key] == y[key]


def _isomorphic(H1: nx.Graph, H2: nx.Graph) -> bool:
    return nx.is_isomorphic(H1, H2, node_match=lambda x, y: _same(x, y, "loops"),
                            edge_match=lambda x, y: _same(x, y, "mult"))


def _hash(H: nx.Graph) -> str:
    for v in H.nodes:
        H.nodes[v]["label"] = str(H.nodes[v]["loops"])
    for u, v in H.edges:
        H[u][v]["label"] = str(H[u][v]["mult"])
    return nx.weisfeiler_lehman_graph_hash(H, node_attr="label", edge_attr="label")


class _Dedup:
    def __init__(self):
        self.buckets: dict[tuple, list[nx.Graph]] = {}

    def add(self, G: Graph) -> bool:
        H = _to_nx(G)
        key = (G.n_vertices, G.n_edges, _hash(H))
        bucket = self.buckets.setdefault(key, [])
        if any(_isomorphic(H, K) for K in bucket):
            return False
        bucket.append(H)
        return True


def _augment(G: Graph) -> Iterator[Graph]:
    n = G.n_vertices
    for u in range(n):
        for v in range(u, n):
            yield Graph(n, G.edges + ((u, v),))
    for u in range(n):
        yield Graph(n + 1, G.edges + ((u, n),))


def connected_multigraphs(max_edges: int) -> list[Graph]:
    """Connected multigraphs with loops and at most ``max_edges`` edges,
    one per isomorphism class, ordered by edge count.

    Deleting a non-bridge edge, or a leaf edge of a tree, keeps a graph
    connected, so single-edge augmentation reaches every class.
    """
    level = [Graph(1, ())]
    out = list(level)
    for _ in range(max_edges):
        dd = _Dedup()
        nxt = []
        for G in level:
            for H in _augment(G):
                if dd.add(H):
                    nxt.append(H)
        out += nxt
        level = nxt
    return out


def random_multigraph(rng: random.Random, n_vertices: int, n_edges: int) -> Graph:
    edges = []
    for _ in range(n_edges):
        u = rng.randrange(n_vertices)
        v = rng.randrange(n_vertices)
        edges.append((u, v))
    return Graph(n_vertices, tuple(edges))


def random_multigraphs(count: int, seed: int = 0, *, min_cycle_rank: int = 5,
                       max_vertices: int = 8, extra: int = 4) -> list[Graph]:
    """``count`` random multigraphs, each with cycle rank at least ``min_cycle_rank``.

    Draws until the rank condition holds; the sequence is fixed by ``seed``.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        nv = rng.randint(1, max_vertices)
        ne = nv - 1 + min_cycle_rank + rng.randint(0, extra)
        G = random_multigraph(rng, nv, ne)
        if G.cycle_rank() >= min_cycle_rank:
            out.append(G)
    return out


def random_functionals(rng: random.Random, dim: int, extra: int = 4) -> list[int]:
    while True:
        k = dim + rng.randint(0, extra)
        S = sorted({rng.randrange(1, 1 << dim) for _ in range(k)}) if dim else []
        if rank_of(S) == dim:
            return S


def random_functional_posets(count: int, seed: int = 0, max_dim: int = 6) -> list[AdditivePoset]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        dim = rng.randint(1, max_dim)
        S = random_functionals(rng, dim)
        out.append(from_functionals(dim, S, materialize=True, name=f"random{i}"))
    return out


def poset_corpus(seed: int = 0, n_random: int = 100) -> list[AdditivePoset]:
    """Named constructions of small dimension plus seeded random posets."""
    out: list[AdditivePoset] = []
    out += [powerset(n) for n in range(1, 5)]
    out += [even_powerset(n) for n in range(2, 6)]
    out += [trivial_poset(n) for n in range(1, 5)]
    for n in range(1, 6):
        out.append(pointed_poset(n, (1 << n) - 1))
        out.append(pointed_poset(n, 1))
    for n in range(2, 6):
        H = [1 << i for i in range(n - 1)]
        out.append(subspace_pointed_poset(n, H, (1 << (n - 1)) - 1))
        out.append(subspace_pointed_poset(n, [1, 2], 3))
    out += random_functional_posets(n_random, seed)
    return out
