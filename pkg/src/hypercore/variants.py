"""Baseline core variants: (k;l)-hypercores, (alpha,beta)-cores on bipartite
graphs, neighbor and (neighbor, degree) hypercores, and pairwise k-cores of
clique expansions."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

from .core import CoreResult, threshold_core, threshold_coreness
from .hypergraph import BipartiteGraph, Hypergraph, WeightedGraph

__all__ = [
    "VariantCoreResult",
    "kl_hypercore",
    "l_hypercoreness",
    "alpha_beta_core",
    "neighbor_hypercore",
    "neighbor_hypercoreness",
    "nd_hypercore",
    "nd_hypercoreness",
    "pairwise_coreness",
]


@dataclass(frozen=True)
class VariantCoreResult:
    parent: Hypergraph
    nodes: FrozenSet[int]
    edges: FrozenSet[int]
    variant: str
    params: Dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def induced_edges(self) -> Dict[int, Tuple[int, ...]]:
        return {i: tuple(v for v in self.parent.edges[i] if v in self.nodes) for i in sorted(self.edges)}

    def edge_label_sets(self) -> List[Tuple[str, ...]]:
        labels = self.parent.labels
        return [tuple(labels[v] for v in e) for e in self.induced_edges().values()]

    def to_dict(self) -> dict:
        labels = self.parent.labels
        return {
            "variant": self.variant,
            **self.params,
            "nodes": [labels[v] for v in sorted(self.nodes)],
            "edges": [list(e) for e in self.edge_label_sets()],
            "edge_indices": sorted(self.edges),
        }


def _wrap(core: CoreResult, variant: str, **params: int) -> VariantCoreResult:
    return VariantCoreResult(core.parent, core.nodes, core.edges, variant, params)


def kl_hypercore(hg: Hypergraph, k: int, l: int) -> VariantCoreResult:
    """Maximal subhypergraph with node degree >= k and every edge keeping >= l nodes."""
    if l < 2:
        raise ValueError("l must be at least 2")
    core = threshold_core(hg, k, [l] * hg.n_edges)
    return _wrap(core, "kl", k=k, l=l)


def l_hypercoreness(hg: Hypergraph, l: int) -> List[int]:
    """Largest k with the node inside the (k;l)-hypercore, 0 if none."""
    if l < 2:
        raise ValueError("l must be at least 2")
    return list(threshold_coreness(hg, [l] * hg.n_edges).values)


def alpha_beta_core(bg: BipartiteGraph, alpha: int, beta: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Left nodes with degree >= alpha and right nodes with degree >= beta."""
    left_deg = [len(a) for a in bg.left_adj]
    right_deg = [len(a) for a in bg.right_adj]
    left_alive = [True] * bg.n_left
    right_alive = [True] * bg.n_right
    queue = deque([(0, v) for v in range(bg.n_left) if left_deg[v] < alpha])
    queue.extend((1, i) for i in range(bg.n_right) if right_deg[i] < beta)
    while queue:
        side, x = queue.popleft()
        if side == 0:
            if not left_alive[x]:
                continue
            left_alive[x] = False
            for i in bg.left_adj[x]:
                if right_alive[i]:
                    right_deg[i] -= 1
                    if right_deg[i] == beta - 1:
                        queue.append((1, i))
        else:
            if not right_alive[x]:
                continue
            right_alive[x] = False
            for v in bg.right_adj[x]:
                if left_alive[v]:
                    left_deg[v] -= 1
                    if left_deg[v] == alpha - 1:
                        queue.append((0, v))
    return (
        frozenset(v for v in range(bg.n_left) if left_alive[v]),
        frozenset(i for i in range(bg.n_right) if right_alive[i]),
    )


class _CompletePeeler:
    """Peels nodes out of complete subhypergraphs, tracking neighbor counts.

    Removing a node removes every edge holding it.  ``pair[(u, w)]`` counts
    alive edges containing both nodes; ``nbr[u]`` counts partners with a
    positive pair count.
    """

    def __init__(self, hg: Hypergraph):
        self.hg = hg
        self.node_alive = [True] * hg.n_nodes
        self.edge_alive = [True] * hg.n_edges
        self.deg = hg.degrees()
        self.pair: Dict[Tuple[int, int], int] = {}
        for e in hg.edges:
            for a in range(len(e)):
                for b in range(a + 1, len(e)):
                    key = (e[a], e[b])
                    self.pair[key] = self.pair.get(key, 0) + 1
        self.nbr = [0] * hg.n_nodes
        for u, w in self.pair:
            self.nbr[u] += 1
            self.nbr[w] += 1

    def remove(self, v: int) -> List[int]:
        """Remove ``v``; return nodes whose counts changed."""
        self.node_alive[v] = False
        touched = []
        for i in self.hg.incidence[v]:
            if not self.edge_alive[i]:
                continue
            self.edge_alive[i] = False
            e = self.hg.edges[i]
            for u in e:
                self.deg[u] -= 1
                touched.append(u)
            for a in range(len(e)):
                for b in range(a + 1, len(e)):
                    key = (e[a], e[b])
                    c = self.pair[key] - 1
                    self.pair[key] = c
                    if c == 0:
                        self.nbr[e[a]] -= 1
                        self.nbr[e[b]] -= 1
        return touched

    def score(self, v: int, with_degree: bool) -> int:
        return min(self.nbr[v], self.deg[v]) if with_degree else self.nbr[v]


def _complete_core(hg: Hypergraph, ok) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    peeler = _CompletePeeler(hg)
    queue = deque(v for v in range(hg.n_nodes) if not ok(peeler, v))
    while queue:
        v = queue.popleft()
        if not peeler.node_alive[v]:
            continue
        for u in peeler.remove(v):
            if peeler.node_alive[u] and not ok(peeler, u):
                queue.append(u)
    nodes = frozenset(v for v in range(hg.n_nodes) if peeler.node_alive[v])
    edges = frozenset(i for i in range(hg.n_edges) if peeler.edge_alive[i])
    return nodes, edges


def neighbor_hypercore(hg: Hypergraph, k: int) -> VariantCoreResult:
    """Maximal complete subhypergraph where each node has >= k neighbors."""
    nodes, edges = _complete_core(hg, lambda p, v: p.nbr[v] >= k)
    return VariantCoreResult(hg, nodes, edges, "neighbor", {"k": k})


def nd_hypercore(hg: Hypergraph, k: int, d: int) -> VariantCoreResult:
    """Maximal complete subhypergraph with >= k neighbors and degree >= d per node."""
    nodes, edges = _complete_core(hg, lambda p, v: p.nbr[v] >= k and p.deg[v] >= d)
    return VariantCoreResult(hg, nodes, edges, "neighbor_degree", {"k": k, "d": d})


def _complete_coreness(hg: Hypergraph, with_degree: bool) -> List[int]:
    peeler = _CompletePeeler(hg)
    out = [0] * hg.n_nodes
    alive = list(range(hg.n_nodes))
    while alive:
        level = min(peeler.score(v, with_degree) for v in alive)
        queue = deque(v for v in alive if peeler.score(v, with_degree) <= level)
        while queue:
            v = queue.popleft()
            if not peeler.node_alive[v]:
                continue
            out[v] = level
            for u in peeler.remove(v):
                if peeler.node_alive[u] and peeler.score(u, with_degree) <= level:
                    queue.append(u)
        alive = [v for v in alive if peeler.node_alive[v]]
    return out


def neighbor_hypercoreness(hg: Hypergraph) -> List[int]:
    return _complete_coreness(hg, with_degree=False)


def nd_hypercoreness(hg: Hypergraph) -> List[int]:
    """Largest k with the node in the (neighbor, degree)-(k, k)-hypercore."""
    return _complete_coreness(hg, with_degree=True)


def pairwise_coreness(g: WeightedGraph, weighted: bool = False) -> List[int]:
    """k-core numbers; in weighted mode a node's degree is its weight sum."""
    adj = g.adjacency() if weighted else [
        {u: 1 for u in nbrs} for nbrs in g.adjacency()
    ]
    deg = [sum(a.values()) for a in adj]
    alive = [True] * g.n_nodes
    core = [0] * g.n_nodes
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    level = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        level = max(level, d)
        core[v] = level
        alive[v] = False
        for u, w in adj[v].items():
            if alive[u]:
                deg[u] -= w
                heapq.heappush(heap, (deg[u], u))
    return core
