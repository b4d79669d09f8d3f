"""Immutable hypergraph model, ingestion, expansions and up-scaling."""

from __future__ import annotations

import json
import os
from array import array
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Hypergraph",
    "BipartiteGraph",
    "WeightedGraph",
    "HypergraphFormatError",
    "load_hyperedge_list",
    "load_nverts_simplices",
    "stats",
    "largest_connected_component",
    "clique_expansion",
    "star_expansion",
    "upscale",
]

MAX_EDGES = 2**31 - 1


class HypergraphFormatError(ValueError):
    """Raised when an input file cannot be turned into a valid hypergraph."""


class Hypergraph:
    """Node/hyperedge incidence structure with dense integer node ids.

    Nodes are ``0..n-1``; ``labels[v]`` is the external token of node ``v``.
    Each edge is a strictly increasing tuple of node ids with at least two
    members.  ``original_size[i]`` is the size used by fraction thresholds
    and defaults to ``len(edges[i])``.

    Instances are never mutated after construction.
    """

    __slots__ = ("_labels", "_index", "_edges", "_original_size", "_incidence")

    def __init__(
        self,
        edges: Iterable[Iterable[int]],
        labels: Optional[Sequence[str]] = None,
        original_size: Optional[Sequence[int]] = None,
        n_nodes: Optional[int] = None,
    ) -> None:
        edge_list: List[Tuple[int, ...]] = []
        top = -1
        for raw in edges:
            e = tuple(sorted(set(int(v) for v in raw)))
            if len(e) < 2:
                raise ValueError(f"hyperedge {len(edge_list)} has fewer than two nodes")
            if e[0] < 0:
                raise ValueError("node ids must be nonnegative")
            top = max(top, e[-1])
            edge_list.append(e)
        if len(edge_list) > MAX_EDGES:
            raise OverflowError("edge index space exhausted")

        if labels is None:
            n = top + 1 if n_nodes is None else n_nodes
            labels = [str(v) for v in range(n)]
        n = len(labels)
        if top >= n:
            raise ValueError(f"edge refers to node {top} but only {n} nodes exist")

        if original_size is None:
            sizes = [len(e) for e in edge_list]
        else:
            sizes = [int(d) for d in original_size]
            if len(sizes) != len(edge_list):
                raise ValueError("original_size must have one entry per edge")
            for i, (e, d) in enumerate(zip(edge_list, sizes)):
                if d < len(e):
                    raise ValueError(f"original size of edge {i} is smaller than the edge")

        incidence: List[List[int]] = [[] for _ in range(n)]
        for i, e in enumerate(edge_list):
            for v in e:
                incidence[v].append(i)

        self._labels = tuple(str(x) for x in labels)
        self._index = {lab: v for v, lab in enumerate(self._labels)}
        if len(self._index) != n:
            raise ValueError("labels must be unique")
        self._edges = tuple(edge_list)
        self._original_size = tuple(sizes)
        # compact int arrays: peeling walks these in random node order and
        # boxed per-entry ints would dominate cache traffic on large inputs
        self._incidence = tuple(array("i", x) for x in incidence)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Iterable[Hashable]],
        *,
        dedup: bool = False,
        drop_singletons: bool = True,
    ) -> "Hypergraph":
        """Build from edges given as token collections.

        Node ids are assigned in order of first appearance.  Repeated tokens
        inside one edge collapse.  With ``drop_singletons`` edges that end up
        with one node are discarded (before dedup), otherwise they raise.
        """
        token_sets: List[List[str]] = []
        for raw in edges:
            toks = list(dict.fromkeys(str(x) for x in raw))
            if len(toks) < 2:
                if drop_singletons:
                    continue
                raise ValueError("hyperedge with fewer than two distinct nodes")
            token_sets.append(toks)
        if dedup:
            seen = set()
            kept = []
            for toks in token_sets:
                key = frozenset(toks)
                if key not in seen:
                    seen.add(key)
                    kept.append(toks)
            token_sets = kept

        index: Dict[str, int] = {}
        id_edges = []
        for toks in token_sets:
            id_edges.append([index.setdefault(t, len(index)) for t in toks])
        labels = [None] * len(index)
        for tok, v in index.items():
            labels[v] = tok
        return cls(id_edges, labels=labels)

    # -- basic accessors -------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self._labels)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def edges(self) -> Tuple[Tuple[int, ...], ...]:
        return self._edges

    @property
    def original_size(self) -> Tuple[int, ...]:
        return self._original_size

    @property
    def incidence(self) -> Tuple[Sequence[int], ...]:
        return self._incidence

    def node_id(self, label: Hashable) -> int:
        return self._index[str(label)]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def degrees(self) -> List[int]:
        return [len(x) for x in self._incidence]

    def neighbors(self, v: int) -> set:
        out = set()
        for i in self._incidence[v]:
            out.update(self._edges[i])
        out.discard(v)
        return out

    def total_size(self) -> int:
        """TS(H): sum of hyperedge sizes."""
        return sum(len(e) for e in self._edges)

    def edge_labels(self, i: int) -> Tuple[str, ...]:
        return tuple(self._labels[v] for v in self._edges[i])

    def __len__(self) -> int:
        return self.n_nodes

    def __repr__(self) -> str:
        return f"Hypergraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._edges == other._edges
            and self._original_size == other._original_size
        )

    def __hash__(self) -> int:
        return hash((self._labels, self._edges, self._original_size))

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "labels": list(self._labels),
            "edges": [list(e) for e in self._edges],
            "original_size": list(self._original_size),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        labels = data["labels"]
        if len(labels) != data.get("n_nodes", len(labels)):
            raise HypergraphFormatError("n_nodes does not match the label list")
        return cls(data["edges"], labels=labels, original_size=data.get("original_size"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        return cls.from_dict(json.loads(text))

    def write_hyperedge_list(self, path: "os.PathLike[str] | str") -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for i in range(self.n_edges):
                fh.write(" ".join(self.edge_labels(i)) + "\n")


def load_hyperedge_list(
    path: "os.PathLike[str] | str", *, dedup: bool = True, drop_singletons: bool = True
) -> Hypergraph:
    """Read one hyperedge per line of whitespace-separated node tokens.

    Blank lines and lines starting with ``#`` are skipped.  Singleton removal
    runs before deduplication.
    """
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        try:
            for line in fh:
                stripped = line.strip()
                if stripped and not stripped.startswith("#"):
                    edges.append(stripped.split())
        except UnicodeDecodeError as exc:
            raise HypergraphFormatError(f"{path}: not a text hyperedge list") from exc
    hg = Hypergraph.from_edges(edges, dedup=dedup, drop_singletons=drop_singletons)
    if hg.n_edges == 0:
        raise HypergraphFormatError(f"{path}: no hyperedges survive preprocessing")
    return hg


def load_nverts_simplices(
    nverts_path: "os.PathLike[str] | str",
    simplices_path: "os.PathLike[str] | str",
    *,
    dedup: bool = True,
    drop_singletons: bool = True,
) -> Hypergraph:
    """Read the two-file ``*-nverts.txt`` / ``*-simplices.txt`` layout.

    The first file lists hyperedge sizes, the second the concatenated members.
    """
    with open(nverts_path, encoding="utf-8") as fh:
        nverts = [int(x) for x in fh.read().split()]
    with open(simplices_path, encoding="utf-8") as fh:
        members = fh.read().split()
    if sum(nverts) != len(members):
        raise HypergraphFormatError("nverts total does not match simplices length")
    edges = []
    pos = 0
    for size in nverts:
        edges.append(members[pos:pos + size])
        pos += size
    hg = Hypergraph.from_edges(edges, dedup=dedup, drop_singletons=drop_singletons)
    if hg.n_edges == 0:
        raise HypergraphFormatError("no hyperedges survive preprocessing")
    return hg


def stats(hg: Hypergraph) -> dict:
    """Table-style summary.  Averages are exact ``Fraction`` values."""
    degs = hg.degrees()
    sizes = [len(e) for e in hg.edges]
    n, m = hg.n_nodes, hg.n_edges
    ts = sum(sizes)
    card = Counter(sizes)
    return {
        "n_nodes": n,
        "n_edges": m,
        "max_degree": max(degs) if degs else 0,
        "avg_degree": Fraction(ts, n) if n else Fraction(0),
        "max_edge_size": max(sizes) if sizes else 0,
        "avg_edge_size": Fraction(ts, m) if m else Fraction(0),
        "total_size": ts,
        "cardinality": dict(sorted(card.items())),
        "E_2": card.get(2, 0),
        "E_3": card.get(3, 0),
        "E_4": card.get(4, 0),
        "E_5": card.get(5, 0),
        "E_gt5": sum(c for s, c in card.items() if s > 5),
    }


def _components(hg: Hypergraph) -> List[List[int]]:
    parent = list(range(hg.n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in hg.edges:
        r = find(e[0])
        for v in e[1:]:
            s = find(v)
            if s != r:
                if s < r:
                    r, s = s, r
                parent[s] = r
    groups: Dict[int, List[int]] = {}
    for v in range(hg.n_nodes):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def induced_subhypergraph(hg: Hypergraph, nodes: Iterable[int], edge_ids: Iterable[int]) -> Hypergraph:
    """Restrict to ``nodes``; edges become ``e_i & nodes`` and keep their D(i)."""
    keep = sorted(set(nodes))
    remap = {v: j for j, v in enumerate(keep)}
    new_edges = []
    new_sizes = []
    for i in sorted(set(edge_ids)):
        e = [remap[v] for v in hg.edges[i] if v in remap]
        if len(e) >= 2:
            new_edges.append(e)
            new_sizes.append(hg.original_size[i])
    return Hypergraph(new_edges, labels=[hg.labels[v] for v in keep], original_size=new_sizes)


def largest_connected_component(hg: Hypergraph) -> Hypergraph:
    """Largest node-sharing component; ties go to the one holding the smallest id.

    Node ids are re-densified in their original relative order and D is
    re-recorded as the component's edge sizes.
    """
    comps = _components(hg)
    if not comps:
        return hg
    best = max(comps, key=lambda c: (len(c), -min(c)))
    members = set(best)
    keep = sorted(best)
    remap = {v: j for j, v in enumerate(keep)}
    edges = [[remap[v] for v in e] for e in hg.edges if e[0] in members]
    return Hypergraph(edges, labels=[hg.labels[v] for v in keep])


@dataclass(frozen=True)
class BipartiteGraph:
    """Left side = hypergraph nodes, right side = hyperedge indices."""

    n_left: int
    n_right: int
    pairs: Tuple[Tuple[int, int], ...]
    left_adj: Tuple[Tuple[int, ...], ...] = field(repr=False)
    right_adj: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_pairs(cls, n_left: int, n_right: int, pairs: Iterable[Tuple[int, int]]) -> "BipartiteGraph":
        pairs = tuple(sorted(set((int(a), int(b)) for a, b in pairs)))
        left: List[List[int]] = [[] for _ in range(n_left)]
        right: List[List[int]] = [[] for _ in range(n_right)]
        for a, b in pairs:
            left[a].append(b)
            right[b].append(a)
        return cls(n_left, n_right, pairs, tuple(map(tuple, left)), tuple(map(tuple, right)))


@dataclass(frozen=True)
class WeightedGraph:
    """Pairwise graph over ``0..n_nodes-1``; ``weights[(u, v)]`` with ``u < v``."""

    n_nodes: int
    weights: Dict[Tuple[int, int], int]
    weighted: bool = True

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.weights)

    def adjacency(self) -> List[Dict[int, int]]:
        adj: List[Dict[int, int]] = [dict() for _ in range(self.n_nodes)]
        for (u, v), w in self.weights.items():
            w = w if self.weighted else 1
            adj[u][v] = w
            adj[v][u] = w
        return adj


def clique_expansion(hg: Hypergraph, weighted: bool = False) -> WeightedGraph:
    weights: Dict[Tuple[int, int], int] = {}
    for e in hg.edges:
        for pair in combinations(e, 2):
            weights[pair] = weights.get(pair, 0) + 1
    if not weighted:
        weights = {p: 1 for p in weights}
    return WeightedGraph(hg.n_nodes, weights, weighted)


def star_expansion(hg: Hypergraph) -> BipartiteGraph:
    return BipartiteGraph.from_pairs(
        hg.n_nodes, hg.n_edges, ((v, i) for i, e in enumerate(hg.edges) for v in e)
    )


def upscale(hg: Hypergraph, factor: int) -> Hypergraph:
    """Repeat the edge list ``factor`` times (parallel edges kept on purpose)."""
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    if hg.n_edges * factor > MAX_EDGES:
        raise OverflowError("edge index space exhausted")
    return Hypergraph(
        list(hg.edges) * factor,
        labels=hg.labels,
        original_size=list(hg.original_size) * factor,
    )
