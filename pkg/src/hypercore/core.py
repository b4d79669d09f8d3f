"""(k,t)-hypercore extraction, t-hypercoreness and k-fraction by peeling.

All fraction thresholds are compared exactly: an edge with original size
``D`` survives while it keeps at least ``max(ceil(t*D), 2)`` members.
"""

from __future__ import annotations

import json
import random
from array import array
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .hypergraph import Hypergraph, induced_subhypergraph

__all__ = [
    "NO_FRACTION",
    "parse_fraction",
    "format_fraction",
    "edge_thresholds",
    "CoreResult",
    "CorenessVector",
    "FractionVector",
    "PeelState",
    "kt_hypercore",
    "threshold_core",
    "t_hypercoreness",
    "threshold_coreness",
    "k_fraction",
]

# k-fraction value of nodes that are in no (k, t)-hypercore
NO_FRACTION = Fraction(-1)

FractionLike = Union[Fraction, int, str, float]


def parse_fraction(value: FractionLike, max_den: int = 10**6) -> Fraction:
    """Parse ``"p/q"``, an int, or a decimal into an exact fraction in [0, 1].

    Decimals (strings with a ``.`` or floats) are rounded to the closest
    rational whose denominator does not exceed ``max_den``.
    """
    if isinstance(value, Fraction):
        out = value
    elif isinstance(value, int):
        out = Fraction(value)
    elif isinstance(value, float):
        out = Fraction(value).limit_denominator(max_den)
    else:
        text = str(value).strip()
        try:
            out = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        if "/" not in text:
            out = out.limit_denominator(max_den)
    if not 0 <= out <= 1:
        raise ValueError(f"fraction {value!r} is outside [0, 1]")
    return out


def format_fraction(value: Fraction) -> str:
    if value == NO_FRACTION:
        return "-1"
    return f"{value.numerator}/{value.denominator}"


def edge_thresholds(hg: Hypergraph, t: Fraction) -> List[int]:
    """Per-edge survival size ``max(ceil(t * D(i)), 2)``."""
    num, den = t.numerator, t.denominator
    return [max(-(-num * d // den), 2) for d in hg.original_size]


@dataclass(frozen=True)
class CoreResult:
    """A (sub)core given by alive node ids and alive edge indices of ``parent``.

    Edges of the core are the induced ones, ``e_i & nodes``.
    """

    parent: Hypergraph
    nodes: FrozenSet[int]
    edges: FrozenSet[int]
    k: int
    t: Optional[Fraction] = None

    def __len__(self) -> int:
        return len(self.nodes)

    def __bool__(self) -> bool:
        return bool(self.nodes)

    def same_as(self, other: "CoreResult") -> bool:
        return self.nodes == other.nodes and self.edges == other.edges

    def induced_edges(self) -> Dict[int, Tuple[int, ...]]:
        alive = self.nodes
        return {i: tuple(v for v in self.parent.edges[i] if v in alive) for i in sorted(self.edges)}

    def edge_label_sets(self) -> List[Tuple[str, ...]]:
        labels = self.parent.labels
        return [tuple(labels[v] for v in e) for e in self.induced_edges().values()]

    def node_labels(self) -> List[str]:
        return [self.parent.labels[v] for v in sorted(self.nodes)]

    def degree(self, v: int) -> int:
        return sum(1 for i in self.parent.incidence[v] if i in self.edges)

    def to_hypergraph(self) -> Hypergraph:
        """Materialize as a hypergraph that keeps each edge's original size."""
        return induced_subhypergraph(self.parent, self.nodes, self.edges)

    def to_dict(self) -> dict:
        out = {"k": self.k}
        if self.t is not None:
            out["t"] = format_fraction(self.t)
        out["nodes"] = self.node_labels()
        out["edges"] = [list(e) for e in self.edge_label_sets()]
        out["edge_indices"] = sorted(self.edges)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class PeelState:
    """Mutable alive-counters over an immutable hypergraph.

    ``size[i]`` counts alive members of alive edge ``i`` and ``deg[v]`` the
    alive edges of alive node ``v``.  Callers copy a state before a trial.
    """

    __slots__ = ("hg", "thr", "k", "size", "edge_alive", "deg", "node_alive", "n_alive")

    def __init__(self, hg: Hypergraph, thr: Sequence[int], k: int):
        self.hg = hg
        self.thr = array("i", thr)
        self.k = k
        self.size = array("i", [len(e) for e in hg.edges])
        self.edge_alive = bytearray(b"\x01") * hg.n_edges
        self.deg = hg.degrees()
        self.node_alive = bytearray(b"\x01") * hg.n_nodes
        self.n_alive = hg.n_nodes

    @classmethod
    def from_core(cls, core: CoreResult, thr: Sequence[int], k: int) -> "PeelState":
        hg = core.parent
        st = cls.__new__(cls)
        st.hg, st.thr, st.k = hg, array("i", thr), k
        alive_n = core.nodes
        st.node_alive = bytearray(v in alive_n for v in range(hg.n_nodes))
        st.edge_alive = bytearray(i in core.edges for i in range(hg.n_edges))
        st.size = array(
            "l",
            [sum(1 for v in e if st.node_alive[v]) if st.edge_alive[i] else 0 for i, e in enumerate(hg.edges)],
        )
        st.deg = [
            sum(1 for i in hg.incidence[v] if st.edge_alive[i]) if st.node_alive[v] else 0
            for v in range(hg.n_nodes)
        ]
        st.n_alive = len(alive_n)
        return st

    def copy(self) -> "PeelState":
        st = PeelState.__new__(PeelState)
        st.hg, st.thr, st.k = self.hg, self.thr, self.k
        st.size = array("i", self.size)
        st.edge_alive = self.edge_alive[:]
        st.deg = self.deg[:]
        st.node_alive = self.node_alive[:]
        st.n_alive = self.n_alive
        return st

    def start(self) -> Tuple[List[int], List[int]]:
        """Drop edges already below threshold, then all low-degree nodes."""
        killed = []
        queue = []
        k = self.k
        for i, alive in enumerate(self.edge_alive):
            if alive and self.size[i] < self.thr[i]:
                self._kill_edge(i, queue, k)
                killed.append(i)
        queue.extend(v for v in range(self.hg.n_nodes) if self.node_alive[v] and self.deg[v] < k)
        removed, more = self.peel(queue)
        return removed, killed + more

    def _kill_edge(self, i: int, queue: List[int], k: int) -> None:
        self.edge_alive[i] = 0
        deg, alive = self.deg, self.node_alive
        for u in self.hg.edges[i]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == k - 1:
                    queue.append(u)

    def peel(self, queue: Iterable[int], rng: Optional[random.Random] = None) -> Tuple[List[int], List[int]]:
        """Remove ``queue`` and everything that cascades from it.

        Nodes are taken FIFO unless ``rng`` is given, in which case the next
        node is drawn uniformly from the pending ones.
        Returns the removed node ids and the killed edge indices.
        """
        hg_edges = self.hg.edges
        incidence = self.hg.incidence
        thr, size, edge_alive = self.thr, self.size, self.edge_alive
        deg, node_alive = self.deg, self.node_alive
        km1 = self.k - 1
        pending = deque(queue) if rng is None else list(queue)
        removed: List[int] = []
        killed: List[int] = []
        while pending:
            if rng is None:
                v = pending.popleft()
            else:
                j = rng.randrange(len(pending))
                pending[j], pending[-1] = pending[-1], pending[j]
                v = pending.pop()
            if not node_alive[v]:
                continue
            node_alive[v] = 0
            removed.append(v)
            for i in incidence[v]:
                if not edge_alive[i]:
                    continue
                size[i] -= 1
                if size[i] < thr[i]:
                    edge_alive[i] = 0
                    killed.append(i)
                    for u in hg_edges[i]:
                        if node_alive[u]:
                            deg[u] -= 1
                            if deg[u] == km1:
                                pending.append(u)
        self.n_alive -= len(removed)
        return removed, killed

    def remove_node(self, v: int) -> Tuple[List[int], List[int]]:
        return self.peel([v])

    def alive_nodes(self) -> FrozenSet[int]:
        return frozenset(v for v, a in enumerate(self.node_alive) if a)

    def alive_edges(self) -> FrozenSet[int]:
        return frozenset(i for i, a in enumerate(self.edge_alive) if a)

    def to_core(self, t: Optional[Fraction] = None) -> CoreResult:
        return CoreResult(self.hg, self.alive_nodes(), self.alive_edges(), self.k, t)


def threshold_core(
    hg: Hypergraph,
    k: int,
    thresholds: Sequence[int],
    *,
    t: Optional[Fraction] = None,
    rng: Optional[random.Random] = None,
) -> CoreResult:
    """Maximal subhypergraph with degree >= k and per-edge size floors."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    st = PeelState(hg, thresholds, k)
    if rng is None:
        st.start()
    else:
        queue: List[int] = []
        for i in range(hg.n_edges):
            if st.size[i] < st.thr[i]:
                st._kill_edge(i, queue, k)
        queue.extend(v for v in range(hg.n_nodes) if st.deg[v] < k)
        st.peel(queue, rng=rng)
    return st.to_core(t)


def kt_hypercore(
    hg: Hypergraph, k: int, t: FractionLike, *, rng: Optional[random.Random] = None
) -> CoreResult:
    """The (k, t)-hypercore of ``hg`` (possibly empty).

    ``rng`` randomizes the peeling order; the result does not depend on it.
    """
    t = parse_fraction(t)
    return threshold_core(hg, k, edge_thresholds(hg, t), t=t, rng=rng)


@dataclass(frozen=True)
class CorenessVector:
    """Per-node coreness plus the level at which each edge left the cores.

    ``edge_level[i]`` is the largest k whose core still holds edge ``i``
    (0 if none), so every core of the sweep can be recovered.
    """

    parent: Hypergraph
    values: Tuple[int, ...]
    edge_level: Tuple[int, ...]
    t: Optional[Fraction] = None

    @property
    def max(self) -> int:
        return max(self.values, default=0)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def core(self, k: int) -> CoreResult:
        nodes = frozenset(v for v, c in enumerate(self.values) if c >= k)
        edges = frozenset(i for i, c in enumerate(self.edge_level) if c >= k)
        return CoreResult(self.parent, nodes, edges, k, self.t)

    def cores(self) -> List[CoreResult]:
        """Every nonempty core for k = 1..max."""
        return [self.core(k) for k in range(1, self.max + 1)]

    def core_sizes(self) -> List[int]:
        """``sizes[k-1]`` = number of nodes in the k-th core, k = 1..max."""
        top = self.max
        hist = [0] * (top + 2)
        for c in self.values:
            hist[c] += 1
        out = []
        running = 0
        for k in range(top, 0, -1):
            running += hist[k]
            out.append(running)
        return out[::-1]


def threshold_coreness(hg: Hypergraph, thresholds: Sequence[int], t: Optional[Fraction] = None) -> CorenessVector:
    """Coreness under fixed per-edge size floors, one peeling sweep."""
    n = hg.n_nodes
    hg_edges, incidence = hg.edges, hg.incidence
    # slack[i] = alive members minus the floor; negative means the edge is gone.
    # One array read per incidence keeps the hot loop cache-friendly.
    slack = array("i", [len(e) - h for e, h in zip(hg_edges, thresholds)])
    deg = hg.degrees()
    for i, e in enumerate(hg_edges):
        if slack[i] < 0:
            for u in e:
                deg[u] -= 1
    node_alive = bytearray(b"\x01") * n
    coreness = [0] * n
    edge_level = [0] * hg.n_edges

    # lazy bucket queue: a node sits in bucket max(deg, level); stale entries
    # (dead nodes) are skipped, so each degree decrement costs O(1)
    buckets: List[List[int]] = [[] for _ in range(max(deg, default=0) + 1)]
    for v in range(n):
        buckets[deg[v]].append(v)
    level = 0
    while level < len(buckets):
        bucket = buckets[level]
        while bucket:
            v = bucket.pop()
            if not node_alive[v]:
                continue
            node_alive[v] = 0
            coreness[v] = level
            for i in incidence[v]:
                s = slack[i]
                if s < 0:
                    continue
                slack[i] = s - 1
                if s == 0:
                    edge_level[i] = level
                    for u in hg_edges[i]:
                        if node_alive[u]:
                            d = deg[u] - 1
                            deg[u] = d
                            buckets[d if d > level else level].append(u)
        level += 1
    return CorenessVector(hg, tuple(coreness), tuple(edge_level), t)


def t_hypercoreness(hg: Hypergraph, t: FractionLike) -> CorenessVector:
    """t-hypercoreness of every node; ``.core(k)`` yields each (k, t)-hypercore."""
    t = parse_fraction(t)
    return threshold_coreness(hg, edge_thresholds(hg, t), t)


@dataclass(frozen=True)
class FractionVector:
    """Per-node k-fraction (``NO_FRACTION`` outside the (k, 0)-hypercore).

    ``edge_level[i]`` is the largest t whose (k, t)-hypercore still holds
    edge ``i``, or ``NO_FRACTION``.
    """

    parent: Hypergraph
    k: int
    values: Tuple[Fraction, ...]
    edge_level: Tuple[Fraction, ...]

    @property
    def max(self) -> Fraction:
        return max(self.values, default=NO_FRACTION)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def levels(self) -> List[Fraction]:
        """Distinct thresholds at which the core changes, ascending."""
        return sorted(set(x for x in self.values if x != NO_FRACTION))

    def core(self, t: FractionLike) -> CoreResult:
        t = parse_fraction(t)
        nodes = frozenset(v for v, f in enumerate(self.values) if f != NO_FRACTION and f >= t)
        edges = frozenset(i for i, f in enumerate(self.edge_level) if f != NO_FRACTION and f >= t)
        return CoreResult(self.parent, nodes, edges, self.k, t)

    def cores(self) -> List[CoreResult]:
        """Every distinct nonempty (k, t)-hypercore, by increasing t."""
        return [self.core(t) for t in self.levels()]


def k_fraction(hg: Hypergraph, k: int) -> FractionVector:
    """k-fraction of every node by raising t through the realizable ratios."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    n, m = hg.n_nodes, hg.n_edges
    D = hg.original_size
    st = PeelState(hg, edge_thresholds(hg, Fraction(0)), k)
    st.start()

    frac = [NO_FRACTION] * n
    edge_level = [NO_FRACTION] * m
    hg_edges, incidence = hg.edges, hg.incidence
    size, edge_alive = st.size, st.edge_alive
    deg, node_alive = st.deg, st.node_alive
    km1 = k - 1

    # every level is some s/D with 2 <= s <= D; rank the distinct ratios once
    # and walk them with a bucket queue (levels only rise)
    sizes = set(D)
    ratios = sorted({Fraction(s, d) for d in sizes for s in range(2, d + 1)})
    rank = {r: j for j, r in enumerate(ratios)}
    rank_of = {d: [-1, -1] + [rank[Fraction(s, d)] for s in range(2, d + 1)] for d in sizes}
    buckets: List[List[int]] = [[] for _ in ratios]
    for i in range(m):
        if edge_alive[i]:
            buckets[rank_of[D[i]][size[i]]].append(i)
    remaining = st.n_alive
    pending: deque = deque()

    def drop_edge(i: int, t: Fraction) -> None:
        edge_alive[i] = 0
        edge_level[i] = t
        for u in hg_edges[i]:
            if node_alive[u]:
                deg[u] -= 1
                if deg[u] == km1:
                    pending.append(u)

    level = 0
    while remaining:
        t = ratios[level]
        for i in buckets[level]:
            # stale entries: edge already gone or since shrunk to a lower rank
            if edge_alive[i] and rank_of[D[i]][size[i]] == level:
                drop_edge(i, t)
        buckets[level] = []
        while pending:
            v = pending.popleft()
            if not node_alive[v]:
                continue
            node_alive[v] = 0
            frac[v] = t
            remaining -= 1
            for i in incidence[v]:
                if not edge_alive[i]:
                    continue
                s = size[i] - 1
                size[i] = s
                r = rank_of[D[i]][s]
                if r <= level:
                    drop_edge(i, t)
                else:
                    buckets[r].append(i)
        level += 1
    return FractionVector(hg, k, tuple(frac), tuple(edge_level))
