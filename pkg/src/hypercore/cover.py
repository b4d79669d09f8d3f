"""Max (k_c, t_c)-vertex cover heuristics.

A hyperedge e is t_c-covered by a node set S when |e & S| >= t_c * |e|.
The goal is to pick k_c nodes covering as many hyperedges as possible.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import parse_fraction, t_hypercoreness
from .hypergraph import Hypergraph

__all__ = ["COVER_METHODS", "cover_need", "covered_count", "cover_select", "GreedyCover", "cover_sweep"]

COVER_METHODS = ("hypercoreness", "degree", "greedy")


def cover_need(hg: Hypergraph, t_c) -> List[int]:
    """Members each edge needs inside the set to count as covered: ceil(t_c*|e|)."""
    t = parse_fraction(t_c)
    return [-(-t.numerator * len(e) // t.denominator) for e in hg.edges]


def covered_count(hg: Hypergraph, nodes: Iterable[int], t_c) -> int:
    chosen = set(nodes)
    need = cover_need(hg, t_c)
    return sum(1 for i, e in enumerate(hg.edges) if sum(1 for v in e if v in chosen) >= need[i])


class GreedyCover:
    """Greedy selection with incrementally maintained per-edge hit counts.

    ``gain[v]`` is the number of uncovered edges that become covered if ``v``
    joins; it changes only for members of edges whose hit count moves, so a
    lazy max-heap keyed on (gain, degree, -id) stays cheap.
    """

    def __init__(self, hg: Hypergraph, t_c):
        self.hg = hg
        self.t_c = parse_fraction(t_c)
        self.need = cover_need(hg, self.t_c)
        self.hits = [0] * hg.n_edges
        self.covered = [n == 0 for n in self.need]
        self.n_covered = sum(self.covered)
        self.chosen: List[int] = []
        self.in_set = [False] * hg.n_nodes
        self.deg = hg.degrees()
        self.gain = [0] * hg.n_nodes
        for i, e in enumerate(hg.edges):
            if not self.covered[i] and self.need[i] == 1:
                for v in e:
                    self.gain[v] += 1
        self._heap = [(-self.gain[v], -self.deg[v], v) for v in range(hg.n_nodes)]
        heapq.heapify(self._heap)

    def add(self, v: int) -> int:
        """Add ``v``; return how many edges became covered."""
        if self.in_set[v]:
            raise ValueError(f"node {v} already chosen")
        self.in_set[v] = True
        self.chosen.append(v)
        newly = 0
        touched = set()
        for i in self.hg.incidence[v]:
            if self.covered[i]:
                continue
            self.hits[i] += 1
            h, need = self.hits[i], self.need[i]
            e = self.hg.edges[i]
            if h >= need:
                self.covered[i] = True
                newly += 1
                # members that were one short of covering it lose that gain
                for u in e:
                    if not self.in_set[u]:
                        self.gain[u] -= 1
                        touched.add(u)
            elif h == need - 1:
                for u in e:
                    if not self.in_set[u]:
                        self.gain[u] += 1
                        touched.add(u)
        self.n_covered += newly
        for u in touched:
            heapq.heappush(self._heap, (-self.gain[u], -self.deg[u], u))
        return newly

    def best(self) -> int:
        heap = self._heap
        while heap:
            g, d, v = heap[0]
            if self.in_set[v] or -g != self.gain[v]:
                heapq.heappop(heap)
                continue
            return v
        raise ValueError("no node left to choose")


def _by_degree(hg: Hypergraph) -> List[int]:
    deg = hg.degrees()
    return sorted(range(hg.n_nodes), key=lambda v: (-deg[v], v))


def cover_select(hg: Hypergraph, k_c: int, t_c, method: str = "greedy") -> List[int]:
    """Ordered list of ``k_c`` chosen nodes.

    hypercoreness: t_c-hypercoreness desc, degree desc, id asc.
    degree: degree desc, id asc.
    greedy: start from the top-degree node, then repeatedly add the node with
    the largest marginal gain (ties by degree desc, id asc).
    """
    if not 0 <= k_c <= hg.n_nodes:
        raise ValueError(f"k_c={k_c} must lie in [0, {hg.n_nodes}]")
    t = parse_fraction(t_c)
    if method == "degree":
        return _by_degree(hg)[:k_c]
    if method == "hypercoreness":
        core = t_hypercoreness(hg, t).values
        deg = hg.degrees()
        return sorted(range(hg.n_nodes), key=lambda v: (-core[v], -deg[v], v))[:k_c]
    if method == "greedy":
        if k_c == 0:
            return []
        g = GreedyCover(hg, t)
        g.add(_by_degree(hg)[0])
        while len(g.chosen) < k_c:
            g.add(g.best())
        return list(g.chosen)
    raise ValueError(f"unknown method {method!r}; expected one of {COVER_METHODS}")


def cover_sweep(
    hg: Hypergraph, t_c, k_values: Sequence[int] = tuple(range(10, 101, 10)), methods: Sequence[str] = COVER_METHODS
) -> List[Tuple[int, str, int, float]]:
    """Rows ``(k_c, method, covered, relative_to_degree)``.

    Greedy and ranking methods are prefix-consistent, so each method is run
    once at the largest budget and scored on prefixes.
    """
    ks = [k for k in k_values if k <= hg.n_nodes]
    if not ks:
        return []
    top = max(ks)
    picks = {m: cover_select(hg, top, t_c, m) for m in methods}
    if "degree" not in picks:
        picks["degree"] = cover_select(hg, top, t_c, "degree")
    rows = []
    for k in ks:
        base = covered_count(hg, picks["degree"][:k], t_c)
        for m in methods:
            c = covered_count(hg, picks[m][:k], t_c)
            rel = c / base if base else math.nan
            rows.append((k, m, c, rel))
    return rows
