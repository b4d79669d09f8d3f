"""Synchronous SIR spreading on hypergraphs and the seed-influence harness."""

from __future__ import annotations

import math
import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .analytics import pearson
from .core import format_fraction, parse_fraction, t_hypercoreness
from .hypergraph import Hypergraph, clique_expansion
from .variants import l_hypercoreness, nd_hypercoreness, neighbor_hypercoreness, pairwise_coreness

__all__ = [
    "REFERENCE_BETAS",
    "SirParams",
    "InfluenceReport",
    "hyper_sir",
    "run_rng",
    "mean_outbreak",
    "centrality_values",
    "influence_experiment",
    "select_best_t",
]

REFERENCE_BETAS = (0.05, 0.025, 0.01, 0.005, 0.0025)


@dataclass(frozen=True)
class SirParams:
    beta: float
    gamma: float = 1.0
    runs: int = 1000
    seed: int = 0

    def __post_init__(self):
        if not self.beta >= 0:
            raise ValueError("beta must be nonnegative")
        if not 0 < self.gamma <= 1:
            raise ValueError("gamma must lie in (0, 1]")
        if self.runs < 1:
            raise ValueError("runs must be positive")
        if 2 * self.beta > 1:
            warnings.warn(
                f"2*beta = {2 * self.beta:g} > 1; per-edge escape factors will be clamped to 0",
                stacklevel=2,
            )


def run_rng(seed: int, node: int, run: int) -> random.Random:
    """Independent stream per (global seed, seed node, run index)."""
    return random.Random(f"{seed}:{node}:{run}")


def hyper_sir(hg: Hypergraph, seed_node: int, beta: float, gamma: float, rng: random.Random) -> int:
    """One outbreak from ``seed_node``; returns the number of ever-infected nodes.

    Each round every susceptible node u starts with escape probability 1 and,
    for every edge e holding both infected and susceptible nodes, multiplies
    it by ``1 - 2*beta*|e & I| / D(e)`` (clamped to [0, 1]).  Infected nodes
    then recover with probability gamma, and afterwards each susceptible node
    becomes infected with probability ``1 - escape``.
    """
    if not 0 <= seed_node < hg.n_nodes:
        raise ValueError(f"seed node {seed_node} out of range")
    if gamma <= 0:
        raise ValueError("gamma must be positive for the process to terminate")
    edges = hg.edges
    size = hg.original_size
    inc = hg.incidence
    # 0 susceptible, 1 infected, 2 recovered
    state = bytearray(hg.n_nodes)
    state[seed_node] = 1
    infected = [seed_node]
    n_recovered = 0
    while infected:
        n_inf_in = {}
        for v in infected:
            for i in inc[v]:
                n_inf_in[i] = n_inf_in.get(i, 0) + 1
        escape: Dict[int, float] = {}
        for i, c in n_inf_in.items():
            f = 1.0 - 2.0 * beta * c / size[i]
            f = 0.0 if f < 0.0 else (1.0 if f > 1.0 else f)
            for u in edges[i]:
                if state[u] == 0:
                    escape[u] = escape.get(u, 1.0) * f
        still = []
        for v in infected:
            if gamma >= 1.0 or rng.random() < gamma:
                state[v] = 2
                n_recovered += 1
            else:
                still.append(v)
        for u in sorted(escape):
            if rng.random() < 1.0 - escape[u]:
                state[u] = 1
                still.append(u)
        still.sort()
        infected = still
    return n_recovered


def mean_outbreak(hg: Hypergraph, node: int, params: SirParams) -> float:
    total = 0
    for r in range(params.runs):
        total += hyper_sir(hg, node, params.beta, params.gamma, run_rng(params.seed, node, r))
    return total / params.runs


def _chunk_means(args) -> List[float]:
    hg, nodes, params = args
    return [mean_outbreak(hg, v, params) for v in nodes]


def _outbreaks(hg: Hypergraph, nodes: Sequence[int], params: SirParams, threads: int) -> List[float]:
    if threads <= 1 or len(nodes) < 2:
        return [mean_outbreak(hg, v, params) for v in nodes]
    size = math.ceil(len(nodes) / threads)
    chunks = [list(nodes[i : i + size]) for i in range(0, len(nodes), size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_chunk_means, [(hg, c, params) for c in chunks])
        return [x for part in parts for x in part]


def _minmax(values: Sequence[int]) -> List[float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.0] * len(values)
    return [(x - lo) / (hi - lo) for x in values]


def centrality_values(hg: Hypergraph, spec: str) -> Tuple[str, str, List[float]]:
    """Evaluate a centrality by name.

    Accepted names: ``t:<p/q>``, ``degree``, ``l:<int>`` (min-max normalized),
    ``nbr``, ``nd``, ``coreness-U`` and ``coreness-W``.  Returns
    ``(name, parameter, values)``.
    """
    name, _, arg = spec.partition(":")
    if name == "t":
        t = parse_fraction(arg)
        return "t-hypercoreness", format_fraction(t), [float(x) for x in t_hypercoreness(hg, t).values]
    if name == "degree":
        return "degree", "", [float(x) for x in hg.degrees()]
    if name == "l":
        l = int(arg)
        return "l-hypercoreness", str(l), _minmax(l_hypercoreness(hg, l))
    if name == "nbr":
        return "nbr-hypercoreness", "", [float(x) for x in neighbor_hypercoreness(hg)]
    if name == "nd":
        return "nd-hypercoreness", "", [float(x) for x in nd_hypercoreness(hg)]
    if name in ("coreness-U", "coreness-W"):
        weighted = name.endswith("W")
        g = clique_expansion(hg, weighted=weighted)
        return name, "", [float(x) for x in pairwise_coreness(g, weighted=weighted)]
    raise ValueError(f"unknown centrality {spec!r}")


@dataclass
class InfluenceReport:
    nodes: List[int]
    mean_r: List[float]
    params: SirParams
    # (centrality, parameter, pearson r); r is nan when undefined
    correlations: List[Tuple[str, str, float]] = field(default_factory=list)
    sample_frac: float = 1.0

    def r_of(self, name: str, param: str = "") -> float:
        for c, p, r in self.correlations:
            if c == name and p == param:
                return r
        raise KeyError((name, param))

    def best_t(self) -> Optional[Tuple[str, float]]:
        best = None
        for c, p, r in self.correlations:
            if c == "t-hypercoreness" and not math.isnan(r) and (best is None or r > best[1]):
                best = (p, r)
        return best

    def node_rows(self, hg: Hypergraph):
        labels = hg.labels
        for v, m in zip(self.nodes, self.mean_r):
            yield labels[v], m, self.params.runs


def _sample(n: int, frac: float, seed: int) -> List[int]:
    if not 0 < frac <= 1:
        raise ValueError("sample fraction must lie in (0, 1]")
    if frac == 1:
        return list(range(n))
    m = max(1, round(frac * n))
    return sorted(random.Random(f"{seed}:sample").sample(range(n), m))


def influence_experiment(
    hg: Hypergraph,
    params: SirParams,
    seed_fraction: float = 1.0,
    centralities: Sequence[str] = ("t:0", "t:1/2", "t:1", "degree"),
    threads: int = 1,
    nodes: Optional[Sequence[int]] = None,
) -> InfluenceReport:
    if nodes is None:
        nodes = _sample(hg.n_nodes, seed_fraction, params.seed)
    nodes = list(nodes)
    means = _outbreaks(hg, nodes, params, threads)
    report = InfluenceReport(nodes, means, params, [], seed_fraction)
    for spec in centralities:
        name, param, vals = centrality_values(hg, spec)
        xs = [vals[v] for v in nodes]
        r = pearson(xs, means) if len(nodes) >= 2 else math.nan
        if math.isnan(r):
            warnings.warn(f"correlation undefined for {name} {param}".rstrip(), stacklevel=2)
        report.correlations.append((name, param, r))
    return report


def select_best_t(
    hg: Hypergraph,
    params: SirParams,
    t_candidates: Sequence,
    sample_frac: float = 0.1,
    threads: int = 1,
) -> Tuple[str, float]:
    """Pick the t whose hypercoreness best tracks outbreak size on a node sample."""
    rep = influence_experiment(
        hg, params, sample_frac, [f"t:{format_fraction(parse_fraction(t))}" for t in t_candidates], threads
    )
    best = rep.best_t()
    if best is None:
        raise ValueError("no candidate t gave a defined correlation")
    return best
