"""Structural analytics over core decompositions.

Core-size landscapes and the HSMD distance, top-core density profiles and
the RDMD distance, information gain of coreness over degree, Pearson
correlation, and log-log power-law fits of coreness survivor counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats as sp_stats

from .core import parse_fraction, t_hypercoreness
from .hypergraph import Hypergraph

__all__ = [
    "CoreSizeLandscape",
    "DensityProfile",
    "midpoint_grid",
    "core_size_landscape",
    "hsmd",
    "density_profile",
    "rdmd",
    "information_gain",
    "pearson",
    "survivor_counts",
    "loglog_powerlaw_fit",
]


def midpoint_grid(resolution: int) -> List[Fraction]:
    """Cell midpoints ``(2j+1) / (2*resolution)`` of a uniform partition of [0, 1]."""
    if resolution < 1:
        raise ValueError("resolution must be positive")
    return [Fraction(2 * j + 1, 2 * resolution) for j in range(resolution)]


@dataclass(frozen=True)
class CoreSizeLandscape:
    """Normalized core sizes ``n_tilde[j][k-1]`` for ``t_grid[j]`` and k = 1..c0_star.

    ``n_tilde`` is ``log_|V| |V(C_{k,t})|`` and -1 for an empty core.
    """

    n_nodes: int
    c0_star: int
    t_grid: Tuple[Fraction, ...]
    sizes: Tuple[Tuple[int, ...], ...]
    n_tilde: Tuple[Tuple[float, ...], ...]

    def k_of(self, x: float) -> int:
        """Normalizer: map x in [0, 1] to ``ceil(c0_star ** x)``."""
        return min(max(math.ceil(self.c0_star ** x - 1e-12), 1), self.c0_star)

    def rows(self):
        for j, t in enumerate(self.t_grid):
            for k in range(1, self.c0_star + 1):
                yield k, t, self.sizes[j][k - 1], self.n_tilde[j][k - 1]


def _normalized(size: int, n: int) -> float:
    if size == 0:
        return -1.0
    return math.log(size) / math.log(n)


def core_size_landscape(hg: Hypergraph, t_grid: Sequence) -> CoreSizeLandscape:
    n = hg.n_nodes
    if n <= 1:
        raise ValueError("landscape needs at least two nodes")
    grid = tuple(parse_fraction(t) for t in t_grid)
    if not grid:
        raise ValueError("empty t grid")
    c0 = t_hypercoreness(hg, 0).max
    sizes = []
    for t in grid:
        per_k = t_hypercoreness(hg, t).core_sizes()
        row = tuple(per_k[k - 1] if k <= len(per_k) else 0 for k in range(1, c0 + 1))
        sizes.append(row)
    n_tilde = tuple(tuple(_normalized(s, n) for s in row) for row in sizes)
    return CoreSizeLandscape(n, c0, grid, tuple(sizes), n_tilde)


def hsmd(h1: Hypergraph, h2: Hypergraph, grid_resolution: int = 101) -> float:
    """Hypercore-size-mean-difference distance, midpoint rule on both axes."""
    grid = midpoint_grid(grid_resolution)
    l1 = core_size_landscape(h1, grid)
    l2 = core_size_landscape(h2, grid)
    xs = [float(x) for x in grid]
    k1 = [l1.k_of(x) - 1 for x in xs]
    k2 = [l2.k_of(x) - 1 for x in xs]
    a = np.asarray(l1.n_tilde)[:, k1]
    b = np.asarray(l2.n_tilde)[:, k2]
    d = np.minimum(np.abs(a - b), 1.0)
    return float(math.sqrt(float(np.mean(d * d))))


@dataclass(frozen=True)
class DensityProfile:
    """Relative density of the top (c_t*, t)-hypercore along ``t_grid``.

    ``truncated_at`` is the first grid index whose top core was empty (never
    happens for hypergraphs whose nodes all have degree >= 1); entries from
    there on are dropped.
    """

    t_grid: Tuple[Fraction, ...]
    relative_density: Tuple[float, ...]
    top_k: Tuple[int, ...]
    truncated_at: Optional[int] = None


def density_profile(hg: Hypergraph, t_grid: Sequence) -> DensityProfile:
    if hg.n_nodes == 0 or hg.n_edges == 0:
        raise ValueError("density of an empty hypergraph is undefined")
    base = hg.n_edges / hg.n_nodes
    grid = tuple(parse_fraction(t) for t in t_grid)
    rel, tops = [], []
    truncated = None
    for j, t in enumerate(grid):
        cv = t_hypercoreness(hg, t)
        top = cv.core(cv.max) if cv.max > 0 else None
        if top is None or not top.nodes or not top.edges:
            truncated = j
            break
        rel.append((len(top.edges) / len(top.nodes)) / base)
        tops.append(cv.max)
    return DensityProfile(grid[: len(rel)], tuple(rel), tuple(tops), truncated)


def rdmd(h1: Hypergraph, h2: Hypergraph, grid_resolution: int = 101) -> float:
    """Relative-density-mean-difference distance (natural log, midpoint rule).

    If either profile had to be truncated, the integral runs over the common
    prefix only.
    """
    grid = midpoint_grid(grid_resolution)
    p1 = density_profile(h1, grid)
    p2 = density_profile(h2, grid)
    m = min(len(p1.relative_density), len(p2.relative_density))
    if m == 0:
        raise ValueError("no grid point with a nonempty top core")
    a = np.log(np.asarray(p1.relative_density[:m]))
    b = np.log(np.asarray(p2.relative_density[:m]))
    return float(math.sqrt(float(np.sum((a - b) ** 2)) / grid_resolution))


def _entropy(counts, n: int) -> float:
    h = 0.0
    for c in counts:
        if c:
            p = c / n
            h -= p * math.log2(p)
    return h


def information_gain(hg: Hypergraph, t=None, *, coreness: Optional[Sequence[int]] = None) -> float:
    """Joint entropy of (degree, coreness) minus the degree entropy, in bits.

    By default the coreness is the t-hypercoreness; any other per-node
    sequence can be supplied through ``coreness``.
    """
    n = hg.n_nodes
    if n == 0:
        raise ValueError("empty hypergraph")
    if coreness is None:
        if t is None:
            raise ValueError("need t or an explicit coreness sequence")
        coreness = t_hypercoreness(hg, t).values
    degs = hg.degrees()
    joint = Counter(zip(degs, coreness))
    marg = Counter(degs)
    return max(_entropy(joint.values(), n) - _entropy(marg.values(), n), 0.0)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation; ``nan`` when either side has zero variance."""
    if len(x) != len(y):
        raise ValueError("sequences differ in length")
    if len(x) < 2:
        raise ValueError("need at least two observations")
    a = np.asarray(x, dtype=float)
    b = np.asarray(y, dtype=float)
    a = a - a.mean()
    b = b - b.mean()
    sa = float(np.dot(a, a))
    sb = float(np.dot(b, b))
    if sa == 0.0 or sb == 0.0:
        return math.nan
    r = float(np.dot(a, b)) / math.sqrt(sa * sb)
    return max(-1.0, min(1.0, r))


def survivor_counts(values: Sequence[int]) -> List[int]:
    """``out[k-1]`` = number of entries >= k for k = 1..max(values)."""
    top = max(values, default=0)
    hist = Counter(values)
    out = []
    running = 0
    for k in range(top, 0, -1):
        running += hist.get(k, 0)
        out.append(running)
    return out[::-1]


def loglog_powerlaw_fit(counts: Sequence[float]) -> Dict[str, float]:
    """Least-squares line through ``(log k, log counts[k-1])``.

    Points with a zero count are skipped.  Returns slope, intercept (natural
    logs) and R^2.
    """
    pts = [(math.log(k), math.log(c)) for k, c in enumerate(counts, 1) if c > 0]
    if len(pts) < 2:
        raise ValueError("need at least two positive counts")
    xs, ys = zip(*pts)
    if np.ptp(ys) == 0:
        return {"slope": 0.0, "intercept": ys[0], "r_squared": 1.0}
    fit = sp_stats.linregress(xs, ys)
    return {"slope": float(fit.slope), "intercept": float(fit.intercept), "r_squared": float(fit.rvalue**2)}
