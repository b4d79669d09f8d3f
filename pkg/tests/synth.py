"""Seeded synthetic hypergraphs with heavy-tailed degrees and edge sizes."""

import random
from fractions import Fraction

from hypercore.core import kt_hypercore
from hypercore.hypergraph import Hypergraph


def heavy_tailed_hypergraph(n_nodes, n_edges, seed, max_size=12, exponent=0.5):
    rng = random.Random(seed)
    weights = [1.0 / (i + 1) ** exponent for i in range(n_nodes)]
    nodes = list(range(n_nodes))
    rng.shuffle(nodes)
    sizes = range(2, max_size + 1)
    size_w = [1.0 / s**2 for s in sizes]
    edges = []
    for _ in range(n_edges):
        s = rng.choices(sizes, size_w)[0]
        e = set()
        while len(e) < s:
            e.add(nodes[rng.choices(range(n_nodes), weights)[0]])
        edges.append(sorted(e))
    return Hypergraph.from_edges(edges, dedup=True)


def random_small(rng, max_nodes=12, max_edges=8, max_size=None):
    n = rng.randint(2, max_nodes)
    m = rng.randint(1, max_edges)
    top = min(n, max_size or n)
    edges = [rng.sample(range(n), rng.randint(2, top)) for _ in range(m)]
    return Hypergraph.from_edges(edges)


def small_cores(seed, count, min_size=3):
    """Random (hg, k, t) whose (k, t)-hypercore has at least ``min_size`` nodes."""
    rng = random.Random(seed)
    t_choices = [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    out = []
    while len(out) < count:
        hg = random_small(rng, max_nodes=12, max_edges=14, max_size=5)
        k, t = rng.randint(1, 3), rng.choice(t_choices)
        if len(kt_hypercore(hg, k, t).nodes) >= min_size:
            out.append((hg, k, t))
    return out
