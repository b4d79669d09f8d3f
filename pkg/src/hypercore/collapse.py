"""Collapsed (k, t)-hypercore: pick b nodes whose removal shrinks the core most.

Three strategies share one engine:

* ``hyperckc`` tries every candidate collapser each round;
* ``hycom`` tries at most ``n_c`` candidates, highest degree first;
* ``hycom_plus`` ranks candidates by direct-follower count and keeps the
  endangered-edge map up to date incrementally instead of rebuilding it.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .core import CoreResult, PeelState, edge_thresholds, format_fraction, parse_fraction
from .hypergraph import Hypergraph

__all__ = [
    "METHODS",
    "EndangeredMap",
    "rebuild_endangered",
    "update_endangered",
    "direct_followers",
    "best_collapser",
    "CollapseRound",
    "CollapseResult",
    "Collapser",
    "collapse",
]

METHODS = ("hyperckc", "hycom", "hycom_plus")

# unordered node pair (u < v) -> alive edges holding both at exactly threshold size
EndangeredMap = Dict[Tuple[int, int], Set[int]]


def _add_pairs(emap: EndangeredMap, members: List[int], i: int) -> None:
    for a in range(len(members)):
        u = members[a]
        for b in range(a + 1, len(members)):
            emap.setdefault((u, members[b]), set()).add(i)


def _drop_pairs(emap: EndangeredMap, members: List[int], i: int) -> None:
    for a in range(len(members)):
        u = members[a]
        for b in range(a + 1, len(members)):
            key = (u, members[b])
            s = emap.get(key)
            if s is not None:
                s.discard(i)
                if not s:
                    del emap[key]


def _state_endangered(st: PeelState) -> EndangeredMap:
    emap: EndangeredMap = {}
    alive = st.node_alive
    for i, e in enumerate(st.hg.edges):
        if st.edge_alive[i] and st.size[i] == st.thr[i]:
            _add_pairs(emap, [u for u in e if alive[u]], i)
    return emap


def _thresholds_for(core: CoreResult) -> List[int]:
    if core.t is None:
        raise ValueError("core carries no t; pass thresholds explicitly")
    return edge_thresholds(core.parent, core.t)


def rebuild_endangered(core: CoreResult, thr: Optional[List[int]] = None) -> EndangeredMap:
    """Endangered map of ``core`` computed from scratch."""
    thr = _thresholds_for(core) if thr is None else thr
    emap: EndangeredMap = {}
    edges = core.parent.edges
    for i in sorted(core.edges):
        members = [u for u in edges[i] if u in core.nodes]
        if len(members) == thr[i]:
            _add_pairs(emap, members, i)
    return emap


def _apply_delta(hg, thr, removed: Set[int], killed: Iterable[int], node_alive, edge_alive, emap) -> None:
    touched = set(killed)
    for v in removed:
        touched.update(i for i in hg.incidence[v] if edge_alive(i))
    for i in touched:
        e = hg.edges[i]
        old = [u for u in e if node_alive(u) or u in removed]
        if len(old) == thr[i]:
            _drop_pairs(emap, old, i)
        if edge_alive(i):
            new = [u for u in e if node_alive(u)]
            if len(new) == thr[i]:
                _add_pairs(emap, new, i)


def update_endangered(
    old: CoreResult, new: CoreResult, emap: EndangeredMap, thr: Optional[List[int]] = None
) -> EndangeredMap:
    """Bring ``emap`` (valid for ``old``) in line with the nested core ``new``.

    Only edges that lost members are revisited.  ``emap`` is modified in place
    and returned.
    """
    if not new.nodes <= old.nodes or not new.edges <= old.edges:
        raise ValueError("cores are not nested")
    thr = _thresholds_for(old) if thr is None else thr
    removed = set(old.nodes - new.nodes)
    killed = old.edges - new.edges
    _apply_delta(old.parent, thr, removed, killed, new.nodes.__contains__, new.edges.__contains__, emap)
    return emap


def direct_followers(st: PeelState, emap: EndangeredMap) -> Dict[int, Set[int]]:
    """``F[v]``: nodes that drop below degree k as soon as ``v`` is removed."""
    k, deg = st.k, st.deg
    out: Dict[int, Set[int]] = {}
    for (u, v), s in emap.items():
        c = len(s)
        if c > deg[u] - k:
            out.setdefault(v, set()).add(u)
        if c > deg[v] - k:
            out.setdefault(u, set()).add(v)
    return out


@dataclass
class _Choice:
    node: Optional[int]
    state: Optional[PeelState] = None
    removed: List[int] = field(default_factory=list)
    killed: List[int] = field(default_factory=list)
    trials: List[Tuple[int, int]] = field(default_factory=list)
    candidates: List[int] = field(default_factory=list)


def best_collapser(st: PeelState, emap: EndangeredMap, n_c: int = -1, use_followers: bool = False) -> _Choice:
    """Trial-remove the top candidates and keep the one leaving the smallest core.

    ``n_c = -1`` evaluates every candidate.  Nodes that disappear in a trial
    are dropped from the candidate list: their own removal cannot beat the
    trial that removed them, because it leaves a superset of that trial's core.
    Returns a choice with ``node=None`` when there are no candidates.
    """
    if n_c == 0 or n_c < -1:
        raise ValueError("n_c must be positive or -1")
    fol = direct_followers(st, emap)
    deg = st.deg
    if use_followers:
        order = sorted(fol, key=lambda v: (-len(fol[v]), -deg[v], v))
    else:
        order = sorted(fol, key=lambda v: (-deg[v], v))
    choice = _Choice(None, candidates=list(order))
    dropped: Set[int] = set()
    best_size = st.hg.n_nodes + 1
    evaluated = 0
    for v0 in order:
        if n_c != -1 and evaluated >= n_c:
            break
        if v0 in dropped:
            continue
        trial = st.copy()
        removed, killed = trial.remove_node(v0)
        evaluated += 1
        choice.trials.append((v0, trial.n_alive))
        if trial.n_alive < best_size:
            best_size = trial.n_alive
            choice.node, choice.state, choice.removed, choice.killed = v0, trial, removed, killed
        dropped.update(removed)
    return choice


@dataclass(frozen=True)
class CollapseRound:
    round: int
    collapser: int
    reduction: int
    ms: float
    fallback: bool = False


@dataclass
class CollapseResult:
    hg: Hypergraph
    k: int
    t: Fraction
    method: str
    n_c: int
    initial_size: int
    final_core: CoreResult
    rounds: List[CollapseRound]

    @property
    def collapsers(self) -> List[int]:
        return [r.collapser for r in self.rounds]

    @property
    def total_reduction(self) -> int:
        return sum(r.reduction for r in self.rounds)

    @property
    def total_ms(self) -> float:
        return sum(r.ms for r in self.rounds)

    def round_rows(self):
        labels = self.hg.labels
        for r in self.rounds:
            yield r.round, labels[r.collapser], r.reduction, r.ms

    def summary(self) -> Tuple[str, int, str, int, int, float]:
        return (self.method, self.k, format_fraction(self.t), len(self.rounds), self.total_reduction, self.total_ms)


class Collapser:
    """Round-by-round driver; ``step()`` performs one round and exposes state."""

    def __init__(self, hg: Hypergraph, k: int, t, method: str = "hycom_plus", n_c: Optional[int] = None):
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
        self.hg = hg
        self.k = k
        self.t = parse_fraction(t)
        self.method = method
        if method == "hyperckc":
            n_c = -1
        elif n_c is None:
            n_c = 1
        self.n_c = n_c
        self.use_followers = method == "hycom_plus"
        self.incremental = method == "hycom_plus"
        self.thr = edge_thresholds(hg, self.t)
        self.state = PeelState(hg, self.thr, k)
        self.state.start()
        self.initial_size = self.state.n_alive
        if self.initial_size == 0:
            raise ValueError(f"the ({k}, {format_fraction(self.t)})-hypercore is empty")
        self.emap: Optional[EndangeredMap] = None
        self.rounds: List[CollapseRound] = []
        self.last_choice: Optional[_Choice] = None

    @property
    def core(self) -> CoreResult:
        return self.state.to_core(self.t)

    def step(self) -> Optional[CollapseRound]:
        st = self.state
        if st.n_alive == 0:
            return None
        t0 = time.perf_counter()
        if self.emap is None or not self.incremental:
            self.emap = _state_endangered(st)
        choice = best_collapser(st, self.emap, self.n_c, self.use_followers)
        fallback = choice.node is None
        if fallback:
            v = max((u for u in range(self.hg.n_nodes) if st.node_alive[u]), key=lambda u: (st.deg[u], -u))
            choice.node = v
            choice.state = st.copy()
            choice.removed, choice.killed = choice.state.remove_node(v)
        before = st.n_alive
        new = choice.state
        if self.incremental:
            _apply_delta(
                self.hg,
                self.thr,
                set(choice.removed),
                choice.killed,
                new.node_alive.__getitem__,
                new.edge_alive.__getitem__,
                self.emap,
            )
        self.state = new
        ms = (time.perf_counter() - t0) * 1000.0
        self.last_choice = choice
        rnd = CollapseRound(len(self.rounds) + 1, choice.node, before - new.n_alive - 1, ms, fallback)
        self.rounds.append(rnd)
        return rnd

    def run(self, b: int) -> CollapseResult:
        if b < 1:
            raise ValueError("budget b must be positive")
        for _ in range(b):
            if self.step() is None:
                warnings.warn(
                    f"core exhausted after {len(self.rounds)} of {b} rounds; budget truncated", stacklevel=2
                )
                break
        return self.result()

    def result(self) -> CollapseResult:
        return CollapseResult(
            self.hg, self.k, self.t, self.method, self.n_c, self.initial_size, self.core, list(self.rounds)
        )


def collapse(hg: Hypergraph, k: int, t, b: int, method: str = "hycom_plus", n_c: Optional[int] = None) -> CollapseResult:
    return Collapser(hg, k, t, method, n_c).run(b)
