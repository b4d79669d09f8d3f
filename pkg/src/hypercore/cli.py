"""Command-line front end: ``hypercore <subcommand> [options] INPUT...``.

Every flag can also be set through an environment variable named
``HYPERCORE_<FLAG>`` (for example ``HYPERCORE_SEED=7``); explicit flags win.
Data goes to ``--out`` or stdout, and warnings plus the one-line summary go to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import analytics, cover as cover_mod, sir as sir_mod
from .collapse import collapse as run_collapse
from .core import NO_FRACTION, format_fraction, k_fraction, kt_hypercore, parse_fraction, t_hypercoreness
from .hypergraph import (
    Hypergraph,
    HypergraphFormatError,
    largest_connected_component,
    load_hyperedge_list,
    load_nverts_simplices,
    stats,
    upscale,
)

log = logging.getLogger("hypercore")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BAD_T = 3
EXIT_MISSING = 4
EXIT_DATA = 5

ENV_PREFIX = "HYPERCORE_"


class BadT(Exception):
    pass


class Output:
    """Tabular result with optional JSON document and summary line."""

    def __init__(self, header: Sequence[str], rows: List[Sequence[Any]], doc: Any = None, summary: str = ""):
        self.header = list(header)
        self.rows = rows
        self.doc = doc
        self.summary = summary


def fmt_cell(x: Any) -> str:
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, float):
        return "nan" if math.isnan(x) else format(x, ".6g")
    return str(x)


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, float):
        return None if math.isnan(x) else float(format(x, ".6g"))
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        doc = out.doc if out.doc is not None else [dict(zip(out.header, r)) for r in out.rows]
        return json.dumps(_jsonable(doc), sort_keys=False) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(out.header)
        for r in out.rows:
            w.writerow([fmt_cell(x) for x in r])
    else:
        for r in out.rows:
            buf.write(" ".join(fmt_cell(x) for x in r) + "\n")
    return buf.getvalue()


def parse_t(text: str) -> Fraction:
    try:
        t = parse_fraction(text)
    except ValueError as exc:
        raise BadT(str(exc)) from exc
    s = str(text).strip()
    if "/" not in s and s not in ("0", "1"):
        warnings.warn(f"t={s} read as decimal; using {format_fraction(t)}", stacklevel=2)
    return t


def load_input(path: str, dedup: bool = True) -> Hypergraph:
    """Load a hyperedge list, a ``name-nverts.txt`` pair, a directory holding
    such a pair, or a JSON document with an ``edges`` list of label lists."""
    p = Path(path)
    if p.is_dir():
        nv = p / f"{p.name}-nverts.txt"
        sp = p / f"{p.name}-simplices.txt"
        if not nv.exists() or not sp.exists():
            raise FileNotFoundError(f"{p}: expected {nv.name} and {sp.name}")
        return load_nverts_simplices(nv, sp, dedup=dedup)
    if not p.exists():
        raise FileNotFoundError(str(p))
    if p.name.endswith("-nverts.txt"):
        return load_nverts_simplices(p, p.with_name(p.name.replace("-nverts.txt", "-simplices.txt")), dedup=dedup)
    if p.suffix == ".json":
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
            edges = doc["edges"]
        except (ValueError, KeyError, TypeError) as exc:
            raise HypergraphFormatError(f"{p}: not a JSON document with an 'edges' list") from exc
        # a saved core keeps parallel edges; no deduplication here
        return Hypergraph.from_edges(edges)
    return load_hyperedge_list(p, dedup=dedup)


def _name(path: str) -> str:
    return Path(path).stem.replace("-nverts", "")


def _t_grid(n: int) -> List[Fraction]:
    if n < 2:
        return [Fraction(0)]
    return [Fraction(j, n - 1) for j in range(n)]


# subcommands ---------------------------------------------------------------


def cmd_stats(a) -> Output:
    hg = load_input(a.inputs[0], dedup=not a.keep_parallel)
    s = stats(hg)
    rows = [(k, v) for k, v in s.items() if k != "cardinality"]
    rows.append(("avg_degree_2dp", f"{float(s['avg_degree']):.2f}"))
    rows.append(("avg_edge_size_2dp", f"{float(s['avg_edge_size']):.2f}"))
    doc = dict(s)
    doc["cardinality"] = {str(k): v for k, v in s["cardinality"].items()}
    summary = (
        f"|V|={s['n_nodes']} |E|={s['n_edges']} d={s['max_degree']}/{float(s['avg_degree']):.2f} "
        f"|e|={s['max_edge_size']}/{float(s['avg_edge_size']):.2f}"
    )
    return Output(("stat", "value"), rows, doc, summary)


def cmd_core(a) -> Output:
    hg = load_input(a.inputs[0])
    t = parse_t(a.t)
    core = kt_hypercore(hg, a.k, t)
    rows = [(i, " ".join(e)) for i, e in zip(sorted(core.edges), core.edge_label_sets())]
    summary = f"({a.k},{format_fraction(t)})-hypercore: {len(core.nodes)} nodes, {len(core.edges)} edges"
    out = Output(("edge_index", "members"), rows, core.to_dict(), summary)
    out.txt_lines = [" ".join(e) for e in core.edge_label_sets()]
    return out


def cmd_coreness(a) -> Output:
    hg = load_input(a.inputs[0])
    t = parse_t(a.t)
    cv = t_hypercoreness(hg, t)
    rows = [(hg.labels[v], c) for v, c in enumerate(cv.values)]
    doc = {"t": t, "coreness": {hg.labels[v]: c for v, c in enumerate(cv.values)}}
    return Output(("node", "coreness"), rows, doc, f"t={format_fraction(t)} max coreness {cv.max}")


def cmd_fraction(a) -> Output:
    hg = load_input(a.inputs[0])
    fv = k_fraction(hg, a.k)
    rows = [(hg.labels[v], f) for v, f in enumerate(fv.values)]
    doc = {"k": a.k, "k_fraction": {hg.labels[v]: f for v, f in enumerate(fv.values)}}
    mx = fv.max
    return Output(("node", "k_fraction"), rows, doc, f"k={a.k} max k-fraction {format_fraction(mx)}")


def cmd_landscape(a) -> Output:
    hg = load_input(a.inputs[0])
    land = analytics.core_size_landscape(hg, _t_grid(a.grid))
    rows = list(land.rows())
    return Output(("k", "t", "size", "n_tilde"), rows, None, f"c0*={land.c0_star}, {len(land.t_grid)} t values")


def _distance_matrix(a, fn) -> Output:
    if len(a.inputs) < 2:
        raise ValueError("need at least two inputs")
    names = [_name(p) for p in a.inputs]
    hgs = [load_input(p) for p in a.inputs]
    n = len(hgs)
    d = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = fn(hgs[i], hgs[j], a.grid)
    rows = [[names[i]] + d[i] for i in range(n)]
    doc = {"names": names, "distance": d}
    return Output([""] + names, rows, doc, f"{names[0]} vs {names[1]}: {d[0][1]:.6g}")


def cmd_hsmd(a) -> Output:
    return _distance_matrix(a, analytics.hsmd)


def cmd_rdmd(a) -> Output:
    return _distance_matrix(a, analytics.rdmd)


def cmd_infogain(a) -> Output:
    hg = load_input(a.inputs[0])
    t = parse_t(a.t)
    g = analytics.information_gain(hg, t)
    return Output(("t", "information_gain"), [(t, g)], {"t": t, "information_gain": g}, f"gain {g:.6g} bits")


def cmd_powerlaw(a) -> Output:
    hg = load_input(a.inputs[0])
    t = parse_t(a.t)
    counts = analytics.survivor_counts(t_hypercoreness(hg, t).values)
    fit = analytics.loglog_powerlaw_fit(counts)
    row = (t, fit["slope"], fit["intercept"], fit["r_squared"])
    return Output(("t", "slope", "intercept", "r_squared"), [row], {"t": t, **fit}, f"R^2={fit['r_squared']:.4f}")


def _sir_params(a) -> sir_mod.SirParams:
    return sir_mod.SirParams(a.beta, a.gamma, a.runs, a.seed)


def cmd_sir(a) -> Output:
    hg = load_input(a.inputs[0])
    params = _sir_params(a)
    if a.node is not None:
        nodes = [hg.node_id(a.node)]
    else:
        nodes = sir_mod._sample(hg.n_nodes, a.sample_frac, a.seed)
    means = sir_mod._outbreaks(hg, nodes, params, a.threads)
    rows = [(hg.labels[v], m, params.runs) for v, m in zip(nodes, means)]
    return Output(("node", "mean_R", "runs"), rows, None, f"{len(nodes)} seed nodes x {params.runs} runs")


def cmd_influence(a) -> Output:
    hg = load_input(a.inputs[0])
    if not a.whole:
        hg = largest_connected_component(hg)
    params = _sir_params(a)
    cents = a.centrality or ["t:0", "t:1/2", "t:2/3", "t:1", "degree"]
    rep = sir_mod.influence_experiment(hg, params, a.sample_frac, cents, a.threads)
    rows = [(c, p, r) for c, p, r in rep.correlations]
    best = rep.best_t()
    summary = f"best t {best[0]} r={best[1]:.4f}" if best else "no t centrality evaluated"
    return Output(("centrality", "param", "pearson_r"), rows, None, summary)


def cmd_cover(a) -> Output:
    hg = load_input(a.inputs[0])
    t = parse_t(a.t)
    if a.k is not None:
        methods = [a.method] if a.method else list(cover_mod.COVER_METHODS)
        rows = []
        for m in methods:
            sel = cover_mod.cover_select(hg, a.k, t, m)
            rows.append((a.k, m, cover_mod.covered_count(hg, sel, t), " ".join(hg.labels[v] for v in sel)))
        return Output(("k_c", "method", "covered", "nodes"), rows, None, f"t_c={format_fraction(t)} k_c={a.k}")
    rows = cover_mod.cover_sweep(hg, t)
    return Output(("k_c", "method", "covered", "relative_to_degree"), rows, None, f"t_c={format_fraction(t)} sweep")


def cmd_collapse(a) -> Output:
    hg = load_input(a.inputs[0])
    t = parse_t(a.t)
    method = (a.method or "hycom_plus").replace("-", "_").replace("+", "_plus").lower()
    res = run_collapse(hg, a.k, t, a.b, method, a.nc)
    rows = list(res.round_rows())
    m, k, ts, b, red, ms = res.summary()
    summary = f"{m},{k},{ts},{b},{red},{ms:.6g}"
    doc = {
        "method": m,
        "k": k,
        "t": ts,
        "b": b,
        "collapsers": [hg.labels[v] for v in res.collapsers],
        "rounds": [dict(zip(("round", "collapser", "reduction", "ms"), r)) for r in rows],
        "total_reduction": red,
        "total_ms": ms,
    }
    return Output(("round", "collapser", "reduction", "ms"), rows, doc, summary)


def _write_edges(hg: Hypergraph) -> Output:
    out = Output(("edge",), [(" ".join(hg.edge_labels(i)),) for i in range(hg.n_edges)], None, "")
    out.txt_lines = [" ".join(hg.edge_labels(i)) for i in range(hg.n_edges)]
    return out


def cmd_upscale(a) -> Output:
    hg = load_input(a.inputs[0])
    up = upscale(hg, a.factor)
    out = _write_edges(up)
    out.summary = f"{hg.n_edges} -> {up.n_edges} edges (x{a.factor})"
    return out


def cmd_lcc(a) -> Output:
    hg = load_input(a.inputs[0])
    sub = largest_connected_component(hg)
    out = _write_edges(sub)
    out.summary = f"largest component: {sub.n_nodes} of {hg.n_nodes} nodes, {sub.n_edges} edges"
    return out


COMMANDS = {
    "stats": (cmd_stats, "dataset statistics"),
    "core": (cmd_core, "(k,t)-hypercore"),
    "coreness": (cmd_coreness, "t-hypercoreness of every node"),
    "fraction": (cmd_fraction, "k-fraction of every node"),
    "landscape": (cmd_landscape, "core sizes over a (k,t) grid"),
    "hsmd": (cmd_hsmd, "core-size landscape distance"),
    "rdmd": (cmd_rdmd, "top-core relative density distance"),
    "infogain": (cmd_infogain, "information gain of coreness over degree"),
    "powerlaw-fit": (cmd_powerlaw, "log-log fit of coreness survivor counts"),
    "sir": (cmd_sir, "mean outbreak size per seed node"),
    "influence": (cmd_influence, "centrality vs outbreak size correlations"),
    "cover": (cmd_cover, "max (k_c,t_c) vertex cover heuristics"),
    "collapse": (cmd_collapse, "collapsed (k,t)-hypercore"),
    "upscale": (cmd_upscale, "repeat every hyperedge"),
    "lcc": (cmd_lcc, "largest connected component"),
}

# flag -> (type, default, help)
FLAGS = {
    "k": (int, None, "node degree threshold k (or cover budget k_c)"),
    "t": (str, "0", "edge fraction t as p/q (decimals are approximated)"),
    "l": (int, 2, "absolute edge size floor l"),
    "b": (int, 10, "collapse budget"),
    "nc": (int, None, "max candidates per collapse round (-1: all)"),
    "method": (str, None, "cover or collapse method"),
    "beta": (float, 0.01, "SIR transmission rate"),
    "gamma": (float, 1.0, "SIR recovery rate"),
    "runs": (int, 1000, "SIR runs per seed node"),
    "seed": (int, 0, "global RNG seed"),
    "sample-frac": (float, 1.0, "fraction of seed nodes to simulate"),
    "grid": (int, 101, "grid resolution"),
    "threads": (int, 1, "worker processes"),
    "factor": (int, 2, "upscale factor"),
}


def _env_default(flag: str, default):
    return os.environ.get(ENV_PREFIX + flag.replace("-", "_").upper(), default)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag, (typ, default, help_) in FLAGS.items():
        common.add_argument(f"--{flag}", type=typ, default=_env_default(flag, default), help=help_)
    common.add_argument(
        "--format", choices=("csv", "json", "txt"), default=_env_default("format", None), help="output format"
    )
    common.add_argument("--out", default=_env_default("out", None), help="output file (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hypercore", description="(k,t)-hypercore toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("inputs", nargs="+" if name in ("hsmd", "rdmd") else 1, metavar="INPUT")
        if name == "stats":
            p.add_argument("--keep-parallel", action="store_true", help="do not merge parallel hyperedges")
        if name == "sir":
            p.add_argument("--node", default=None, help="single seed node label")
        if name == "influence":
            p.add_argument("--centrality", action="append", help="t:p/q, degree, l:N, nbr, nd, coreness-U, coreness-W")
            p.add_argument("--whole", action="store_true", help="skip the largest-component restriction")
    return parser


def _check_required(a) -> None:
    need_k = {"core", "fraction", "collapse"}
    if a.command in need_k and a.k is None:
        raise SystemExit(f"hypercore {a.command}: --k is required")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if a.verbose else logging.WARNING, stream=sys.stderr)
    try:
        _check_required(a)
    except SystemExit as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    fn = COMMANDS[a.command][0]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            out = fn(a)
        except BadT as exc:
            code, msg = EXIT_BAD_T, f"invalid t: {exc}"
        except FileNotFoundError as exc:
            code, msg = EXIT_MISSING, f"missing input: {exc}"
        except (HypergraphFormatError, ValueError, KeyError, OverflowError) as exc:
            code, msg = EXIT_DATA, f"data error: {exc}"
        else:
            code, msg = EXIT_OK, ""
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    if code:
        print(f"hypercore {a.command}: {msg}", file=sys.stderr)
        return code
    fmt = a.format or ("json" if a.command == "core" else "txt" if a.command in ("upscale", "lcc") else "csv")
    if fmt == "txt" and hasattr(out, "txt_lines"):
        text = "".join(line + "\n" for line in out.txt_lines)
    else:
        text = render(out, fmt)
    if a.out:
        with open(a.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if out.summary:
        print(out.summary, file=sys.stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
