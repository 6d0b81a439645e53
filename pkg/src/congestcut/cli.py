"""Command-line front end: graph generation, algorithm runs, JSON-line reports."""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from . import sim
from .distcut import (
    dist_approx_min_cut_full,
    dist_estimate_value,
    dist_exact_min_cut,
)
from .generators import generate, parse_spec
from .graph import Cut, Graph, GraphError, cut_weight, graph_to_text, read_edgelist
from .mst import dist_mst
from .onecut import one_respect_min_cut
from .oracle import OracleCapacityError, brute_force_mincut
from .seqcut import approx_min_cut, exact_min_cut
from .sim import CongestionError
from .tree import tree_from_edge_indices

ALGORITHMS = (
    "seq-approx",
    "seq-exact",
    "dist-approx",
    "dist-exact",
    "dist-value",
    "one-respect",
    "oracle",
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3
EXIT_BUDGET = 4


@dataclass
class ExperimentConfig:
    algorithm: str
    graph_path: Optional[str]
    gen_spec: Optional[str]
    eps: str
    seed: int
    trials: int
    max_rounds: Optional[int]
    congestion: int
    out: Optional[str]
    trace: Optional[str]
    verbose: bool


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"cannot parse rational {text!r}") from exc


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(graph_to_text(g).encode()).hexdigest()[:16]


def _load_graph(config: ExperimentConfig, seed: int) -> Graph:
    if config.graph_path:
        with open(config.graph_path) as fh:
            return read_edgelist(fh)
    assert config.gen_spec is not None
    return generate(parse_spec(config.gen_spec), seed)


def _oracle_weight(g: Graph) -> Optional[int]:
    try:
        return brute_force_mincut(g).weight
    except OracleCapacityError:
        return None


def _run_one(config: ExperimentConfig, trial: int) -> dict:
    seed = config.seed + trial
    g = _load_graph(config, seed)
    eps = parse_rational(config.eps)
    started = time.monotonic()
    record: dict = {
        "trial": trial,
        "graph_hash": graph_hash(g),
        "n": g.n,
        "m": g.m,
        "algorithm": config.algorithm,
        "seed": seed,
        "eps": str(eps),
    }
    cut: Optional[Cut] = None
    if config.algorithm == "seq-approx":
        cut, trace = approx_min_cut(g, eps, seed)
        record.update(levels=len(trace.levels), trees_packed=trace.trees_total)
    elif config.algorithm == "seq-exact":
        cut = exact_min_cut(g, seed)
    elif config.algorithm == "dist-approx":
        res = dist_approx_min_cut_full(g, eps, seed, budget=config.congestion)
        cut = res.cut
        record.update(
            rounds=res.report.rounds,
            max_msgs_per_edge=res.report.max_msgs_per_edge_per_round,
            levels=len(res.trace.levels),
            trees_per_level=[rec.trees_packed for rec in res.trace.levels],
        )
    elif config.algorithm == "dist-exact":
        cut, report = dist_exact_min_cut(g, seed, budget=config.congestion)
        record.update(rounds=report.rounds, max_msgs_per_edge=report.max_msgs_per_edge_per_round)
    elif config.algorithm == "dist-value":
        value, report = dist_estimate_value(g, eps, seed, budget=config.congestion)
        record.update(
            value=str(value),
            value_float=float(value),
            rounds=report.rounds,
            max_msgs_per_edge=report.max_msgs_per_edge_per_round,
        )
    elif config.algorithm == "one-respect":
        tree, _, rep_mst = dist_mst(g, [0] * g.m, seed=seed, budget=config.congestion)
        res = one_respect_min_cut(g, tree, seed=seed, budget=config.congestion)
        record.update(
            c_star=res.c_star,
            argmin_node=res.argmin,
            rounds=rep_mst.rounds + res.report.rounds,
            max_msgs_per_edge=max(
                rep_mst.max_msgs_per_edge_per_round,
                res.report.max_msgs_per_edge_per_round,
            ),
        )
        if config.verbose:
            record["per_node_cut_values"] = list(res.profile.cut_values)
    elif config.algorithm == "oracle":
        cut = brute_force_mincut(g)
    else:  # pragma: no cover - argparse restricts choices
        raise GraphError(f"unknown algorithm {config.algorithm}")

    if cut is not None:
        if cut_weight(g, cut.side) != cut.weight:
            raise GraphError("internal error: cut weight failed re-verification")
        record["weight"] = cut.weight
        record["side"] = sorted(cut.side)
        oracle = _oracle_weight(g) if config.algorithm != "oracle" else cut.weight
        if oracle is None:
            record["ratio_omitted"] = f"oracle capacity exceeded (n={g.n})"
        else:
            record["oracle_weight"] = oracle
            record["ratio"] = cut.weight / oracle if oracle else None
    record["wall_time"] = round(time.monotonic() - started, 6)
    return record


def run_experiment(config: ExperimentConfig, out=None) -> int:
    """Run the configured trials, emitting one JSON record per line plus a
    summary; returns the process exit code."""
    close_out = False
    if out is None:
        if config.out:
            out = open(config.out, "w")
            close_out = True
        else:
            out = sys.stdout
    trace_fh = None
    try:
        if config.trace:
            trace_fh = open(config.trace, "w")
            sim.TRACE_SINK = trace_fh
        records = []
        for trial in range(config.trials):
            rec = _run_one(config, trial)
            records.append(rec)
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        ratios = [r["ratio"] for r in records if r.get("ratio") is not None]
        rounds = [(r["n"], r["rounds"]) for r in records if "rounds" in r]
        summary: dict = {
            "summary": True,
            "config": asdict(config),
            "trials": len(records),
            "max_ratio": max(ratios) if ratios else None,
        }
        if len({n for n, _ in rounds}) >= 2:
            xs = [math.log(n) for n, _ in rounds]
            ys = [math.log(max(r, 1)) for _, r in rounds]
            mean_x = sum(xs) / len(xs)
            mean_y = sum(ys) / len(ys)
            denom = sum((x - mean_x) ** 2 for x in xs)
            summary["rounds_fit_exponent"] = (
                sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / denom
                if denom
                else None
            )
        out.write(json.dumps(summary, sort_keys=True) + "\n")
        return EXIT_OK
    finally:
        sim.TRACE_SINK = None
        if trace_fh is not None:
            trace_fh.close()
        if close_out:
            out.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mincut",
        description="Minimum-cut algorithms over a round-synchronous CONGEST simulator",
    )
    parser.add_argument("algorithm", choices=ALGORITHMS)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="edge-list file: header 'n m', lines 'u v w'")
    source.add_argument("--gen", help="generator spec, e.g. cycle:8 or planted:10,10,3,0.9")
    parser.add_argument("--eps", default="1", help="approximation parameter (rational, e.g. 1/2)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=1)
    parser.add_argument("--max-rounds", type=int, default=None)
    parser.add_argument("--congestion", type=int, default=1, help="per-edge per-round message budget")
    parser.add_argument("--out", help="write the JSON-lines report here instead of stdout")
    parser.add_argument("--trace", help="write per-message engine trace (JSON lines) to this file")
    parser.add_argument("--verbose", action="store_true")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    config = ExperimentConfig(
        algorithm=args.algorithm,
        graph_path=args.graph,
        gen_spec=args.gen,
        eps=args.eps,
        seed=args.seed,
        trials=args.trials,
        max_rounds=args.max_rounds,
        congestion=args.congestion,
        out=args.out,
        trace=args.trace,
        verbose=args.verbose,
    )
    try:
        return run_experiment(config)
    except OracleCapacityError as exc:
        print(f"oracle capacity: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except CongestionError as exc:
        print(f"bandwidth budget violated: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
