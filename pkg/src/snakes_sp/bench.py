"""Benchmark harness: one CSV row per (instance, algorithm) with operation counters."""

from __future__ import annotations

import csv
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable

from .classic import bellman_ford, dijkstra
from .dimacs import parse_dimacs
from .graph import Counters, Graph, NegativeCycleCertificate
from .snakes import ReweightState
from .solver import SolveConfig, reweight

ALGORITHMS = ("snakes-basic", "snakes-improved", "bellman-ford", "bellman-ford-strict", "dijkstra-if-nonnegative")
CSV_HEADER = ("name", "n", "m", "neg", "algo", "verdict", "iters", "c", "relaxations", "extract_mins", "ns", "seed")


@dataclass
class BenchRecord:
    name: str
    n: int
    m: int
    neg: int
    algo: str
    verdict: str  # shortest-paths | negative-cycle | inapplicable
    iters: int
    c: int
    relaxations: int
    extract_mins: int
    ns: int
    seed: int


@dataclass
class Instance:
    name: str
    graph: Graph
    source: int = 0
    seed: int = 0


def load_instances(directory: str | Path) -> list[Instance]:
    out = []
    for path in sorted(Path(directory).glob("*.gr")):
        g, s = parse_dimacs(path.read_bytes())
        out.append(Instance(path.stem, g, s or 0))
    return out


def run_algorithm(inst: Instance, algo: str) -> BenchRecord:
    g, s = inst.graph, inst.source
    counters = Counters()
    c = 1
    iters = 0
    t0 = time.perf_counter_ns()
    if algo in ("snakes-basic", "snakes-improved"):
        variant = "basic" if algo == "snakes-basic" else "improved"
        art = reweight(g, SolveConfig(variant=variant))
        if isinstance(art, NegativeCycleCertificate):
            verdict = "negative-cycle"
        else:
            counters = art.counters
            iters, c = art.iterations, art.c
            dijkstra(art.graph, s, counters=counters)
            verdict = "shortest-paths"
    elif algo in ("bellman-ford", "bellman-ford-strict"):
        outcome = bellman_ford(g, s, strict=algo.endswith("strict"), counters=counters)
        verdict = "negative-cycle" if outcome.has_cycle else "shortest-paths"
    elif algo == "dijkstra-if-nonnegative":
        if any(w < 0 for w in g.weights):
            verdict = "inapplicable"
        else:
            dijkstra(g, s, counters=counters)
            verdict = "shortest-paths"
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    ns = time.perf_counter_ns() - t0
    return BenchRecord(
        inst.name, g.n, g.m, sum(w < 0 for w in g.weights), algo, verdict,
        iters, c, counters.relaxations, counters.extract_mins, ns, inst.seed,
    )


def shadow_counts(inst: Instance, algo: str) -> tuple[int, int] | None:
    """Recount (relaxations, extract_mins) from phase snapshots, independently of the engine's tallies.

    Only defined for the snakes variants and Dijkstra; None otherwise.
    """
    g, s = inst.graph, inst.source
    if algo == "dijkstra-if-nonnegative":
        if any(w < 0 for w in g.weights):
            return (0, 0)
        labels = dijkstra(g, s)
        reached = [v for v in range(g.n) if labels.dist[v] is not None]
        return sum(len(g.adj[v]) for v in reached), len(reached)
    if algo not in ("snakes-basic", "snakes-improved"):
        return None
    relax = pops = 0

    def observer(phase: str, state: ReweightState) -> None:
        nonlocal relax, pops
        wg, d, w = state.g, state.d, state.weights
        if phase == "before_expand":
            relax += sum(
                1 for a in range(wg.m) if w[a] + d[wg.tails[a]] - d[wg.heads[a]] <= 0
            )
        elif phase == "before_connect":
            relax += wg.m
            pops += wg.n

    variant = "basic" if algo == "snakes-basic" else "improved"
    art = reweight(g, SolveConfig(variant=variant), observer=observer)
    if isinstance(art, NegativeCycleCertificate):
        return None
    labels = dijkstra(art.graph, s)
    reached = [v for v in range(g.n) if labels.dist[v] is not None]
    return relax + sum(len(g.adj[v]) for v in reached), pops + len(reached)


def bench_run(
    instances: Iterable[Instance],
    algorithms: Iterable[str],
    output: str | Path | None = None,
) -> list[BenchRecord]:
    algos = list(algorithms)
    for a in algos:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    records = [run_algorithm(inst, algo) for inst in instances for algo in algos]
    if output is not None:
        write_csv(records, output)
    return records


def write_csv(records: Iterable[BenchRecord], output: str | Path) -> None:
    assert tuple(f.name for f in fields(BenchRecord)) == CSV_HEADER
    with open(output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        for r in records:
            writer.writerow(asdict(r))
