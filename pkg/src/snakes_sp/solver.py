"""End-to-end solving: reweight, final Dijkstra, distance recovery, checking."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .classic import bellman_ford, dijkstra
from .graph import (
    ContractViolation,
    Counters,
    DistanceLabels,
    Graph,
    NegativeCycleCertificate,
    SolveOutcome,
    is_closed_chain,
)
from .snakes import NegativeCycleFound, ReweightState, run_snakes

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveConfig:
    variant: str = "basic"  # basic | improved
    heap: str = "binary"  # binary | pairing
    contraction: bool = True
    record_counters: bool = True
    strict_bound: bool = False

    def __post_init__(self) -> None:
        if self.variant not in ("basic", "improved"):
            raise ContractViolation(f"unknown variant {self.variant!r}")
        if self.heap not in ("binary", "pairing"):
            raise ContractViolation(f"unknown heap {self.heap!r}")


@dataclass
class ReweightArtifact:
    """Nonnegative reweighting of the original graph.

    ``graph`` keeps the original arc ids; ``potentials[v]`` is the total
    potential applied to ``v`` so that
    ``graph.weights[a] == original + potentials[u] - potentials[v]``.
    """

    graph: Graph
    potentials: list[int]
    iterations: int
    c: int
    counters: Counters = field(default_factory=Counters)
    cap_exceeded: bool = False
    contractions: int = 0


def reweight(g: Graph, cfg: SolveConfig = SolveConfig(), observer=None) -> ReweightArtifact | NegativeCycleCertificate:
    counters = Counters()
    if g.m == 0 or all(w >= 0 for w in g.weights):
        return ReweightArtifact(g, [0] * g.n, 0, 1, counters)
    try:
        state = ReweightState.start(
            g, variant=cfg.variant, heap=cfg.heap, contraction=cfg.contraction, observer=observer
        )
    except NegativeCycleFound as found:
        return _checked(g, found.certificate)
    cert = run_snakes(state, strict_bound=cfg.strict_bound)
    if cert is not None:
        return _checked(g, cert)
    final = state.final_weights()
    if any(w < 0 for w in final):
        raise RuntimeError("reweighting finished with a negative arc")
    return ReweightArtifact(
        graph=g.with_weights(final),
        potentials=list(state.cumulative),
        iterations=state.iterations,
        c=state.c,
        counters=state.counters,
        cap_exceeded=state.cap_exceeded,
        contractions=state.contractions,
    )


def _checked(g: Graph, cert: NegativeCycleCertificate) -> NegativeCycleCertificate:
    if not verify_certificate(g, cert):
        raise RuntimeError(f"emitted an invalid negative-cycle certificate {cert.arcs}")
    return cert


def reachable_subgraph(g: Graph, s: int) -> tuple[Graph, list[int], list[int]]:
    """Induced subgraph on vertices reachable from ``s``.

    Returns the subgraph, the original id of each sub-vertex and the
    original id of each sub-arc.
    """
    seen = [False] * g.n
    seen[s] = True
    order = [s]
    for u in order:
        for a in g.adj[u]:
            v = g.heads[a]
            if not seen[v]:
                seen[v] = True
                order.append(v)
    vertices = sorted(order)
    index = {v: i for i, v in enumerate(vertices)}
    arc_ids = [a for a in range(g.m) if seen[g.tails[a]]]
    sub = Graph(
        len(vertices),
        ((index[g.tails[a]], index[g.heads[a]], g.weights[a]) for a in arc_ids),
        check_magnitude=False,
    )
    return sub, vertices, arc_ids


def solve_sssp(g: Graph, s: int, cfg: SolveConfig = SolveConfig()) -> SolveOutcome:
    """Shortest paths from ``s`` via snakes reweighting plus one Dijkstra.

    Only the part of the graph reachable from ``s`` is reweighted, so a
    negative cycle is reported exactly when one is reachable from ``s``.
    """
    if not 0 <= s < g.n:
        raise ContractViolation(f"source {s} out of range")
    sub, vertices, arc_ids = reachable_subgraph(g, s)
    s_sub = vertices.index(s)
    art = reweight(sub, cfg)
    if isinstance(art, NegativeCycleCertificate):
        cert = NegativeCycleCertificate(tuple(arc_ids[a] for a in art.arcs))
        return SolveOutcome(cycle=_checked(g, cert))
    counters = art.counters
    red = dijkstra(art.graph, s_sub, heap=cfg.heap, counters=counters)
    D = art.potentials
    dist: list[int | None] = [None] * g.n
    parent: list[int | None] = [None] * g.n
    for i, v in enumerate(vertices):
        dr = red.dist[i]
        if dr is None:
            continue
        dist[v] = dr - D[s_sub] + D[i]
        p = red.parent[i]
        parent[v] = arc_ids[p] if p is not None else None
    stats = counters.as_dict() if cfg.record_counters else {}
    stats.update(c=art.c, cap_exceeded=int(art.cap_exceeded), contractions=art.contractions)
    return SolveOutcome(labels=DistanceLabels(dist, parent), stats=stats)


def verify_certificate(g: Graph, cert: NegativeCycleCertificate) -> bool:
    return is_closed_chain(g, cert.arcs) and sum(g.weights[a] for a in cert.arcs) < 0


def tree_is_tight(g: Graph, s: int, labels: DistanceLabels) -> bool:
    """Parent arcs are tight, reach back to ``s`` and contain no cycle."""
    dist, parent = labels.dist, labels.parent
    if dist[s] != 0 or parent[s] is not None:
        return False
    for v in range(g.n):
        a = parent[v]
        if a is None:
            if v != s and dist[v] is not None:
                return False
            continue
        u = g.tails[a]
        if g.heads[a] != v or dist[u] is None or dist[v] != dist[u] + g.weights[a]:
            return False
    depth = [-1] * g.n
    depth[s] = 0
    for v in range(g.n):
        walk = []
        x = v
        while dist[x] is not None and depth[x] < 0:
            walk.append(x)
            if len(walk) > g.n:
                return False
            x = g.tails[parent[x]]  # type: ignore[index]
        for y in reversed(walk):
            depth[y] = 0
    return True


def triangle_inequality_holds(g: Graph, labels: DistanceLabels) -> bool:
    dist = labels.dist
    for u, v, w in g.arcs():
        if dist[u] is not None and (dist[v] is None or dist[v] > dist[u] + w):
            return False
    return True


@dataclass
class CheckResult:
    ok: bool
    reason: str = ""
    outcome: SolveOutcome | None = None
    oracle: SolveOutcome | None = None

    def __bool__(self) -> bool:
        return self.ok


def differential_check(
    g: Graph,
    s: int,
    cfg: SolveConfig = SolveConfig(),
    corpus_dir: str | Path | None = None,
    tag: str = "",
    oracle: SolveOutcome | None = None,
) -> CheckResult:
    """Compare :func:`solve_sssp` against Bellman-Ford.

    ``oracle`` may carry a precomputed Bellman-Ford outcome for ``(g, s)``.
    On mismatch the instance is written to ``corpus_dir`` (when given).
    """
    if oracle is None:
        oracle = bellman_ford(g, s)
    try:
        outcome = solve_sssp(g, s, cfg)
    except Exception as exc:  # mismatch is data here
        result = CheckResult(False, f"solver raised {exc!r}", None, oracle)
        _persist(g, s, cfg, result, corpus_dir, tag)
        return result
    result = _compare(g, s, outcome, oracle)
    if not result.ok:
        _persist(g, s, cfg, result, corpus_dir, tag)
    return result


def _compare(g: Graph, s: int, outcome: SolveOutcome, oracle: SolveOutcome) -> CheckResult:
    def bad(reason: str) -> CheckResult:
        return CheckResult(False, reason, outcome, oracle)

    if outcome.has_cycle != oracle.has_cycle:
        return bad(f"verdict: solver cycle={outcome.has_cycle}, oracle cycle={oracle.has_cycle}")
    if outcome.cycle is not None:
        if not verify_certificate(g, outcome.cycle):
            return bad("solver certificate invalid")
        if not verify_certificate(g, oracle.cycle):  # type: ignore[arg-type]
            return bad("oracle certificate invalid")
        return CheckResult(True, "", outcome, oracle)
    assert outcome.labels is not None and oracle.labels is not None
    for v, (a, b) in enumerate(zip(outcome.labels.dist, oracle.labels.dist)):
        if a != b:
            return bad(f"dist[{v}]: solver {a}, oracle {b}")
    if not tree_is_tight(g, s, outcome.labels):
        return bad("solver tree not tight")
    if not tree_is_tight(g, s, oracle.labels):
        return bad("oracle tree not tight")
    return CheckResult(True, "", outcome, oracle)


def _persist(g: Graph, s: int, cfg: SolveConfig, result: CheckResult, corpus_dir, tag: str) -> None:
    if corpus_dir is None:
        return
    from .dimacs import write_dimacs

    out = Path(corpus_dir)
    out.mkdir(parents=True, exist_ok=True)
    data = write_dimacs(g, source=s)
    stem = f"mismatch_{tag or 'instance'}_{hashlib.sha1(data).hexdigest()[:12]}"
    (out / f"{stem}.gr").write_bytes(data)
    (out / f"{stem}.json").write_text(
        json.dumps({"reason": result.reason, "source": s, "variant": cfg.variant, "heap": cfg.heap}, indent=2)
    )
    log.error("differential mismatch persisted to %s: %s", out / stem, result.reason)


def sources_agree(g: Graph, sources: Sequence[int], cfg: SolveConfig = SolveConfig()) -> bool:
    """One reweighting artifact serves every source."""
    art = reweight(g, cfg)
    if isinstance(art, NegativeCycleCertificate):
        return verify_certificate(g, art)
    for s in sources:
        red = dijkstra(art.graph, s)
        oracle = bellman_ford(g, s)
        if oracle.labels is None:
            return False
        for v in range(g.n):
            dr = red.dist[v]
            got = None if dr is None else dr - art.potentials[s] + art.potentials[v]
            if got != oracle.labels.dist[v]:
                return False
    return True
