"""Bellman-Ford-Moore, Dijkstra, topological sorting and DAG shortest paths.

The DAG routines accept anything exposing ``n``, ``adj``, ``heads`` and
``weights`` (a :class:`Graph` or an admissible-subgraph view).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import pqueue
from .graph import (
    ContractViolation,
    Counters,
    DistanceLabels,
    Graph,
    NegativeCycleCertificate,
    SolveOutcome,
)


@dataclass
class TopoOrder:
    order: list[int] | None = None
    cycle_witness: list[int] | None = None

    @property
    def acyclic(self) -> bool:
        return self.order is not None


class CycleError(Exception):
    """Raised by DAG routines when the input has a directed cycle."""

    def __init__(self, witness: list[int]) -> None:
        super().__init__(f"directed cycle through vertices {witness}")
        self.witness = witness


def _walk_parents_to_cycle(
    parent: Sequence[int | None], tails: Sequence[int], v: int, n: int, steps: int | None = None
) -> list[int] | None:
    x = v
    for _ in range(n if steps is None else steps):
        a = parent[x]
        if a is None:
            return None
        x = tails[a]
    start = x
    cycle: list[int] = []
    while True:
        a = parent[x]
        if a is None:
            return None
        cycle.append(a)
        x = tails[a]
        if x == start:
            break
        if len(cycle) > n:
            return None
    cycle.reverse()
    return cycle


def _find_parent_cycle(parent: Sequence[int | None], tails: Sequence[int], n: int) -> list[int] | None:
    state = [0] * n  # 0 unvisited, 1 on current walk, 2 done
    for root in range(n):
        if state[root]:
            continue
        walk = []
        x = root
        while x is not None and state[x] == 0:
            state[x] = 1
            walk.append(x)
            a = parent[x]
            x = tails[a] if a is not None else None
        if x is not None and state[x] == 1:
            return _walk_parents_to_cycle(parent, tails, x, n, steps=0)
        for y in walk:
            state[y] = 2
    return None


def bellman_ford(
    g: Graph,
    s: int,
    *,
    strict: bool = False,
    counters: Counters | None = None,
) -> SolveOutcome:
    """Bellman-Ford-Moore from ``s``.

    With ``strict`` all n-1 rounds run even when a round changes nothing,
    matching the textbook scan count; otherwise the loop stops early when a
    round changes nothing or the parent pointers close a cycle. A negative
    cycle reachable from ``s`` is returned as a certificate.
    """
    n = g.n
    if not 0 <= s < n:
        raise ContractViolation(f"source {s} out of range")
    tails, heads, weights = g.tails, g.heads, g.weights
    m = len(tails)
    dist: list[int | None] = [None] * n
    parent: list[int | None] = [None] * n
    dist[s] = 0
    scans = 0
    changed = True
    for _ in range(n - 1):
        if not changed and not strict:
            break
        changed = False
        for a in range(m):
            du = dist[tails[a]]
            if du is None:
                continue
            v = heads[a]
            nd = du + weights[a]
            dv = dist[v]
            if dv is None or nd < dv:
                dist[v] = nd
                parent[v] = a
                changed = True
        scans += m
        if changed and not strict:
            # a cycle of parent pointers always has negative weight
            cycle = _find_parent_cycle(parent, tails, n)
            if cycle is not None:
                if counters is not None:
                    counters.relaxations += scans
                    counters.arc_scans += scans
                return SolveOutcome(cycle=NegativeCycleCertificate(tuple(cycle)))
    relaxed_vertex = None
    if changed:
        scans += m
        for a in range(m):
            du = dist[tails[a]]
            if du is None:
                continue
            v = heads[a]
            nd = du + weights[a]
            dv = dist[v]
            if dv is None or nd < dv:
                dist[v] = nd
                parent[v] = a
                relaxed_vertex = v
                break
    if counters is not None:
        counters.relaxations += scans
        counters.arc_scans += scans
    if relaxed_vertex is None:
        return SolveOutcome(labels=DistanceLabels(dist, parent))
    cycle = _walk_parents_to_cycle(parent, tails, relaxed_vertex, n)
    while cycle is None:
        # keep relaxing; the parent graph must close a (negative) cycle
        for a in range(m):
            du = dist[tails[a]]
            if du is None:
                continue
            v = heads[a]
            nd = du + weights[a]
            dv = dist[v]
            if dv is None or nd < dv:
                dist[v] = nd
                parent[v] = a
        cycle = _find_parent_cycle(parent, tails, n)
    return SolveOutcome(cycle=NegativeCycleCertificate(tuple(cycle)))


def dijkstra(
    g: Graph,
    s: int,
    *,
    heap: str = "binary",
    counters: Counters | None = None,
    trace: list[int] | None = None,
) -> DistanceLabels:
    """Dijkstra from ``s`` on a graph with nonnegative weights.

    ``trace``, when given, receives the extracted keys in order.
    """
    n = g.n
    if not 0 <= s < n:
        raise ContractViolation(f"source {s} out of range")
    heads, weights, adj = g.heads, g.weights, g.adj
    dist: list[int | None] = [None] * n
    parent: list[int | None] = [None] * n
    dist[s] = 0
    q = pqueue.build([s], dist, heap)  # type: ignore[arg-type]
    insert, decrease, extract = q.insert, q.decrease_key, q.extract_min
    done = [False] * n
    pops = scans = 0
    while len(q):
        u, du = extract()
        pops += 1
        done[u] = True
        if trace is not None:
            trace.append(du)
        for a in adj[u]:
            w = weights[a]
            if w < 0:
                raise ContractViolation(f"dijkstra met negative arc {a} (weight {w})")
            scans += 1
            v = heads[a]
            if done[v]:
                continue
            nd = du + w
            dv = dist[v]
            if dv is None:
                dist[v] = nd
                parent[v] = a
                insert(v, nd)
            elif nd < dv:
                dist[v] = nd
                parent[v] = a
                decrease(v, nd)
    if counters is not None:
        counters.extract_mins += pops
        counters.relaxations += scans
        counters.arc_scans += scans
    return DistanceLabels(dist, parent)


def topological_sort(g) -> TopoOrder:
    """Kahn's algorithm; vertices with no incoming arcs are taken smallest id first."""
    n, heads, adj = g.n, g.heads, g.adj
    indeg = [0] * n
    for u in range(n):
        for a in adj[u]:
            indeg[heads[a]] += 1
    ready = deque(u for u in range(n) if indeg[u] == 0)
    order: list[int] = []
    while ready:
        u = ready.popleft()
        order.append(u)
        for a in adj[u]:
            v = heads[a]
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    if len(order) == n:
        return TopoOrder(order=order)
    return TopoOrder(cycle_witness=_cycle_among_residual(g, indeg))


def _cycle_among_residual(g, indeg: list[int]) -> list[int]:
    # every vertex left with positive in-degree has a predecessor that is also left
    n, heads, adj = g.n, g.heads, g.adj
    pred: list[int | None] = [None] * n
    for u in range(n):
        if indeg[u] > 0:
            for a in adj[u]:
                v = heads[a]
                if indeg[v] > 0 and pred[v] is None:
                    pred[v] = u
    start = next(u for u in range(n) if indeg[u] > 0)
    seen: dict[int, int] = {}
    walk: list[int] = []
    x = start
    while x not in seen:
        seen[x] = len(walk)
        walk.append(x)
        p = pred[x]
        assert p is not None
        x = p
    cycle = walk[seen[x]:]
    cycle.reverse()
    return cycle


def acyclic_shortest_paths(g, sources: Iterable[tuple[int, int]], *, counters: Counters | None = None) -> DistanceLabels:
    """Shortest paths over a DAG from a set of ``(vertex, initial key)`` sources.

    Raises :class:`CycleError` if ``g`` is not acyclic.
    """
    topo = topological_sort(g)
    if topo.order is None:
        raise CycleError(topo.cycle_witness or [])
    heads, weights, adj = g.heads, g.weights, g.adj
    dist: list[int | None] = [None] * g.n
    parent: list[int | None] = [None] * g.n
    for v, key in sources:
        if dist[v] is None or key < dist[v]:
            dist[v] = key
    scans = 0
    for u in topo.order:
        du = dist[u]
        if du is None:
            continue
        for a in adj[u]:
            scans += 1
            v = heads[a]
            nd = du + weights[a]
            dv = dist[v]
            if dv is None or nd < dv:
                dist[v] = nd
                parent[v] = a
    if counters is not None:
        counters.relaxations += scans
        counters.arc_scans += scans
    return DistanceLabels(dist, parent)
