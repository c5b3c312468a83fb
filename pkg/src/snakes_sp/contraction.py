"""Admissible subgraphs, strongly connected components and zero-cycle contraction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import ContractViolation, Graph, NegativeCycleCertificate


class AdmissibleSubgraph:
    """Arcs of ``graph`` whose reduced weight under ``d`` is nonpositive.

    Shares ``heads``/``tails``/``weights`` with the parent graph so DAG
    routines can run on it directly; ``adj`` is restricted to the subset.
    """

    __slots__ = ("graph", "n", "arcs", "adj", "heads", "tails", "weights")

    def __init__(self, graph: Graph, arcs: list[int]) -> None:
        self.graph = graph
        self.n = graph.n
        self.arcs = arcs
        self.heads = graph.heads
        self.tails = graph.tails
        self.weights = graph.weights
        adj: list[list[int]] = [[] for _ in range(graph.n)]
        tails = graph.tails
        for a in arcs:
            adj[tails[a]].append(a)
        self.adj = adj


def admissible_subgraph(g: Graph, d: Sequence[int] | None = None) -> AdmissibleSubgraph:
    tails, heads, weights = g.tails, g.heads, g.weights
    if d is None:
        arcs = [a for a, w in enumerate(weights) if w <= 0]
    else:
        if len(d) != g.n:
            raise ContractViolation("potential vector length differs from n")
        arcs = [a for a in range(g.m) if weights[a] + d[tails[a]] - d[heads[a]] <= 0]
    return AdmissibleSubgraph(g, arcs)


def strongly_connected_components(sub) -> list[int]:
    """Iterative Tarjan. Returns a component id per vertex.

    Components are numbered in the order Tarjan completes them, which is a
    reverse topological order of the condensation.
    """
    n, heads, adj = sub.n, sub.heads, sub.adj
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            out = adj[v]
            if i < len(out):
                work[-1] = (v, i + 1)
                w = heads[out[i]]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


@dataclass
class ContractionMap:
    """Surjection from vertices of a graph onto super-vertices.

    ``arcs[i]`` is the parent-graph arc id behind arc ``i`` of the
    contracted graph.
    """

    to_super: list[int]
    members: list[list[int]]
    arcs: list[int]

    @classmethod
    def identity(cls, g: Graph) -> ContractionMap:
        return cls(list(range(g.n)), [[v] for v in range(g.n)], list(range(g.m)))

    @property
    def is_bijection(self) -> bool:
        return all(len(ms) == 1 for ms in self.members)

    def compose(self, then: ContractionMap) -> ContractionMap:
        """Map through ``self`` first, then through ``then``."""
        to_super = [then.to_super[x] for x in self.to_super]
        members: list[list[int]] = [[] for _ in then.members]
        for v, x in enumerate(to_super):
            members[x].append(v)
        return ContractionMap(to_super, members, [self.arcs[a] for a in then.arcs])


def expand_potentials(cmap: ContractionMap, d_super: Sequence[int]) -> list[int]:
    return [d_super[x] for x in cmap.to_super]


def _path_within(sub: AdmissibleSubgraph, comp: list[int], src: int, dst: int) -> list[int]:
    """BFS over admissible arcs staying inside ``comp[src]``; returns arc ids."""
    target_comp = comp[src]
    heads = sub.heads
    via: dict[int, int | None] = {src: None}
    queue = deque([src])
    while queue and dst not in via:
        u = queue.popleft()
        for a in sub.adj[u]:
            v = heads[a]
            if comp[v] == target_comp and v not in via:
                via[v] = a
                queue.append(v)
    path: list[int] = []
    x = dst
    while x != src:
        a = via[x]
        assert a is not None
        path.append(a)
        x = sub.tails[a]
    path.reverse()
    return path


def contract_zero_cycles(
    g: Graph, d: Sequence[int] | None = None
) -> tuple[Graph, ContractionMap] | NegativeCycleCertificate:
    """Contract the strongly connected components of the admissible subgraph.

    A strictly negative admissible arc inside a component closes a negative
    cycle; its certificate is returned instead. Otherwise every component
    becomes one super-vertex, arcs inside a component are dropped and the
    remaining arcs keep their reduced weight under ``d``.
    """
    n = g.n
    pot = d if d is not None else [0] * n
    sub = admissible_subgraph(g, d)
    comp = strongly_connected_components(sub)
    tails, heads, weights = g.tails, g.heads, g.weights
    for a in sub.arcs:
        u, v = tails[a], heads[a]
        if comp[u] == comp[v] and weights[a] + pot[u] - pot[v] < 0:
            back = _path_within(sub, comp, v, u) if u != v else []
            return NegativeCycleCertificate(tuple([a] + back))

    # number super-vertices by smallest member so a bijection keeps ids
    relabel: dict[int, int] = {}
    to_super = [0] * n
    for v in range(n):
        to_super[v] = relabel.setdefault(comp[v], len(relabel))
    members: list[list[int]] = [[] for _ in relabel]
    for v in range(n):
        members[to_super[v]].append(v)
    kept: list[int] = []
    arcs: list[tuple[int, int, int]] = []
    for a in range(g.m):
        x, y = to_super[tails[a]], to_super[heads[a]]
        if x == y:
            continue
        kept.append(a)
        arcs.append((x, y, weights[a] + pot[tails[a]] - pot[heads[a]]))
    return Graph(len(members), arcs, check_magnitude=False), ContractionMap(to_super, members, kept)
