"""The snakes reweighting loop: Expand, Connect and Adjust-Weights.

The engine works on a *working graph* whose vertices are super-vertices of
the original graph (zero cycles contracted) and whose arcs carry their
current, already-adjusted weights. Per original vertex it accumulates the
total potential ``D`` so that, at every iteration boundary,

    current weight(u, v) == original weight(u, v) + D[u] - D[v].
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from . import pqueue
from .classic import CycleError, bellman_ford
from .contraction import ContractionMap, contract_zero_cycles
from .graph import ContractViolation, Counters, Graph, NegativeCycleCertificate

log = logging.getLogger(__name__)

Observer = Callable[[str, "ReweightState"], None]


class NegativeCycleFound(Exception):
    def __init__(self, certificate: NegativeCycleCertificate) -> None:
        super().__init__("negative cycle")
        self.certificate = certificate


class BoundExceeded(RuntimeError):
    """Iteration cap passed on an instance that has no negative cycle."""

    def __init__(self, state: ReweightState) -> None:
        super().__init__(
            f"{state.variant} snakes used more than {state.cap} iterations "
            f"on a negative-cycle-free graph (n={state.original.n}, m={state.original.m})"
        )
        self.state = state


@dataclass(frozen=True)
class Snake:
    head: int
    length: int


def expansion_repeat_count(n: int, m: int) -> int:
    """``ceil(n log2 n / m)``, at least 1."""
    if n < 1 or m < 1:
        raise ContractViolation("expansion_repeat_count needs n >= 1 and m >= 1")
    # exact integer ceiling of n*log2(n)/m, avoiding float rounding at powers of two
    if n & (n - 1) == 0:
        num = n * (n.bit_length() - 1)
        return max(1, -(-num // m))
    return max(1, math.ceil(n * math.log2(n) / m))


def iteration_cap(n: int, variant: str, c: int = 1) -> int:
    """The proven iteration bound plus one."""
    if variant == "basic":
        return math.ceil(math.sqrt(2 * n)) + 1
    return math.ceil(math.sqrt(2 * n / c)) + 1


def iteration_bound(n: int, variant: str, c: int = 1) -> int:
    return iteration_cap(n, variant, c) - 1


@dataclass
class ReweightState:
    original: Graph
    g: Graph  # working topology over super-vertices
    weights: list[int]  # current weight per working arc
    cmap: ContractionMap  # original -> working
    d: list[int]
    cumulative: list[int]  # D per original vertex
    variant: str = "basic"
    heap: str = "binary"
    contraction: bool = True
    c: int = 1
    cap: int = 0
    iterations: int = 0
    counters: Counters = field(default_factory=Counters)
    contractions: int = 0
    cap_exceeded: bool = False
    connect_keys: list[int] | None = None
    observer: Observer | None = None

    @classmethod
    def start(
        cls,
        g: Graph,
        *,
        variant: str = "basic",
        heap: str = "binary",
        contraction: bool = True,
        observer: Observer | None = None,
    ) -> ReweightState:
        if variant not in ("basic", "improved"):
            raise ContractViolation(f"unknown variant {variant!r}")
        c = expansion_repeat_count(g.n, g.m) if (variant == "improved" and g.m) else 1
        state = cls(
            original=g,
            g=g,
            weights=list(g.weights),
            cmap=ContractionMap.identity(g),
            d=[0] * g.n,
            cumulative=[0] * g.n,
            variant=variant,
            heap=heap,
            contraction=contraction,
            c=c,
            cap=iteration_cap(g.n, variant, c),
            observer=observer,
        )
        if contraction:
            state.recontract()
        return state

    def current_graph(self) -> Graph:
        return self.g.with_weights(self.weights)

    def original_arc(self, a: int) -> int:
        return self.cmap.arcs[a]

    def final_weights(self) -> list[int]:
        """Current weight of every original arc: original + D[u] - D[v]."""
        g, D = self.original, self.cumulative
        return [w + D[u] - D[v] for u, v, w in zip(g.tails, g.heads, g.weights)]

    def notify(self, phase: str) -> None:
        if self.observer is not None:
            self.observer(phase, self)

    def bake(self) -> bool:
        """Fold ``d`` into the weights and ``D``; zero ``d``. Returns True if a negative arc remains."""
        d, weights = self.d, self.weights
        tails, heads = self.g.tails, self.g.heads
        negative = False
        for a in range(len(weights)):
            w = weights[a] + d[tails[a]] - d[heads[a]]
            weights[a] = w
            if w < 0:
                negative = True
        D = self.cumulative
        for v, x in enumerate(self.cmap.to_super):
            D[v] += d[x]
        self.d = [0] * self.g.n
        self.counters.arc_scans += len(weights)
        return negative

    def recontract(self) -> None:
        """Contract zero cycles of the working graph's admissible subgraph (``d`` must be zero)."""
        if any(self.d):
            raise ContractViolation("recontract requires zero potentials; bake first")
        result = contract_zero_cycles(self.current_graph())
        self.counters.arc_scans += self.g.m
        if isinstance(result, NegativeCycleCertificate):
            raise NegativeCycleFound(self.lift_cycle(list(result.arcs)))
        new_g, step = result
        if step.is_bijection and new_g.m == self.g.m:
            return
        self.contractions += 1
        log.debug("contracted %d -> %d vertices", self.g.n, new_g.n)
        self.cmap = self.cmap.compose(step)
        self.g = Graph(new_g.n, zip(new_g.tails, new_g.heads, [0] * new_g.m), check_magnitude=False)
        self.weights = list(new_g.weights)
        self.d = [0] * new_g.n

    def lift_cycle(self, working_arcs: list[int]) -> NegativeCycleCertificate:
        """Turn a closed walk of working arcs into a closed walk of original arcs.

        Consecutive arcs meeting in a contracted super-vertex are joined by a
        path of zero-weight original arcs inside that super-vertex.
        """
        g = self.original
        to_super = self.cmap.to_super
        current = self.final_weights()
        orig = [self.cmap.arcs[a] for a in working_arcs]
        lifted: list[int] = []
        for i, a in enumerate(orig):
            lifted.append(a)
            nxt = orig[(i + 1) % len(orig)]
            src, dst = g.heads[a], g.tails[nxt]
            if src != dst:
                lifted.extend(_zero_path(g, current, to_super, src, dst))
        return NegativeCycleCertificate(tuple(lifted))


def _zero_path(g: Graph, current: list[int], to_super: list[int], src: int, dst: int) -> list[int]:
    comp = to_super[src]
    via: dict[int, int] = {}
    queue = deque([src])
    seen = {src}
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for a in g.adj[u]:
            v = g.heads[a]
            if v not in seen and to_super[v] == comp and current[a] == 0:
                seen.add(v)
                via[v] = a
                queue.append(v)
    if dst not in seen:
        raise RuntimeError(f"no zero-weight path {src}->{dst} inside a contracted component")
    path = []
    x = dst
    while x != src:
        a = via[x]
        path.append(a)
        x = g.tails[a]
    path.reverse()
    return path


def expand(state: ReweightState) -> None:
    """Shortest paths over the admissible subgraph, relaxing ``d`` in topological order.

    Raises :class:`CycleError` when the admissible subgraph has a cycle.
    """
    g, d, weights = state.g, state.d, state.weights
    tails, heads = g.tails, g.heads
    n = g.n
    adj: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a in range(len(weights)):
        u, v = tails[a], heads[a]
        if weights[a] + d[u] - d[v] <= 0:
            adj[u].append(a)
            indeg[v] += 1
    state.counters.arc_scans += len(weights)
    ready = deque(u for u in range(n) if indeg[u] == 0 and adj[u])
    order: list[int] = []
    while ready:
        u = ready.popleft()
        order.append(u)
        for a in adj[u]:
            v = heads[a]
            indeg[v] -= 1
            if indeg[v] == 0 and adj[v]:
                ready.append(v)
    if any(indeg[v] > 0 and adj[v] for v in range(n)):
        raise CycleError([v for v in range(n) if indeg[v] > 0 and adj[v]])
    state.notify("before_expand")
    scans = 0
    for u in order:
        du = d[u]
        for a in adj[u]:
            scans += 1
            v = heads[a]
            nd = du + weights[a]
            if nd < d[v]:
                d[v] = nd
    state.counters.relaxations += scans


def expand_unordered(state: ReweightState) -> None:
    """One relaxation pass over the admissible arcs in arc-id order.

    Used only when contraction is disabled and the admissible subgraph has a cycle.
    """
    g, d, weights = state.g, state.d, state.weights
    tails, heads = g.tails, g.heads
    admissible = [a for a in range(len(weights)) if weights[a] + d[tails[a]] - d[heads[a]] <= 0]
    state.notify("before_expand")
    for a in admissible:
        nd = d[tails[a]] + weights[a]
        if nd < d[heads[a]]:
            d[heads[a]] = nd
    state.counters.arc_scans += len(weights)
    state.counters.relaxations += len(admissible)


def connect(state: ReweightState) -> None:
    """Dijkstra over the nonnegative arcs with the heap seeded by the current ``d``."""
    g, d, weights = state.g, state.d, state.weights
    heads, adj = g.heads, g.adj
    q = pqueue.build(range(g.n), d, state.heap)
    extract, decrease = q.extract_min, q.decrease_key
    keys: list[int] | None = [] if state.connect_keys is not None else None
    done = [False] * g.n
    scans = 0
    for _ in range(g.n):
        u, du = extract()
        done[u] = True
        if keys is not None:
            keys.append(du)
        for a in adj[u]:
            w = weights[a]
            scans += 1
            if w < 0:
                continue
            v = heads[a]
            nd = du + w
            if nd < d[v]:
                if done[v]:
                    raise ContractViolation("connect lowered a scanned vertex")
                d[v] = nd
                decrease(v, nd)
    state.counters.extract_mins += g.n
    state.counters.relaxations += scans
    if keys is not None:
        state.connect_keys = keys


def adjust_weights(state: ReweightState) -> bool:
    """Replace weights by reduced weights, accumulate ``D`` and reset ``d``.

    Returns True if any working arc is still negative.
    """
    return state.bake()


def has_negative_weight(state: ReweightState) -> bool:
    return any(w < 0 for w in state.weights)


def _expand_once(state: ReweightState) -> None:
    while True:
        try:
            expand(state)
            return
        except CycleError:
            if not state.contraction:
                expand_unordered(state)
                return
            # fold the partial potentials in, then contract the new zero cycles
            state.bake()
            state.recontract()


def step(state: ReweightState) -> bool:
    """One iteration: Expand (c times for the improved variant), Connect, Adjust-Weights."""
    repeats = state.c if state.variant == "improved" else 1
    for _ in range(repeats):
        _expand_once(state)
        state.notify("after_expand")
    state.notify("before_connect")
    connect(state)
    state.notify("after_connect")
    negative = adjust_weights(state)
    state.iterations += 1
    state.counters.iterations = state.iterations
    state.notify("after_adjust")
    return negative


def _confirm_negative_cycle(state: ReweightState) -> NegativeCycleCertificate | None:
    """Bellman-Ford from a virtual source joined to every working vertex by a zero arc."""
    g = state.g
    n = g.n
    arcs = list(zip(g.tails, g.heads, state.weights))
    aug = Graph(n + 1, arcs + [(n, v, 0) for v in range(n)], check_magnitude=False)
    outcome = bellman_ford(aug, n, counters=state.counters)
    if outcome.cycle is None:
        return None
    return state.lift_cycle(list(outcome.cycle.arcs))


def run_snakes(state: ReweightState, *, strict_bound: bool = False) -> NegativeCycleCertificate | None:
    """Loop until the working graph has no negative arcs.

    Returns None on success or a certificate on the original graph. When the
    iteration cap is reached a Bellman-Ford pass decides: a negative cycle is
    returned; otherwise the overrun is flagged on the state (and raised as
    :class:`BoundExceeded` if ``strict_bound``) and the loop continues.
    """
    try:
        negative = has_negative_weight(state)
        state.counters.arc_scans += len(state.weights)
        while negative:
            if state.iterations >= state.cap and not state.cap_exceeded:
                cert = _confirm_negative_cycle(state)
                if cert is not None:
                    return cert
                state.cap_exceeded = True
                log.warning(
                    "iteration cap %d reached without a negative cycle (n=%d, m=%d)",
                    state.cap, state.original.n, state.original.m,
                )
                if strict_bound:
                    raise BoundExceeded(state)
            negative = step(state)
            log.debug("iteration %d done", state.iterations)
    except NegativeCycleFound as found:
        return found.certificate
    return None


def trace_snakes(g: Graph) -> list[Snake]:
    """Every negative arc with 1 + the longest zero-weight chain ending at its tail.

    Raises :class:`CycleError` if the zero-weight arcs contain a cycle.
    """
    n = g.n
    zero_in: list[list[int]] = [[] for _ in range(n)]
    zero_out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, (u, v, w) in enumerate(zip(g.tails, g.heads, g.weights)):
        if w == 0:
            zero_in[v].append(u)
            zero_out[u].append(v)
            indeg[v] += 1
    longest = [0] * n
    ready = deque(v for v in range(n) if indeg[v] == 0)
    seen = 0
    while ready:
        u = ready.popleft()
        seen += 1
        for v in zero_out[u]:
            if longest[u] + 1 > longest[v]:
                longest[v] = longest[u] + 1
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    if seen != n:
        raise CycleError([v for v in range(n) if indeg[v] > 0])
    return [Snake(a, 1 + longest[u]) for a, (u, w) in enumerate(zip(g.tails, g.weights)) if w < 0]
