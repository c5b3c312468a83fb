"""Experiment drivers shared by the acceptance tests and ``scripts/``.

* ``sweep_instance(seed)``: the seeded random family used for the
  correctness sweep (n in [2, 64], m in [0, 8n], weights in [-16, 64]).
* ``PhaseMonitor``: an observer that checks per-phase invariants of the
  reweighting loop and collects violations instead of raising.
* ``layered_series``: iteration and relaxation counts on the layered family.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .classic import CycleError, bellman_ford
from .generators import gen_layered, gen_random
from .graph import Graph, NegativeCycleCertificate
from .snakes import ReweightState, iteration_bound, trace_snakes
from .solver import SolveConfig, reweight

NEG_FRACTIONS = (0.0, 0.1, 0.3, 0.5)
W_MIN, W_MAX = -16, 64


@dataclass(frozen=True)
class SweepInstance:
    seed: int
    graph: Graph
    source: int = 0

    @property
    def name(self) -> str:
        return f"sweep{self.seed}"


def sweep_instance(seed: int) -> SweepInstance:
    n = 2 + seed % 63
    m = (seed * 7) % (8 * n + 1)
    frac = NEG_FRACTIONS[seed % len(NEG_FRACTIONS)]
    return SweepInstance(seed, gen_random(n, m, W_MIN, W_MAX, frac, seed))


def sweep(count: int, start: int = 0) -> Iterator[SweepInstance]:
    for seed in range(start, start + count):
        yield sweep_instance(seed)


def negative_cycle_free(g: Graph) -> bool:
    """No negative cycle anywhere in ``g`` (virtual source to every vertex)."""
    n = g.n
    aug = Graph(n + 1, list(g.arcs()) + [(n, v, 0) for v in range(n)], check_magnitude=False)
    return not bellman_ford(aug, n).has_cycle


def simple_cycles(g: Graph, limit: int = 20000) -> list[tuple[int, ...]]:
    """Arc-id tuples of the simple cycles of a small graph (at most ``limit``)."""
    found: list[tuple[int, ...]] = []

    def dfs(root: int, u: int, path: list[int], on: set[int]) -> None:
        for a in g.adj[u]:
            if len(found) >= limit:
                return
            v = g.heads[a]
            if v == root:
                found.append(tuple(path + [a]))
            elif v > root and v not in on:
                on.add(v)
                dfs(root, v, path + [a], on)
                on.discard(v)

    for r in range(g.n):
        dfs(r, r, [], {r})
    return found


@dataclass
class PhaseMonitor:
    """Observer checking the per-phase invariants; violations are collected as strings.

    Cycle weights are checked across Adjust-Weights when ``n <= cycle_limit``;
    snake lengths are checked after every iteration of the basic variant
    whenever the zero arcs of the working graph are acyclic.
    """

    cycle_limit: int = 10
    violations: list[str] = field(default_factory=list)
    snake_checks: int = 0
    snake_skips: int = 0
    _admissible: list[int] = field(default_factory=list)
    _nonneg: list[int] = field(default_factory=list)
    _cycles: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    _reduced: list[int] = field(default_factory=list)

    @staticmethod
    def _red(state: ReweightState) -> list[int]:
        g, d, w = state.g, state.d, state.weights
        return [w[a] + d[g.tails[a]] - d[g.heads[a]] for a in range(g.m)]

    def _fail(self, state: ReweightState, what: str) -> None:
        self.violations.append(f"iteration {state.iterations}: {what}")

    def __call__(self, phase: str, state: ReweightState) -> None:
        red = self._red(state)
        if phase == "before_expand":
            self._admissible = [a for a, r in enumerate(red) if r <= 0]
        elif phase == "after_expand":
            if any(x > 0 for x in state.d):
                self._fail(state, "positive potential after Expand")
            if any(red[a] < 0 for a in self._admissible if a < len(red)):
                self._fail(state, "admissible arc negative after Expand")
        elif phase == "before_connect":
            self._nonneg = [a for a, w in enumerate(state.weights) if w >= 0]
            self._cycles = []
            if state.g.n <= self.cycle_limit:
                self._cycles = [(c, sum(red[a] for a in c)) for c in simple_cycles(state.g)]
            state.connect_keys = []
        elif phase == "after_connect":
            if any(x > 0 for x in state.d):
                self._fail(state, "positive potential after Connect")
            if any(red[a] < 0 for a in self._nonneg):
                self._fail(state, "nonnegative arc negative after Connect")
            keys = state.connect_keys or []
            if any(a > b for a, b in zip(keys, keys[1:])):
                self._fail(state, "Connect extraction keys decreased")
            state.connect_keys = None
            self._reduced = red
        elif phase == "after_adjust":
            if state.weights != self._reduced or any(state.d):
                self._fail(state, "Adjust-Weights did not apply the potentials")
            for c, w in self._cycles:
                if sum(state.weights[a] for a in c) != w:
                    self._fail(state, f"cycle {c} changed weight")
            if state.variant == "basic":
                try:
                    snakes = trace_snakes(state.current_graph())
                except CycleError:
                    self.snake_skips += 1
                    return
                self.snake_checks += 1
                j = state.iterations
                short = [s for s in snakes if s.length < j + 1]
                if short:
                    self._fail(state, f"snake at arc {short[0].head} has length {short[0].length} < {j + 1}")


@dataclass
class LayeredPoint:
    n: int
    m: int
    neg: int
    variant: str
    iterations: int
    c: int
    bound: int
    relaxations: int
    strict_bf_scans: int
    cap_exceeded: bool

    @property
    def relaxation_ratio(self) -> float:
        return self.relaxations / self.strict_bf_scans


def layered_point(layers: int, width: int, seed: int, variant: str) -> LayeredPoint:
    g = gen_layered(layers, width, seed)
    art = reweight(g, SolveConfig(variant=variant))
    if isinstance(art, NegativeCycleCertificate):  # the family is acyclic
        raise AssertionError("layered instance reported a negative cycle")
    return LayeredPoint(
        n=g.n,
        m=g.m,
        neg=sum(w < 0 for w in g.weights),
        variant=variant,
        iterations=art.iterations,
        c=art.c,
        bound=iteration_bound(g.n, variant, art.c),
        relaxations=art.counters.relaxations,
        strict_bf_scans=(g.n - 1) * g.m,
        cap_exceeded=art.cap_exceeded,
    )


def layered_series(ns=(1000, 10_000, 100_000), width: int = 100, seed: int = 1, variants=("basic", "improved")):
    """One point per (n, variant); ``n`` must be a multiple of ``width``."""
    return [layered_point(n // width - 1, width, seed, v) for n, v in itertools.product(ns, variants)]


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den
