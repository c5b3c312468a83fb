"""Directed multigraph with integer weights and the label vocabulary shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_ABS_WEIGHT = 2**40
MAX_VERTICES = 2**20
INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class ContractViolation(ValueError):
    """A caller broke an operation's precondition."""


class MagnitudeError(ValueError):
    """Weights or vertex count exceed the supported magnitude bound."""


def check_int64(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise MagnitudeError(f"64-bit overflow: {value}")
    return value


class Graph:
    """Immutable directed multigraph over vertices ``0..n-1``.

    Arcs are stored as three parallel lists (``tails``, ``heads``, ``weights``)
    indexed by arc id; ``adj[u]`` lists the ids of arcs leaving ``u``.
    Parallel arcs and self-loops are kept as given.
    """

    __slots__ = ("n", "tails", "heads", "weights", "adj")

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int, int]] = (),
        *,
        check_magnitude: bool = True,
    ) -> None:
        if n < 1:
            raise ContractViolation("a graph needs at least one vertex")
        tails: list[int] = []
        heads: list[int] = []
        weights: list[int] = []
        for u, v, w in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractViolation(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            tails.append(int(u))
            heads.append(int(v))
            weights.append(int(w))
        if check_magnitude:
            if n > MAX_VERTICES:
                raise MagnitudeError(f"n={n} exceeds {MAX_VERTICES}")
            for w in weights:
                if abs(w) > MAX_ABS_WEIGHT:
                    raise MagnitudeError(f"|weight| {abs(w)} exceeds 2^40")
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, u in enumerate(tails):
            adj[u].append(a)
        self.n = n
        self.tails = tails
        self.heads = heads
        self.weights = weights
        self.adj = adj

    @property
    def m(self) -> int:
        return len(self.tails)

    def arc(self, a: int) -> tuple[int, int, int]:
        return self.tails[a], self.heads[a], self.weights[a]

    def arcs(self) -> list[tuple[int, int, int]]:
        return list(zip(self.tails, self.heads, self.weights))

    def with_weights(self, weights: Sequence[int]) -> Graph:
        """Same topology and arc ids, new weights (no magnitude check)."""
        if len(weights) != self.m:
            raise ContractViolation("weight vector length differs from arc count")
        return Graph(self.n, zip(self.tails, self.heads, weights), check_magnitude=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.arcs() == other.arcs()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class DistanceLabels:
    """Tentative distances (``None`` = unreached) and parent arc ids."""

    dist: list[int | None]
    parent: list[int | None]

    @classmethod
    def unreached(cls, n: int) -> DistanceLabels:
        return cls([None] * n, [None] * n)


@dataclass(frozen=True)
class NegativeCycleCertificate:
    arcs: tuple[int, ...]

    def weight(self, g: Graph) -> int:
        return sum(g.weights[a] for a in self.arcs)


@dataclass
class SolveOutcome:
    """Exactly one of ``labels`` or ``cycle`` is set."""

    labels: DistanceLabels | None = None
    cycle: NegativeCycleCertificate | None = None
    stats: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.labels is None) == (self.cycle is None):
            raise ContractViolation("SolveOutcome needs exactly one of labels / cycle")

    @property
    def has_cycle(self) -> bool:
        return self.cycle is not None


def zero_potentials(n: int) -> list[int]:
    return [0] * n


def reduced_weight(g: Graph, d: Sequence[int], a: int) -> int:
    if len(d) != g.n:
        raise ContractViolation("potential vector length differs from n")
    return check_int64(g.weights[a] + d[g.tails[a]] - d[g.heads[a]])


def has_negative_arc(g: Graph) -> bool:
    return any(w < 0 for w in g.weights)


def check_chain(g: Graph, path: Sequence[int]) -> None:
    for a, b in zip(path, path[1:]):
        if g.heads[a] != g.tails[b]:
            raise ContractViolation(f"arcs {a} and {b} do not chain")


def path_reduced_weight(g: Graph, d: Sequence[int], path: Sequence[int]) -> int:
    """Sum of reduced weights along a chained arc sequence."""
    check_chain(g, path)
    return sum(reduced_weight(g, d, a) for a in path)


def is_closed_chain(g: Graph, arcs: Sequence[int]) -> bool:
    if not arcs:
        return False
    if any(not 0 <= a < g.m for a in arcs):
        return False
    for a, b in zip(arcs, list(arcs[1:]) + [arcs[0]]):
        if g.heads[a] != g.tails[b]:
            return False
    return True


@dataclass
class Counters:
    """Operation tallies used in place of wall-clock complexity measurements."""

    relaxations: int = 0
    extract_mins: int = 0
    arc_scans: int = 0
    iterations: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "relaxations": self.relaxations,
            "extract_mins": self.extract_mins,
            "arc_scans": self.arc_scans,
            "iterations": self.iterations,
        }
