"""Seeded instance generators.

All randomness comes from SplitMix64 so instances are bit-identical across
platforms and Python versions.
"""

from __future__ import annotations

from .graph import Graph

MASK64 = (1 << 64) - 1


class SplitMix64:
    """Steele, Lea and Flood's SplitMix64 generator."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def unit(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def gen_random(
    n: int,
    m: int,
    w_min: int,
    w_max: int,
    neg_fraction: float,
    seed: int,
) -> Graph:
    """``m`` arcs with uniform endpoints and weights in ``[w_min, w_max]``.

    Then ``round(neg_fraction * m)`` arcs, chosen uniformly, get a uniform
    weight in ``[-max(|w_min|, 1), -1]``.
    """
    if w_min > w_max:
        raise ValueError("w_min > w_max")
    if not 0.0 <= neg_fraction <= 1.0:
        raise ValueError("neg_fraction outside [0, 1]")
    rng = SplitMix64(seed)
    arcs = []
    for _ in range(m):
        u = rng.below(n)
        v = rng.below(n)
        arcs.append([u, v, rng.integer(w_min, w_max)])
    k = round(neg_fraction * m)
    ids = list(range(m))
    neg_lo = -max(abs(w_min), 1)
    for i in range(k):
        j = i + rng.below(m - i)
        ids[i], ids[j] = ids[j], ids[i]
        arcs[ids[i]][2] = rng.integer(neg_lo, -1)
    return Graph(n, (tuple(a) for a in arcs))


def gen_layered(
    layers: int,
    width: int,
    seed: int,
    *,
    degree: int | None = None,
    max_weight: int = 16,
) -> Graph:
    """Layered DAG whose arc layers alternate positive and negative weights.

    There are ``layers + 1`` vertex layers of ``width`` vertices; vertex 0 is
    the first vertex of layer 0. Arc layer ``i`` joins vertex layer ``i`` to
    ``i + 1`` with weights in ``[1, max_weight]`` for even ``i`` and
    ``[-max_weight, -1]`` for odd ``i``. Each vertex gets ``degree`` distinct
    successors (default ``min(width, 5)``), the first always being the vertex
    in the same column so that every column is a full-length path. With
    ``width == 1`` the weights are exactly +1 / -1.
    """
    if layers < 2:
        raise ValueError("need at least 2 layers")
    if width < 1:
        raise ValueError("width must be positive")
    k = min(width, 5) if degree is None else degree
    if not 1 <= k <= width:
        raise ValueError("degree must lie in [1, width]")
    rng = SplitMix64(seed)
    n = (layers + 1) * width
    arcs = []
    for i in range(layers):
        sign = 1 if i % 2 == 0 else -1
        base, nxt = i * width, (i + 1) * width
        for col in range(width):
            targets = [col]
            chosen = {col}
            while len(targets) < k:
                t = rng.below(width)
                if t not in chosen:
                    chosen.add(t)
                    targets.append(t)
            for t in targets:
                w = 1 if width == 1 else rng.integer(1, max_weight)
                arcs.append((base + col, nxt + t, sign * w))
    return Graph(n, arcs)


def gen_zero_cycle_example() -> Graph:
    """``s -> a (1)``, zero 2-cycle ``a <-> b``, ``b -> c (-2)``."""
    s, a, b, c = range(4)
    return Graph(4, [(a, b, 0), (b, a, 0), (s, a, 1), (b, c, -2)])
