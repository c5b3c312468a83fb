"""DIMACS ``.gr`` files (signed weights, optional ``n <v> s`` source line) and potentials files."""

from __future__ import annotations

from typing import Sequence

from .graph import MAX_ABS_WEIGHT, MAX_VERTICES, Graph


class DimacsError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DimacsError(lineno, f"expected an integer, got {token!r}") from None


def parse_dimacs(data: bytes | str) -> tuple[Graph, int | None]:
    """Parse a graph and optional 0-based source from DIMACS text."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    n = m = None
    source = None
    arcs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        kind = fields[0]
        if kind == "p":
            if n is not None:
                raise DimacsError(lineno, "second problem line")
            if len(fields) != 4 or fields[1] != "sp":
                raise DimacsError(lineno, "problem line must be 'p sp <n> <m>'")
            n, m = _int(fields[2], lineno), _int(fields[3], lineno)
            if n < 1 or m < 0:
                raise DimacsError(lineno, "need n >= 1 and m >= 0")
            if n > MAX_VERTICES:
                raise DimacsError(lineno, f"n={n} exceeds 2^20")
        elif kind == "a":
            if n is None:
                raise DimacsError(lineno, "arc before problem line")
            if len(fields) != 4:
                raise DimacsError(lineno, "arc line must be 'a <u> <v> <w>'")
            u, v, w = (_int(f, lineno) for f in fields[1:])
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(lineno, f"vertex id out of range 1..{n}")
            if abs(w) > MAX_ABS_WEIGHT:
                raise DimacsError(lineno, f"|weight| {abs(w)} exceeds 2^40")
            arcs.append((u - 1, v - 1, w))
        elif kind == "n":
            if n is None:
                raise DimacsError(lineno, "source line before problem line")
            if len(fields) != 3 or fields[2] != "s":
                raise DimacsError(lineno, "source line must be 'n <v> s'")
            v = _int(fields[1], lineno)
            if not 1 <= v <= n:
                raise DimacsError(lineno, f"vertex id out of range 1..{n}")
            source = v - 1
        else:
            raise DimacsError(lineno, f"unknown line type {kind!r}")
    if n is None:
        raise DimacsError(0, "missing problem line")
    if len(arcs) != m:
        raise DimacsError(0, f"problem line announces {m} arcs, found {len(arcs)}")
    return Graph(n, arcs), source


def write_dimacs(g: Graph, source: int | None = None) -> bytes:
    lines = [f"p sp {g.n} {g.m}"]
    if source is not None:
        lines.append(f"n {source + 1} s")
    lines.extend(f"a {u + 1} {v + 1} {w}" for u, v, w in g.arcs())
    return ("\n".join(lines) + "\n").encode("ascii")


def write_potentials(potentials: Sequence[int]) -> bytes:
    return "".join(f"{v + 1} {p}\n" for v, p in enumerate(potentials)).encode("ascii")


def parse_potentials(data: bytes | str, n: int) -> list[int]:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    out: list[int | None] = [None] * n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise DimacsError(lineno, "potential line must be '<vertex-id> <value>'")
        v, p = _int(fields[0], lineno), _int(fields[1], lineno)
        if not 1 <= v <= n:
            raise DimacsError(lineno, f"vertex id out of range 1..{n}")
        out[v - 1] = p
    if any(p is None for p in out):
        raise DimacsError(0, "potentials missing for some vertices")
    return out  # type: ignore[return-value]
