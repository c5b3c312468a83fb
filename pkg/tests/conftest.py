from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from snakes_sp.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "data" / "golden"

S, A, B = 0, 1, 2


def example3() -> Graph:
    """{(s,a,2),(a,b,-5),(s,b,0)}."""
    return Graph(3, [(S, A, 2), (A, B, -5), (S, B, 0)])


def chain4() -> Graph:
    """s->a(1), a->b(-1), b->c(1), c->e(-1)."""
    return Graph(5, [(0, 1, 1), (1, 2, -1), (2, 3, 1), (3, 4, -1)])


def two_cycle() -> Graph:
    """{(a,b,-1),(b,a,0)}."""
    return Graph(2, [(0, 1, -1), (1, 0, 0)])


def zero_cycle() -> Graph:
    """{(a,b,0),(b,a,0),(s,a,1),(b,c,-2)} with s=0, a=1, b=2, c=3."""
    return Graph(4, [(1, 2, 0), (2, 1, 0), (0, 1, 1), (2, 3, -2)])


HAND_SUITE = {
    "example3": example3,
    "chain4": chain4,
    "two_cycle": two_cycle,
    "zero_cycle": zero_cycle,
}


@pytest.fixture(params=sorted(HAND_SUITE))
def hand_graph(request) -> Graph:
    return HAND_SUITE[request.param]()


@st.composite
def graphs(draw, max_n: int = 8, max_m: int = 20, w_min: int = -6, w_max: int = 12, min_n: int = 1) -> Graph:
    n = draw(st.integers(min_n, max_n))
    arcs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(w_min, w_max)),
            max_size=max_m,
        )
    )
    return Graph(n, arcs)


@st.composite
def potentials(draw, n: int, lo: int = -50, hi: int = 0) -> list[int]:
    return draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n))
