from hypothesis import given, strategies as st

from conftest import example3, graphs, two_cycle, zero_cycle
from oracles import closure_components, has_negative_cycle
from snakes_sp.classic import bellman_ford, topological_sort
from snakes_sp.contraction import (
    ContractionMap,
    admissible_subgraph,
    contract_zero_cycles,
    expand_potentials,
    strongly_connected_components,
)
from snakes_sp.graph import Graph, NegativeCycleCertificate
from snakes_sp.solver import verify_certificate


def test_admissible_example3():
    sub = admissible_subgraph(example3())
    assert sub.arcs == [1, 2]


def test_admissible_all_positive():
    assert admissible_subgraph(Graph(3, [(0, 1, 1), (1, 2, 4)])).arcs == []


def test_admissible_uses_potentials():
    g = Graph(2, [(0, 1, 3)])
    assert admissible_subgraph(g, [-4, 0]).arcs == [0]


def test_scc_two_cycle():
    comp = strongly_connected_components(Graph(2, [(0, 1, 0), (1, 0, 0)]))
    assert comp[0] == comp[1]


def test_scc_dag():
    comp = strongly_connected_components(Graph(4, [(0, 1, 0), (1, 2, 0), (0, 3, 0)]))
    assert len(set(comp)) == 4


def test_scc_long_chain_is_iterative():
    n = 200_000
    g = Graph(n, [(i, i + 1, 0) for i in range(n - 1)] + [(n - 1, 0, 0)])
    comp = strongly_connected_components(g)
    assert len(set(comp)) == 1


@given(graphs(max_n=10, max_m=30))
def test_scc_matches_closure(g):
    comp = strongly_connected_components(g)
    got = {frozenset(v for v in range(g.n) if comp[v] == c) for c in set(comp)}
    assert got == closure_components(g.n, [(u, v) for u, v, _ in g.arcs()])


def test_contract_zero_cycle_example():
    g = zero_cycle()
    new_g, cmap = contract_zero_cycles(g)
    s, a, b, c = 0, 1, 2, 3
    x = cmap.to_super[a]
    assert cmap.to_super[b] == x
    assert sorted(new_g.arcs()) == sorted([(cmap.to_super[s], x, 1), (x, cmap.to_super[c], -2)])
    assert topological_sort(admissible_subgraph(new_g)).acyclic


def test_contract_two_cycle_certificate():
    g = two_cycle()
    cert = contract_zero_cycles(g)
    assert isinstance(cert, NegativeCycleCertificate)
    assert verify_certificate(g, cert) and cert.weight(g) == -1


def test_contract_all_positive_is_identity():
    g = Graph(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)])
    new_g, cmap = contract_zero_cycles(g)
    assert cmap.is_bijection and cmap.to_super == [0, 1, 2]
    assert new_g == g


def test_contract_negative_self_loop():
    g = Graph(2, [(0, 1, 2), (1, 1, -1)])
    cert = contract_zero_cycles(g)
    assert isinstance(cert, NegativeCycleCertificate) and cert.arcs == (1,)


def test_expand_potentials_identity_and_broadcast():
    g = zero_cycle()
    ident = ContractionMap.identity(g)
    assert expand_potentials(ident, [4, 3, 2, 1]) == [4, 3, 2, 1]
    _, cmap = contract_zero_cycles(g)
    d_super = [0] * len(cmap.members)
    d_super[cmap.to_super[1]] = -3
    d = expand_potentials(cmap, d_super)
    assert d[1] == d[2] == -3


def _random_map(data, n):
    k = data.draw(st.integers(1, n))
    to_super = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    used = sorted(set(to_super))
    relabel = {x: i for i, x in enumerate(used)}
    to_super = [relabel[x] for x in to_super]
    members = [[v for v in range(n) if to_super[v] == x] for x in range(len(used))]
    return ContractionMap(to_super, members, [])


@given(st.integers(1, 12), st.data())
def test_composed_broadcast(n, data):
    first = _random_map(data, n)
    second = _random_map(data, len(first.members))
    both = first.compose(second)
    assert sorted(v for ms in both.members for v in ms) == list(range(n))
    assert all(both.to_super[v] == x for x, ms in enumerate(both.members) for v in ms)
    d = data.draw(st.lists(st.integers(-9, 0), min_size=len(second.members), max_size=len(second.members)))
    assert expand_potentials(first, expand_potentials(second, d)) == expand_potentials(both, d)


@given(graphs(max_n=7, max_m=14, w_min=-3, w_max=4))
def test_contraction_properties(g):
    result = contract_zero_cycles(g)
    if isinstance(result, NegativeCycleCertificate):
        assert verify_certificate(g, result)
        return
    new_g, cmap = result
    # admissible subgraph of the contracted graph is acyclic
    assert topological_sort(admissible_subgraph(new_g)).acyclic
    # negative-cycle verdict is preserved
    assert has_negative_cycle(g) == has_negative_cycle(new_g)
    # distances are preserved through the map
    for s in range(g.n):
        orig = bellman_ford(g, s)
        small = bellman_ford(new_g, cmap.to_super[s])
        if orig.has_cycle or small.has_cycle:
            continue
        assert orig.labels.dist == [small.labels.dist[cmap.to_super[v]] for v in range(g.n)]
    # broadcasting potentials keeps cross-arc reduced weights
    d_super = [-(3 * x) % 7 for x in range(new_g.n)]
    d = expand_potentials(cmap, d_super)
    for i, a in enumerate(cmap.arcs):
        u, v = g.tails[a], g.heads[a]
        assert g.weights[a] + d[u] - d[v] == new_g.weights[i] + d_super[new_g.tails[i]] - d_super[new_g.heads[i]]
