import json

import pytest
from hypothesis import given, strategies as st

from conftest import HAND_SUITE, chain4, example3, graphs, two_cycle, zero_cycle
from oracles import has_negative_cycle, simple_path_distances
from snakes_sp.classic import bellman_ford
from snakes_sp.graph import ContractViolation, Graph, NegativeCycleCertificate
from snakes_sp.solver import (
    CheckResult,
    SolveConfig,
    differential_check,
    reweight,
    solve_sssp,
    sources_agree,
    tree_is_tight,
    triangle_inequality_holds,
    verify_certificate,
)

CONFIGS = [
    SolveConfig(variant=v, heap=h) for v in ("basic", "improved") for h in ("binary", "pairing")
]


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(variant="fancy")
    with pytest.raises(ValueError):
        SolveConfig(heap="fibonacci")


def test_reweight_example3():
    art = reweight(example3())
    assert art.graph.weights == [2, 0, 5]
    assert art.potentials == [0, 0, -5]
    assert art.iterations == 1


def test_reweight_zero_cycle_keeps_intra_arcs_at_zero():
    g = zero_cycle()
    art = reweight(g)
    assert art.graph.weights[0] == 0 and art.graph.weights[1] == 0
    assert all(w >= 0 for w in art.graph.weights)
    assert art.potentials[1] == art.potentials[2]


def test_reweight_two_cycle_certificate():
    g = two_cycle()
    cert = reweight(g)
    assert isinstance(cert, NegativeCycleCertificate)
    assert sorted(cert.arcs) == [0, 1] and cert.weight(g) == -1


def test_reweight_nonnegative_is_identity():
    g = Graph(3, [(0, 1, 3), (1, 2, 0)])
    art = reweight(g)
    assert art.graph.weights == g.weights and art.potentials == [0, 0, 0]
    assert art.iterations == 0


def test_solve_example3():
    out = solve_sssp(example3(), 0)
    assert out.labels.dist == [0, 2, -3]
    assert out.labels.parent == [None, 0, 1]


def test_solve_chain4():
    assert solve_sssp(chain4(), 0).labels.dist == [0, 1, 0, 1, 0]


def test_solve_source_without_out_arcs():
    out = solve_sssp(example3(), 2)
    assert out.labels.dist == [None, None, 0]
    assert out.labels.parent == [None, None, None]


def test_unreachable_negative_cycle_is_ignored():
    # cycle 1 <-> 2 is negative but unreachable from 0
    g = Graph(4, [(1, 2, -3), (2, 1, 1), (0, 3, 5)])
    out = solve_sssp(g, 0)
    assert out.labels.dist == [0, None, None, 5]
    assert solve_sssp(g, 1).has_cycle


def test_source_out_of_range():
    with pytest.raises(ContractViolation):
        solve_sssp(example3(), 3)


def test_verify_certificate():
    g = two_cycle()
    assert verify_certificate(g, NegativeCycleCertificate((0, 1)))
    assert not verify_certificate(g, NegativeCycleCertificate((0,)))
    z = zero_cycle()
    assert not verify_certificate(z, NegativeCycleCertificate((0, 1)))
    assert not verify_certificate(g, NegativeCycleCertificate(()))


def test_tight_tree_checks():
    g = example3()
    good = solve_sssp(g, 0).labels
    assert tree_is_tight(g, 0, good) and triangle_inequality_holds(g, good)
    # tight along s->b but violates a->b
    stale = type(good)(dist=[0, 2, 0], parent=[None, 0, 2])
    assert tree_is_tight(g, 0, stale)
    assert not triangle_inequality_holds(g, stale)
    loose = type(good)(dist=[0, 2, -3], parent=[None, 0, 2])
    assert not tree_is_tight(g, 0, loose)


@pytest.mark.parametrize("cfg", CONFIGS, ids=lambda c: f"{c.variant}-{c.heap}")
def test_hand_suite_differential(hand_graph, cfg):
    result = differential_check(hand_graph, 0, cfg)
    assert result, result.reason


@pytest.mark.parametrize("cfg", CONFIGS, ids=lambda c: f"{c.variant}-{c.heap}")
@given(graphs(max_n=8, max_m=20, w_min=-6, w_max=12), st.data())
def test_differential_random(cfg, g, data):
    s = data.draw(st.integers(0, g.n - 1))
    result = differential_check(g, s, cfg)
    assert result, result.reason


@given(graphs(max_n=7, max_m=14, w_min=-5, w_max=10), st.data())
def test_distances_match_path_enumeration(g, data):
    s = data.draw(st.integers(0, g.n - 1))
    out = solve_sssp(g, s)
    assert out.has_cycle == has_negative_cycle(g, s)
    if not out.has_cycle:
        assert out.labels.dist == simple_path_distances(g, s)
    else:
        assert verify_certificate(g, out.cycle)


@given(graphs(max_n=8, max_m=20, w_min=0, w_max=12))
def test_nonnegative_graphs_need_no_iterations(g):
    art = reweight(g)
    assert art.iterations == 0 and art.graph.weights == g.weights


@given(graphs(max_n=8, max_m=20, w_min=-6, w_max=12))
def test_one_reweighting_serves_all_sources(g):
    assert sources_agree(g, range(g.n))


def test_mismatch_is_persisted(tmp_path, monkeypatch):
    import snakes_sp.solver as solver

    g = example3()
    real = solver.solve_sssp

    def broken(g, s, cfg):
        out = real(g, s, cfg)
        out.labels.dist[2] += 1
        return out

    monkeypatch.setattr(solver, "solve_sssp", broken)
    result = differential_check(g, 0, SolveConfig(), corpus_dir=tmp_path, tag="ex3")
    assert isinstance(result, CheckResult) and not result
    grs = list(tmp_path.glob("mismatch_ex3_*.gr"))
    assert len(grs) == 1
    meta = json.loads(grs[0].with_suffix(".json").read_text())
    assert meta["source"] == 0 and "dist[2]" in meta["reason"]


def test_persist_on_exception(tmp_path, monkeypatch):
    import snakes_sp.solver as solver

    def boom(g, s, cfg):
        raise RuntimeError("boom")

    monkeypatch.setattr(solver, "solve_sssp", boom)
    assert not differential_check(example3(), 0, corpus_dir=tmp_path)
    assert len(list(tmp_path.glob("*.gr"))) == 1


def test_stats_present():
    stats = solve_sssp(example3(), 0).stats
    for key in ("relaxations", "extract_mins", "arc_scans", "iterations", "c"):
        assert key in stats
    assert stats["iterations"] == 1


def test_bellman_ford_agrees_on_cycle_verdict():
    g = two_cycle()
    assert bellman_ford(g, 0).has_cycle and solve_sssp(g, 0).has_cycle
