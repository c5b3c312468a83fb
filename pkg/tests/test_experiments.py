import math

import pytest
from hypothesis import given

from conftest import chain4, example3, graphs, two_cycle, zero_cycle
from oracles import has_negative_cycle, simple_cycles as oracle_cycles
from snakes_sp.experiments import (
    NEG_FRACTIONS,
    PhaseMonitor,
    layered_point,
    loglog_slope,
    negative_cycle_free,
    simple_cycles,
    sweep,
    sweep_instance,
)
from snakes_sp.snakes import BoundExceeded, ReweightState, run_snakes


def test_sweep_parameters_in_range():
    for inst in sweep(500):
        g = inst.graph
        assert 2 <= g.n <= 64 and 0 <= g.m <= 8 * g.n
        assert all(-16 <= w <= 64 for w in g.weights)
    # the forced negative share is a floor; uniform weights add more
    for seed in range(200, 240):
        g = sweep_instance(seed).graph
        assert sum(w < 0 for w in g.weights) >= round(NEG_FRACTIONS[seed % 4] * g.m)


def test_sweep_is_reproducible():
    assert sweep_instance(1234).graph == sweep_instance(1234).graph


def test_negative_cycle_free_hand_graphs():
    assert negative_cycle_free(example3())
    assert negative_cycle_free(zero_cycle())
    assert not negative_cycle_free(two_cycle())


@given(graphs(max_n=6, max_m=12))
def test_negative_cycle_free_matches_enumeration(g):
    assert negative_cycle_free(g) == (not has_negative_cycle(g))


@given(graphs(max_n=6, max_m=12))
def test_cycle_enumeration_matches_oracle(g):
    ours = sorted(sorted(c) for c in simple_cycles(g))
    theirs = sorted(sorted(c) for c in oracle_cycles(g))
    assert ours == theirs


def test_loglog_slope():
    xs = [10, 100, 1000]
    assert math.isclose(loglog_slope(xs, [x**0.5 for x in xs]), 0.5)
    assert math.isclose(loglog_slope(xs, [3, 3, 3]), 0.0, abs_tol=1e-12)


def test_monitor_is_quiet_on_hand_graphs():
    for g in (example3(), chain4(), zero_cycle()):
        mon = PhaseMonitor()
        assert run_snakes(ReweightState.start(g, observer=mon)) is None
        assert mon.violations == []


def test_monitor_flags_broken_adjust(monkeypatch):
    import snakes_sp.snakes as snakes

    def adjust_without_potentials(state):
        state.d = [0] * len(state.d)
        return snakes.has_negative_weight(state)

    monkeypatch.setattr(snakes, "adjust_weights", adjust_without_potentials)
    mon = PhaseMonitor()
    state = ReweightState.start(example3(), observer=mon)
    state.cap = 1
    with pytest.raises(BoundExceeded):
        run_snakes(state, strict_bound=True)
    assert any("Adjust-Weights" in v for v in mon.violations)


def test_layered_point_small():
    p = layered_point(9, 10, 0, "improved")
    assert p.n == 100 and p.m == 9 * 10 * 5
    assert p.iterations <= p.bound and not p.cap_exceeded
    assert p.strict_bf_scans == 99 * p.m
