import itertools

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import random_map
from ncm import (
    AdjacencyMatrix,
    CognitiveMap,
    DimensionMismatch,
    NeutroValue,
    Outcome,
    SimulationConfig,
    TriState,
    UnknownConcept,
    build_adjacency,
    find_hidden_pattern,
    iterate,
    make_state,
    parse_state,
    propagate,
    step,
)

ON, OFF, IND = TriState.ON, TriState.OFF, TriState.IND


def values(raw):
    return [(v.det, v.ind) for v in raw]


def assert_raw(raw, expected):
    assert len(raw) == len(expected)
    for got, (det, ind) in zip(raw, expected):
        assert got.det == pytest.approx(det, abs=1e-9)
        assert got.ind == pytest.approx(ind, abs=1e-9)


@pytest.mark.parametrize(
    "state, expected",
    [
        ("1 0 0 0 0 0 0 0 0", [(0, 0), (0.8, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0.6, 0)]),
        ("1 0 1 0 0 0 0 0 0", [(0.9, 0), (0.8, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0.6, 0)]),
        ("1 1 1 0 0 0 0 0 1", [(1.7, 0), (0.8, 0), (0, 0), (0, 0), (0.2, 0), (0, 0), (0, 0), (0, 0), (0.6, 0)]),
        ("0 0 0 1 0 0 0 0 I", [(0.1, 0.8), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 1)]),
    ],
)
def test_propagate_eis(eis, state, expected):
    assert_raw(propagate(build_adjacency(eis), parse_state(state)), expected)


def test_propagate_agrees_with_symbolic_oracle(eis):
    m = build_adjacency(eis)
    sym = {OFF: sp.Integer(0), ON: sp.Integer(1), IND: oracle.I}
    for state in itertools.islice(itertools.product(list(TriState), repeat=9), 0, 19683, 97):
        expected = [oracle.split(v) for v in oracle.product([sym[s] for s in state], oracle.EIS)]
        assert_raw(propagate(m, state), [(float(d), float(c)) for d, c in expected])


def test_propagate_dimension_mismatch(eis):
    with pytest.raises(DimensionMismatch):
        propagate(build_adjacency(eis), parse_state("1 0"))


def test_step_clamps_after_threshold(eis):
    m = build_adjacency(eis)
    raw, nxt = step(m, parse_state("1 0 0 0 0 0 0 0 0"), 0.5, clamp={0})
    assert raw[0].det == 0
    assert nxt == parse_state("1 1 0 0 0 0 0 0 1")
    _, unclamped = step(m, parse_state("1 0 0 0 0 0 0 0 0"), 0.5)
    assert unclamped == parse_state("0 1 0 0 0 0 0 0 1")


def test_step_two_on(eis):
    _, nxt = step(build_adjacency(eis), parse_state("1 0 1 0 0 0 0 0 0"), 0.5, clamp={0, 2})
    assert nxt == parse_state("1 1 1 0 0 0 0 0 1")


def test_step_zero_matrix():
    m = AdjacencyMatrix(np.zeros((3, 3)))
    for state in itertools.product(list(TriState), repeat=3):
        assert step(m, state)[1] == (OFF, OFF, OFF)


@pytest.mark.parametrize(
    "on, final",
    [
        (["x1"], "1 1 0 0 0 0 0 0 1"),
        (["x1", "x3"], "1 1 1 0 0 0 0 0 1"),
        (["x4"], "0 0 0 1 0 0 0 0 I"),
    ],
)
def test_hidden_pattern_eis(eis, on, final):
    r = find_hidden_pattern(eis, make_state(eis, on=on))
    assert r.outcome is Outcome.FIXED_POINT
    assert r.state == parse_state(final)
    assert r.steps_taken == 2


def test_quiescent_state(eis):
    r = find_hidden_pattern(eis, make_state(eis))
    assert r.outcome is Outcome.FIXED_POINT
    assert r.state == (OFF,) * 9
    assert r.steps_taken == 1


def test_trace_records_each_step(eis):
    r = find_hidden_pattern(eis, make_state(eis, on=["x1"]), SimulationConfig(record_trace=True))
    assert len(r.trace) == r.steps_taken == 2
    assert r.trace[-1][1] == r.state
    assert find_hidden_pattern(eis, make_state(eis, on=["x1"])).trace is None


def test_unknown_clamp_id(eis):
    with pytest.raises(UnknownConcept):
        find_hidden_pattern(eis, make_state(eis, on=["x1"]), SimulationConfig(clamp={"nope"}))
    with pytest.raises(UnknownConcept):
        make_state(eis, on=["x0"])


def test_dimension_mismatch(eis):
    with pytest.raises(DimensionMismatch):
        find_hidden_pattern(eis, parse_state("1 0 0"))


def test_config_checks():
    with pytest.raises(ValueError):
        SimulationConfig(max_steps=0)


def test_explicit_empty_clamp_releases_on_nodes(eis):
    r = find_hidden_pattern(eis, make_state(eis, on=["x1"]), SimulationConfig(clamp=frozenset()))
    expected = oracle_unclamped(eis, ["x1"])
    assert (r.outcome.value, [str(s) for s in r.state]) == expected


def oracle_unclamped(cmap, on):
    """Unclamped run via the oracle's loop, for comparison."""
    n = len(cmap.ids)
    state = tuple(sp.Integer(1) if cid in on else sp.Integer(0) for cid in cmap.ids)
    seen = [state]
    while True:
        nxt = tuple(oracle.thresh(v) for v in oracle.product(list(seen[-1]), oracle.EIS))
        if nxt == seen[-1]:
            return "fixed_point", list(oracle.to_symbols(nxt))
        if nxt in seen:
            return "limit_cycle", list(oracle.to_symbols(seen[seen.index(nxt)]))
        seen.append(nxt)
        assert len(seen) <= 3**n


def test_initial_indeterminate_is_not_clamped(eis):
    r = find_hidden_pattern(eis, make_state(eis, indeterminate=["x9"]), SimulationConfig(record_trace=True))
    # x9 = I feeds x1 with 0.8*I, which thresholds to I; nothing holds x9 itself
    first = r.trace[0][1]
    assert first[0] is IND and first[8] is OFF


def swap_cycle_map():
    # a excites b, b inhibits a
    return CognitiveMap.from_edges("osc", ["a", "b"], [("a", "b", 1), ("b", "a", -1)])


def test_limit_cycle_detection():
    # 3-ring of positive edges rotates a single On node
    ring = CognitiveMap.from_edges("ring", ["a", "b", "c"], [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    r = find_hidden_pattern(ring, make_state(ring, on=["a"]), SimulationConfig(clamp=frozenset()))
    assert r.outcome is Outcome.LIMIT_CYCLE
    assert r.period == 3
    assert r.states == (parse_state("1 0 0"), parse_state("0 1 0"), parse_state("0 0 1"))
    assert r.steps_taken == 3


def test_limit_cycle_period_two():
    cmap = swap_cycle_map()
    r = find_hidden_pattern(cmap, make_state(cmap, on=["a"]), SimulationConfig(clamp=frozenset()))
    # (1,0) -> (0,1) -> (0,0) -> (0,0): settles, no cycle
    assert r.outcome is Outcome.FIXED_POINT and r.state == (OFF, OFF)
    flip = CognitiveMap.from_edges("flip", ["a", "b"], [("a", "b", 1), ("b", "a", 1)])
    r = find_hidden_pattern(flip, make_state(flip, on=["a"]), SimulationConfig(clamp=frozenset()))
    assert r.outcome is Outcome.LIMIT_CYCLE and r.period == 2


def test_step_limit():
    ring = CognitiveMap.from_edges("ring", ["a", "b", "c"], [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    r = find_hidden_pattern(ring, make_state(ring, on=["a"]), SimulationConfig(clamp=frozenset(), max_steps=2))
    assert r.outcome is Outcome.STEP_LIMIT
    assert r.states == () and r.steps_taken == 2
    with pytest.raises(ValueError):
        r.state


def test_deterministic(eis):
    cfg = SimulationConfig(record_trace=True)
    a = find_hidden_pattern(eis, make_state(eis, on=["x7"]), cfg)
    b = find_hidden_pattern(eis, make_state(eis, on=["x7"]), cfg)
    assert a == b and repr(a) == repr(b)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10), st.data())
def test_soundness_on_random_maps(seed, n, data):
    rng = np.random.default_rng(seed)
    cmap = random_map(rng, n, density=0.4)
    m = build_adjacency(cmap)
    initial = tuple(data.draw(st.lists(st.sampled_from(list(TriState)), min_size=n, max_size=n)))
    clamp_ids = data.draw(st.sets(st.sampled_from(cmap.ids)) | st.none())
    k = data.draw(st.sampled_from([0.0, 0.25, 0.5, 0.75]))
    cfg = SimulationConfig(threshold=k, clamp=clamp_ids, record_trace=True)
    r = find_hidden_pattern(cmap, initial, cfg)
    clamp = {i for i, c in enumerate(cmap.ids) if c in clamp_ids} if clamp_ids is not None else {
        i for i, s in enumerate(initial) if s is ON}

    assert r.outcome is not Outcome.STEP_LIMIT
    assert r.steps_taken <= 3**n + 1
    for _, state in r.trace:
        assert all(state[i] is ON for i in clamp)
    if r.outcome is Outcome.FIXED_POINT:
        assert step(m, r.state, k, clamp)[1] == r.state
    else:
        assert len(set(r.states)) == r.period >= 2
        s = r.states[0]
        for p in range(1, r.period + 1):
            s = step(m, s, k, clamp)[1]
            if p < r.period:
                assert s != r.states[0]
                assert s == r.states[p]
        assert s == r.states[0]


def test_iterate_on_bare_matrix():
    m = AdjacencyMatrix(np.array([[0, 0.9], [0, 0]]), np.array([[0, 0], [1, 0]]))
    r = iterate(m, parse_state("1 0"), clamp={0})
    assert r.state == parse_state("1 1")
    raw = propagate(m, parse_state("1 1"))
    assert values(raw) == [(0.0, 1.0), (0.9, 0.0)]
    assert raw[0] == NeutroValue(0, 1)
