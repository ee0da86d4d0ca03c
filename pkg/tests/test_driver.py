"""Tests for parameter derivation and the sequential coloring loop."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from vizing.driver import (
    Params,
    RunStats,
    UncoloredSet,
    _edge_color_python,
    derive_params,
    edge_color,
)
from vizing.errors import EpsilonTooSmall, InvalidOverride, PreconditionViolated
from vizing.graph import (
    build_graph,
    gen_complete_bipartite,
    gen_cycle,
    gen_erdos_renyi_m,
    gen_near_regular,
    gen_star,
)
from vizing.rng import RngStream
from vizing import stats as st


# ---------------------------------------------------------------------------
# derive_params


def test_derive_params_frozen_examples():
    p = derive_params(16, 1)
    assert (p.q, p.k_max, p.ell) == (32, 16, 4)
    p = derive_params(16, 0.25)
    assert (p.q, p.k_max, p.ell) == (20, 64, 16)
    p = derive_params(16, 0.5)
    assert (p.q, p.k_max, p.ell) == (24, 32, 4)
    with pytest.raises(EpsilonTooSmall):
        derive_params(4, 0.1)


def test_derive_params_exact_rational_floors():
    # 0.29 * 100 = 28.999... in binary floats; the rational reading must
    # floor to 29, giving q = 129, not 128.
    p = derive_params(100, 0.29)
    assert p.q == 129
    assert p.epsilon == Fraction(29, 100)
    assert p.k_max == 56  # ceil(16 / 0.29) = ceil(55.17...)
    assert p.ell == 12  # ceil(1 / 0.29^2) = ceil(11.89...)


def test_derive_params_overrides_and_floors():
    p = derive_params(16, 1, k_max=2, ell=3)
    assert (p.k_max, p.ell) == (2, 3)
    with pytest.raises(InvalidOverride):
        derive_params(16, 1, k_max=1)
    with pytest.raises(InvalidOverride):
        derive_params(16, 1, ell=2)


def test_derive_params_theory_mode():
    p = derive_params(16, 1, mode="theory")
    assert p.k_max == 16
    assert p.ell == 6400 * 16**4
    p = derive_params(16, 1, mode="theory", k_max=20)
    assert p.ell == 6400 * 20**4
    with pytest.raises(InvalidOverride):
        derive_params(16, 1, mode="theory", k_max=15)  # below ceil(16/eps)
    with pytest.raises(InvalidOverride):
        derive_params(16, 1, mode="theory", ell=100)


def test_derive_params_argument_validation():
    with pytest.raises(ValueError):
        derive_params(16, 0)
    with pytest.raises(ValueError):
        derive_params(16, -1)
    with pytest.raises(ValueError):
        derive_params(-1, 1)
    with pytest.raises(ValueError):
        derive_params(16, 1, mode="fast")


def test_derive_params_low_degree_accepts_any_epsilon():
    # Degree <= 1 graphs use the trivial pre-pass; epsilon is not
    # constrained there, and q still clears the state floor.
    p = derive_params(0, 0.001)
    assert p.q == 1
    p = derive_params(1, 0.5)
    assert p.q == 2
    with pytest.raises(EpsilonTooSmall):
        derive_params(2, 0.25)  # floor(0.5) = 0 with the machinery engaged


def test_derive_params_records_seed_and_mode():
    p = derive_params(16, 1, seed=77)
    assert isinstance(p, Params)
    assert p.seed == 77
    assert p.mode == "practical"


# ---------------------------------------------------------------------------
# UncoloredSet


def test_uncolored_set_sample_frequencies():
    s = UncoloredSet(3)
    s.remove(1)
    assert 1 not in s and 0 in s and 2 in s
    rng = RngStream(5)
    counts = {0: 0, 2: 0}
    trials = 10_000
    for _ in range(trials):
        counts[s.sample(rng)] += 1
    sigma = (trials * 0.25) ** 0.5
    assert abs(counts[0] - trials / 2) < 5 * sigma
    assert abs(counts[2] - trials / 2) < 5 * sigma


def test_uncolored_set_remove_guards():
    s = UncoloredSet(2)
    s.remove(0)
    with pytest.raises(PreconditionViolated):
        s.remove(0)
    s.remove(1)
    assert len(s) == 0
    with pytest.raises(PreconditionViolated):
        s.sample(RngStream(1))


def test_uncolored_set_swap_remove_keeps_members_consistent():
    s = UncoloredSet(6)
    for e in (2, 5, 0):
        s.remove(e)
    remaining = {1, 3, 4}
    assert {int(x) for x in s.items[: s.size]} == remaining
    for e in range(6):
        assert (e in s) == (e in remaining)


# ---------------------------------------------------------------------------
# edge_color


def _color(g, epsilon=1, seed=1, debug=True, **kw):
    params = derive_params(g.max_degree, epsilon)
    return edge_color(g, params, seed, debug=debug, use_kernel=False, **kw)


def test_triangle_gets_three_distinct_colors():
    g = build_graph(3, [(0, 1), (0, 2), (1, 2)])
    state, rs = _color(g)
    report = state.verify_proper()
    assert report.proper and report.colored == 3
    cols = {state.color_of(e) for e in range(3)}
    assert len(cols) == 3
    assert all(1 <= c <= 4 for c in cols)
    assert isinstance(rs, RunStats)
    assert rs.iterations_total >= 3


def test_low_degree_pre_pass_colors_everything_one():
    for g in (
        build_graph(1, []),
        build_graph(2, [(0, 1)]),
        gen_star(1),
        build_graph(6, [(0, 1), (2, 3), (4, 5)]),
    ):
        params = derive_params(g.max_degree, 1)
        state, rs = edge_color(g, params, 3, debug=True, use_kernel=False)
        assert state.verify_proper().proper
        assert state.uncolored_count == 0
        assert all(state.color_of(e) == 1 for e in range(g.m))
        assert rs.iterations_total == 0 and rs.color_calls == 0


def test_deterministic_given_seed():
    g = gen_near_regular(60, 4, RngStream(8))
    params = derive_params(g.max_degree, 0.5)
    s1, r1 = edge_color(g, params, 42, use_kernel=False)
    s2, r2 = edge_color(g, params, 42, use_kernel=False)
    assert np.array_equal(s1.edge_color, s2.edge_color)
    assert r1.iterations_total == r2.iterations_total
    assert r1.color_draws == r2.color_draws
    s3, _ = edge_color(g, params, 43, use_kernel=False)
    assert not np.array_equal(s1.edge_color, s3.edge_color)


@pytest.mark.parametrize("maker,eps", [
    (lambda: gen_cycle(10), 1),
    (lambda: gen_cycle(11), 0.5),
    (lambda: gen_complete_bipartite(4, 4), 1),
    (lambda: gen_near_regular(24, 4, RngStream(21)), 0.5),
    (lambda: gen_erdos_renyi_m(20, 30, RngStream(22)), 1),
])
def test_edge_color_proper_and_total(maker, eps):
    g = maker()
    state, rs = _color(g, epsilon=eps, seed=7)
    report = state.verify_proper()
    assert report.proper and report.colored == g.m
    used = {state.color_of(e) for e in range(g.m)}
    params = derive_params(g.max_degree, eps)
    assert all(1 <= c <= params.q for c in used)
    assert rs.avg_chain_edges >= 1.0
    assert rs.max_chain_edges >= 1


def test_run_inequality_color_calls_bound():
    g = gen_near_regular(40, 4, RngStream(31))
    params = derive_params(g.max_degree, 0.5)
    state, rs = edge_color(g, params, 11, use_kernel=False)
    m = g.m
    assert rs.color_calls <= params.k_max * (rs.fan_restarts + 2 * m) + 2 * m


def test_capture_receives_one_outcome_per_edge():
    g = gen_cycle(9)
    outcomes = []
    state, _ = _color(g, seed=5, capture=outcomes.append)
    assert len(outcomes) == g.m
    assert state.verify_proper().proper


def test_capture_requires_reference_path():
    g = gen_cycle(5)
    params = derive_params(g.max_degree, 1)
    with pytest.raises(PreconditionViolated):
        edge_color(g, params, 1, use_kernel=True, capture=lambda o: None)


def _connected_graphs_up_to(n_max):
    """All labeled connected graphs on 1..n_max vertices (as edge lists)."""
    for n in range(1, n_max + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            adj = {v: set() for v in range(n)}
            for u, v in edges:
                adj[u].add(v)
                adj[v].add(u)
            seen = {0}
            stack = [0]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) == n:
                yield n, edges


def test_small_connected_sweep_subset():
    # Exhaustive n <= 4 sweep (the acceptance suite extends this to 5).
    count = 0
    for n, edges in _connected_graphs_up_to(4):
        g = build_graph(n, edges)
        state, _ = _color(g, seed=2)
        report = state.verify_proper()
        assert report.proper and report.colored == g.m
        count += 1
    assert count == 1 + 1 + 4 + 38  # connected labeled graphs on 1..4 vertices


def test_raw_stats_identities():
    g = gen_complete_bipartite(5, 5)
    params = derive_params(g.max_degree, 1)
    state, stats = _edge_color_python(g, params, 13, debug=True)
    assert state.verify_proper().proper
    assert stats[st.ITERATIONS] == stats[st.RANDOMCHAIN_CALLS]
    assert stats[st.MSVA_CALLS] == g.m
    # Every non-success pass ends in exactly one accept or one backtrack,
    # commits one step, and backtracks remove at least one committed step.
    non_success = stats[st.ITERATIONS] - stats[st.MSVA_CALLS]
    assert stats[st.FORWARD_ITERS] + stats[st.BACKWARD_ITERS] == non_success
    assert stats[st.BACKWARD_STEPS] >= stats[st.BACKWARD_ITERS]
    assert stats[st.BACKWARD_STEPS] <= non_success
    assert stats[st.SUM_CHAIN_EDGES] >= g.m
