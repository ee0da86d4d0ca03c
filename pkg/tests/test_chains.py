"""Tests for chain shapes, the alternating-path walker, and chain helpers."""

from __future__ import annotations

import pytest

from vizing.chains import (
    Fan,
    MultiStepChain,
    PathChain,
    StepRecord,
    chain_to_dot,
    check_non_intersecting,
    concat_edges,
    degree_ab,
    fan_plus_path_edges,
    initial_segment,
    is_happy_edge,
    reverse_edges,
    walk_alternating_path,
)
from vizing.coloring import BLANK, ColoringState
from vizing.errors import BadStart, BoundaryMismatch, PreconditionViolated
from vizing.graph import build_graph


def path_graph(k: int):
    return build_graph(k + 1, [(i, i + 1) for i in range(k)])


def colored_state(g, q, assignments):
    s = ColoringState(g, q, debug=True)
    for e, c in assignments:
        s.augment([e], c)
    return s


# ---------------------------------------------------------------------------
# Fan / PathChain value types


def test_fan_accessors_and_prefix():
    f = Fan(pivot=7, leaves=(1, 2, 3), edge_ids=(10, 11, 12))
    assert f.length == 3
    assert (f.v_start, f.v_end) == (1, 3)
    assert (f.start_edge, f.end_edge) == (10, 12)
    assert f.vertices() == (7, 1, 2, 3)
    assert f.prefix(2) == Fan(7, (1, 2), (10, 11))
    assert f.prefix(3) is f
    with pytest.raises(PreconditionViolated):
        f.prefix(0)
    with pytest.raises(PreconditionViolated):
        f.prefix(4)
    with pytest.raises(PreconditionViolated):
        Fan(pivot=0, leaves=(), edge_ids=())
    with pytest.raises(PreconditionViolated):
        Fan(pivot=0, leaves=(1,), edge_ids=(1, 2))


def test_path_chain_accessors():
    p = PathChain(
        start_edge=5,
        start_vertex=9,
        path_edges=(6, 7, 8),
        walk_vertices=(1, 2, 3, 4),
        alpha=1,
        beta=2,
        reached_cap=False,
    )
    assert p.length == 4
    assert p.end_vertex == 4
    assert p.last_edge == 8
    assert p.last_edge_color == 1  # third path edge -> alpha
    assert p.edges() == (5, 6, 7, 8)
    assert p.interior_edges() == (6, 7)
    assert p.vertices() == (9, 1, 2, 3, 4)
    pre = p.prefix(2)
    assert pre.path_edges == (6,)
    assert pre.walk_vertices == (1, 2)
    assert pre.end_vertex == 2
    assert pre.last_edge_color == 1
    assert not pre.reached_cap
    assert p.prefix(4) is p


def test_singleton_path_chain():
    p = PathChain(3, 0, (), (1,), alpha=BLANK, beta=BLANK, reached_cap=False)
    assert p.length == 1
    assert p.end_vertex == 1
    assert p.last_edge == 3
    assert p.last_edge_color == BLANK
    assert p.interior_edges() == ()
    with pytest.raises(PreconditionViolated):
        PathChain(3, 0, (), (1, 2), alpha=1, beta=2, reached_cap=False)


# ---------------------------------------------------------------------------
# degree_ab / is_happy_edge


def test_degree_ab_cases():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    s = colored_state(g, 4, [(1, 1), (2, 2)])  # edges 0-2 colored 1, 0-3 colored 2
    assert degree_ab(s, 0, 3, 4) == 0
    assert degree_ab(s, 0, 1, 4) == 1
    assert degree_ab(s, 0, 1, 2) == 2
    assert degree_ab(s, 2, 1, 2) == 1
    with pytest.raises(PreconditionViolated):
        degree_ab(s, 0, 2, 2)
    with pytest.raises(PreconditionViolated):
        degree_ab(s, 0, 0, 1)


def test_is_happy_edge_empty_coloring_returns_smallest():
    s = ColoringState(path_graph(2), 4)
    assert is_happy_edge(s, 0) == 1


def test_is_happy_edge_brute_force_example():
    # M(0) = {2,4}, M(1) = {3,4} -> smallest shared is 4
    g = build_graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    s = colored_state(g, 4, [(1, 1), (2, 3), (3, 1), (4, 2)])
    assert s.missing_colors(0) == [2, 4]
    assert s.missing_colors(1) == [3, 4]
    assert is_happy_edge(s, 0) == 4


def test_is_happy_edge_none_when_disjoint():
    # M(0) = {3,4}, M(1) = {1,2} -> no shared color
    g = build_graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    s = colored_state(g, 4, [(1, 1), (2, 2), (3, 3), (4, 4)])
    assert is_happy_edge(s, 0) is None
    with pytest.raises(PreconditionViolated):
        is_happy_edge(s, 1)


# ---------------------------------------------------------------------------
# Walker


def test_walker_hand_instance():
    # v0-v1-v2-v3 with colors (blank, 1, 2): walk from v1 collects both edges
    s = colored_state(path_graph(3), 4, [(1, 1), (2, 2)])
    p = walk_alternating_path(s, 0, 1, alpha=1, beta=2, cap=8)
    assert p.edges() == (0, 1, 2)
    assert p.start_vertex == 0
    assert p.walk_vertices == (1, 2, 3)
    assert p.end_vertex == 3
    assert not p.reached_cap
    assert p.last_edge_color == 2
    # maximality: the color expected next is absent at the end vertex
    assert s.is_missing(3, 1)


def test_walker_singleton_when_no_alpha_edge():
    s = colored_state(path_graph(3), 4, [(1, 1), (2, 2)])
    p = walk_alternating_path(s, 0, 1, alpha=3, beta=2, cap=8)
    assert p.edges() == (0,)
    assert p.walk_vertices == (1,)
    assert p.end_vertex == 1
    assert not p.reached_cap


def test_walker_respects_cap():
    # 100 alternating edges after the blank start edge; cap 6 -> 6 edges total
    k = 101
    s = ColoringState(path_graph(k), 4)
    for e in range(1, k):
        s.augment([e], 1 if e % 2 == 1 else 2)
    p = walk_alternating_path(s, 0, 1, alpha=1, beta=2, cap=6)
    assert p.length == 6
    assert p.edges() == (0, 1, 2, 3, 4, 5)
    assert p.reached_cap
    assert p.end_vertex == 6
    full = walk_alternating_path(s, 0, 1, alpha=1, beta=2, cap=1000)
    assert full.length == 101
    assert not full.reached_cap
    # capped walk == prefix of the full walk (up to the cap flag)
    pre = full.prefix(6)
    assert pre.edges() == p.edges()
    assert pre.walk_vertices == p.walk_vertices


def test_walker_can_pass_through_anchor():
    # walk 1 -> 2 -> 0 -> 3 passes through the anchor vertex 0
    g = build_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    s = colored_state(g, 4, [(1, 1), (2, 2), (3, 1)])
    p = walk_alternating_path(s, 0, 1, alpha=1, beta=2, cap=10)
    assert p.edges() == (0, 1, 2, 3)
    assert p.walk_vertices == (1, 2, 0, 3)
    assert p.start_vertex == 0
    assert p.vertices().count(0) == 2  # anchor revisited


def test_walker_bad_start():
    g = build_graph(4, [(0, 2), (1, 2), (2, 3)])
    s = colored_state(g, 4, [(1, 1), (2, 2)])
    with pytest.raises(BadStart, match="both colors"):
        walk_alternating_path(s, 0, 2, alpha=1, beta=2, cap=8)


def test_walker_preconditions():
    s = colored_state(path_graph(3), 4, [(1, 1)])
    with pytest.raises(PreconditionViolated):
        walk_alternating_path(s, 1, 1, alpha=1, beta=2, cap=8)  # start not blank
    with pytest.raises(PreconditionViolated):
        walk_alternating_path(s, 0, 3, alpha=1, beta=2, cap=8)  # vertex not on edge
    with pytest.raises(PreconditionViolated):
        walk_alternating_path(s, 0, 1, alpha=2, beta=2, cap=8)
    with pytest.raises(PreconditionViolated):
        walk_alternating_path(s, 0, 1, alpha=1, beta=2, cap=0)
    with pytest.raises(PreconditionViolated):
        walk_alternating_path(s, 0, 1, alpha=0, beta=2, cap=8)


def test_walker_does_not_mutate_state():
    s = colored_state(path_graph(3), 4, [(1, 1), (2, 2)])
    before = s.edge_color.copy()
    walk_alternating_path(s, 0, 1, alpha=1, beta=2, cap=8)
    assert (s.edge_color == before).all()


# ---------------------------------------------------------------------------
# Structural helpers


def test_initial_segment():
    assert initial_segment((5, 6, 7), 2) == (5, 6)
    assert initial_segment((5,), 1) == (5,)
    with pytest.raises(PreconditionViolated):
        initial_segment((5, 6), 0)
    with pytest.raises(PreconditionViolated):
        initial_segment((5, 6), 3)


def test_concat_edges():
    assert concat_edges((0, 1), (1, 2)) == (0, 1, 2)
    with pytest.raises(BoundaryMismatch):
        concat_edges((0, 1), (2, 3))
    with pytest.raises(BoundaryMismatch):
        concat_edges((), (1, 2))


def test_reverse_edges_involution():
    c = (3, 1, 4, 1)
    assert reverse_edges(c) == (1, 4, 1, 3)
    assert reverse_edges(reverse_edges(c)) == c


def test_fan_plus_path_edges():
    f = Fan(pivot=0, leaves=(1, 2), edge_ids=(10, 11))
    p = PathChain(11, 0, (12, 13), (2, 3, 4), alpha=1, beta=2, reached_cap=False)
    assert fan_plus_path_edges(f, p) == (10, 11, 12, 13)
    bad_anchor = PathChain(11, 5, (12,), (2, 3), alpha=1, beta=2, reached_cap=False)
    with pytest.raises(BoundaryMismatch):
        fan_plus_path_edges(f, bad_anchor)
    bad_edge = PathChain(12, 0, (), (2,), alpha=1, beta=2, reached_cap=False)
    with pytest.raises(BoundaryMismatch):
        fan_plus_path_edges(f, bad_edge)


# ---------------------------------------------------------------------------
# Multi-step chains


def toy_two_piece_chain(bad_leaf: bool = False):
    """Step piece F0+P0 then final piece F1+P1 on made-up ids.

    F0: pivot 0, leaves (1,2); P0: edges (12,13) walking 2->3->4.
    F1: pivot 3, leaves (4, 6) (or (4, 1) to force a violation); P1: edge 16
    walking 6->7.
    """
    f0 = Fan(0, (1, 2), (10, 11))
    p0 = PathChain(11, 0, (12, 13), (2, 3, 4), alpha=1, beta=2, reached_cap=False)
    step = StepRecord(fan=f0, truncated_path=p0, full_path=p0, alpha=1, beta=2, index=0)
    leaves = (4, 1) if bad_leaf else (4, 6)
    f1 = Fan(3, leaves, (13, 15))
    p1 = PathChain(15, 3, (16,), (leaves[1], 7), alpha=2, beta=1, reached_cap=False)
    return MultiStepChain(
        start_edge=10, start_vertex=0, steps=(step,), final_fan=f1, final_path=p1
    )


def test_multistep_edge_sequence():
    chain = toy_two_piece_chain()
    assert chain.edge_sequence() == (10, 11, 12, 13, 15, 16)
    assert chain.total_edges == 6
    assert len(chain.pieces()) == 2


def test_multistep_boundary_mismatch_detected():
    good = toy_two_piece_chain()
    bad = MultiStepChain(
        start_edge=10,
        start_vertex=0,
        steps=good.steps,
        final_fan=Fan(3, (4, 6), (14, 15)),  # 14 does not continue edge 13
        final_path=good.final_path,
    )
    with pytest.raises(BoundaryMismatch):
        bad.edge_sequence()


def test_non_intersection_checker():
    assert check_non_intersecting(toy_two_piece_chain()) == []
    violations = check_non_intersecting(toy_two_piece_chain(bad_leaf=True))
    assert len(violations) == 1
    assert "fan vertices of piece 0" in violations[0]
    assert "[1]" in violations[0]


def test_non_intersection_checker_catches_edge_reuse():
    f0 = Fan(0, (1, 2), (10, 11))
    p0 = PathChain(11, 0, (12, 13), (2, 3, 4), alpha=1, beta=2, reached_cap=False)
    step = StepRecord(fan=f0, truncated_path=p0, full_path=p0, alpha=1, beta=2, index=0)
    f1 = Fan(3, (4,), (13,))
    # reuses interior edge 12 of piece 0
    p1 = PathChain(13, 3, (12,), (4, 8), alpha=2, beta=1, reached_cap=False)
    chain = MultiStepChain(10, 0, (step,), f1, p1)
    violations = check_non_intersecting(chain)
    assert any("interior path edges of piece 0" in v for v in violations)


# ---------------------------------------------------------------------------
# DOT rendering


def test_chain_to_dot():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    s = colored_state(g, 4, [(1, 2)])
    fan = Fan(0, (1, 2), (0, 1))
    path = PathChain(1, 0, (), (2,), alpha=BLANK, beta=BLANK, reached_cap=False)
    chain = MultiStepChain(0, 0, (), fan, path)
    dot = chain_to_dot(chain, s)
    assert dot == (
        "graph chain {\n"
        '  0 [label="0"];\n'
        '  1 [label="1"];\n'
        '  2 [label="2"];\n'
        '  0 -- 1 [label="step 0 color blank"];\n'
        '  0 -- 2 [label="step 0 color 2"];\n'
        "}\n"
    )
