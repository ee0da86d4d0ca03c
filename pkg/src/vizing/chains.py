"""Chain shapes used for recoloring: fans, alternating paths, multi-step chains.

A *chain* is a sequence of distinct, consecutively adjacent edges; shifting
a coloring along it moves every color one edge toward the start.  Two shapes
matter here:

* a :class:`Fan` — edges sharing one *pivot* vertex, with distinct leaf
  endpoints; the first fan edge is blank.
* a :class:`PathChain` — one start edge followed by a path that alternates
  between two colors.  The ``start_vertex`` anchor names the endpoint of
  the start edge that the walk did *not* leave from, which disambiguates
  orientation for single-edge chains (the walk may even return to it).

A :class:`MultiStepChain` is an alternating concatenation fan + path + fan
+ path + ... where consecutive pieces share exactly their boundary edge.
The pieces recorded along the way keep enough data (truncated and full
walks, their color pairs) for the structural audit in the test suite.

Everything in this module is a pure value or a read-only query; nothing
mutates a coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coloring import BLANK, ColoringState
from .errors import BadStart, BoundaryMismatch, PreconditionViolated

__all__ = [
    "Fan",
    "PathChain",
    "StepRecord",
    "MultiStepChain",
    "walk_alternating_path",
    "degree_ab",
    "is_happy_edge",
    "initial_segment",
    "concat_edges",
    "reverse_edges",
    "fan_plus_path_edges",
    "check_non_intersecting",
    "chain_to_dot",
]


@dataclass(frozen=True, slots=True)
class Fan:
    """Edges ``pivot–leaves[i]`` in order; first one blank, the rest colored.

    ``leaves`` are distinct neighbors of ``pivot``; ``edge_ids[i]`` is the
    edge ``pivot–leaves[i]``.
    """

    pivot: int
    leaves: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.leaves or len(self.leaves) != len(self.edge_ids):
            raise PreconditionViolated("fan needs matching, non-empty leaves and edges")

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def v_start(self) -> int:
        return self.leaves[0]

    @property
    def v_end(self) -> int:
        return self.leaves[-1]

    @property
    def start_edge(self) -> int:
        return self.edge_ids[0]

    @property
    def end_edge(self) -> int:
        return self.edge_ids[-1]

    def vertices(self) -> tuple[int, ...]:
        """Pivot first, then the leaves."""
        return (self.pivot,) + self.leaves

    def prefix(self, j: int) -> "Fan":
        """The fan restricted to its first `j` edges (1 <= j <= length)."""
        if not 1 <= j <= self.length:
            raise PreconditionViolated(f"fan prefix length {j} outside 1..{self.length}")
        if j == self.length:
            return self
        return Fan(self.pivot, self.leaves[:j], self.edge_ids[:j])


@dataclass(frozen=True, slots=True)
class PathChain:
    """A start edge plus a color-alternating path.

    ``path_edges[i]`` carries ``alpha`` for even ``i`` and ``beta`` for odd
    ``i``.  ``walk_vertices`` are the visited vertices: entry 0 is the
    endpoint of ``start_edge`` the walk left from, entry ``i+1`` the far
    endpoint of ``path_edges[i]``; ``start_vertex`` is the remaining
    endpoint of ``start_edge`` and may reappear among the later
    ``walk_vertices`` when the walk bends back.  ``reached_cap`` records
    whether the walk was stopped by its length cap rather than running out
    of colored edges.
    """

    start_edge: int
    start_vertex: int
    path_edges: tuple[int, ...]
    walk_vertices: tuple[int, ...]
    alpha: int
    beta: int
    reached_cap: bool

    def __post_init__(self) -> None:
        if len(self.walk_vertices) != len(self.path_edges) + 1:
            raise PreconditionViolated("walk_vertices must be one longer than path_edges")

    @property
    def length(self) -> int:
        """Number of chain edges, counting the start edge."""
        return 1 + len(self.path_edges)

    @property
    def end_vertex(self) -> int:
        return self.walk_vertices[-1]

    @property
    def last_edge(self) -> int:
        return self.path_edges[-1] if self.path_edges else self.start_edge

    @property
    def last_edge_color(self) -> int:
        """Color of the final path edge by alternation parity (blank if none)."""
        k = len(self.path_edges)
        if k == 0:
            return BLANK
        return self.alpha if k % 2 == 1 else self.beta

    def edges(self) -> tuple[int, ...]:
        return (self.start_edge,) + self.path_edges

    def interior_edges(self) -> tuple[int, ...]:
        """Edges other than the first and the last one."""
        return self.path_edges[:-1]

    def vertices(self) -> tuple[int, ...]:
        """Anchor first, then the walk; may repeat the anchor."""
        return (self.start_vertex,) + self.walk_vertices

    def prefix(self, j: int) -> "PathChain":
        """The chain restricted to its first `j` edges (1 <= j <= length)."""
        if not 1 <= j <= self.length:
            raise PreconditionViolated(f"path prefix length {j} outside 1..{self.length}")
        if j == self.length:
            return self
        return PathChain(
            self.start_edge,
            self.start_vertex,
            self.path_edges[: j - 1],
            self.walk_vertices[:j],
            self.alpha,
            self.beta,
            False,
        )


@dataclass(frozen=True, slots=True)
class StepRecord:
    """One committed step of a multi-step chain.

    ``truncated_path`` (the part actually in the chain) is an initial
    segment of ``full_path`` (the full capped walk it was cut from).
    ``alpha``/``beta`` name the step's color pair ordered so that `beta`
    was the color of the truncated path's last edge before the step was
    shifted.
    """

    fan: Fan
    truncated_path: PathChain
    full_path: PathChain
    alpha: int
    beta: int
    index: int


@dataclass(frozen=True, slots=True)
class MultiStepChain:
    """Committed steps plus the final happy fan + path.

    Consecutive pieces share exactly their boundary edge: each fan's first
    edge is the previous path's last edge, pivoted at the far endpoint of
    the previous walk.
    """

    start_edge: int
    start_vertex: int
    steps: tuple[StepRecord, ...]
    final_fan: Fan
    final_path: PathChain

    def pieces(self) -> list[tuple[Fan, PathChain]]:
        """All (fan, path) pieces in chain order, final piece last."""
        out = [(s.fan, s.truncated_path) for s in self.steps]
        out.append((self.final_fan, self.final_path))
        return out

    def edge_sequence(self) -> tuple[int, ...]:
        """The glued chain as one edge-id sequence (boundary edges once)."""
        seq: list[int] = [self.start_edge]
        for fan, path in self.pieces():
            piece = fan_plus_path_edges(fan, path)
            if piece[0] != seq[-1]:
                raise BoundaryMismatch(
                    f"piece starts at edge {piece[0]}, chain ends at {seq[-1]}"
                )
            seq.extend(piece[1:])
        return tuple(seq)

    def final_piece_edges(self) -> tuple[int, ...]:
        """Edges of the final fan-plus-path piece only.

        When the committed steps have already been shifted, shifting this
        sequence and coloring its last edge completes the augmentation.
        """
        return fan_plus_path_edges(self.final_fan, self.final_path)

    @property
    def total_edges(self) -> int:
        return len(self.edge_sequence())


# ---------------------------------------------------------------------------
# Queries against a coloring


def degree_ab(state: ColoringState, v: int, alpha: int, beta: int) -> int:
    """Number of edges at `v` colored `alpha` or `beta` (0, 1 or 2)."""
    if alpha == beta or not 1 <= alpha <= state.q or not 1 <= beta <= state.q:
        raise PreconditionViolated(f"need two distinct colors in 1..{state.q}")
    tbl = state.missing_edge
    return int(tbl[v, alpha] != -1) + int(tbl[v, beta] != -1)


def is_happy_edge(state: ColoringState, e: int) -> int | None:
    """Smallest color missing at both endpoints of blank edge `e`, else None.

    O(q) scan; meant for tests and verification, not the hot path.
    """
    if state.edge_color[e] != BLANK:
        raise PreconditionViolated(f"edge {e} is colored; happiness needs a blank edge")
    u, v = state.graph.endpoints(e)
    tbl = state.missing_edge
    for a in range(1, state.q + 1):
        if tbl[u, a] == -1 and tbl[v, a] == -1:
            return a
    return None


def walk_alternating_path(
    state: ColoringState,
    start_edge: int,
    from_vertex: int,
    alpha: int,
    beta: int,
    cap: int,
) -> PathChain:
    """Build the maximal alternating path chain from a blank edge.

    Starting at `from_vertex` (an endpoint of the blank `start_edge`), the
    walk repeatedly follows the incident edge colored `alpha`, then `beta`,
    then `alpha`, ... until no such edge exists or `cap` total chain edges
    (counting `start_edge`) are collected.  The returned chain's
    ``start_vertex`` is the other endpoint of `start_edge`.  The state is
    not mutated.

    Raises
    ------
    BadStart
        If both `alpha` and `beta` are present at `from_vertex` (its
        two-color degree is 2), so no maximal path starts there.
    PreconditionViolated
        For a colored start edge, equal or out-of-range colors,
        `from_vertex` not on `start_edge`, or `cap` < 1.
    """
    q = state.q
    if alpha == beta or not 1 <= alpha <= q or not 1 <= beta <= q:
        raise PreconditionViolated(f"need two distinct colors in 1..{q}")
    if cap < 1:
        raise PreconditionViolated(f"cap must be >= 1, got {cap}")
    if state.edge_color[start_edge] != BLANK:
        raise PreconditionViolated(f"start edge {start_edge} is not blank")
    u, v = state.graph.endpoints(start_edge)
    if from_vertex == u:
        anchor = v
    elif from_vertex == v:
        anchor = u
    else:
        raise PreconditionViolated(f"vertex {from_vertex} not on edge {start_edge}")
    tbl = state.missing_edge
    if tbl[from_vertex, alpha] != -1 and tbl[from_vertex, beta] != -1:
        raise BadStart(
            f"vertex {from_vertex} carries both colors {alpha} and {beta}"
        )
    eu = state.graph.eu
    ev = state.graph.ev
    path_edges: list[int] = []
    verts: list[int] = [from_vertex]
    cur = from_vertex
    expect, other = alpha, beta
    length = 1
    while length < cap:
        e = int(tbl[cur, expect])
        if e == -1:
            break
        path_edges.append(e)
        a, b = int(eu[e]), int(ev[e])
        cur = b if a == cur else a
        verts.append(cur)
        expect, other = other, expect
        length += 1
    return PathChain(
        start_edge=start_edge,
        start_vertex=anchor,
        path_edges=tuple(path_edges),
        walk_vertices=tuple(verts),
        alpha=alpha,
        beta=beta,
        reached_cap=(length == cap),
    )


# ---------------------------------------------------------------------------
# Structural helpers on raw edge sequences


def initial_segment(edges: Sequence[int], j: int) -> tuple[int, ...]:
    """First `j` edges of a chain (1 <= j <= length)."""
    if not 1 <= j <= len(edges):
        raise PreconditionViolated(f"segment length {j} outside 1..{len(edges)}")
    return tuple(edges[:j])


def concat_edges(c1: Sequence[int], c2: Sequence[int]) -> tuple[int, ...]:
    """Glue two chains sharing their boundary edge: last of `c1` = first of `c2`."""
    if not c1 or not c2 or c1[-1] != c2[0]:
        raise BoundaryMismatch(
            f"chains do not share a boundary edge: {list(c1)[-1:]} vs {list(c2)[:1]}"
        )
    return tuple(c1) + tuple(c2[1:])


def reverse_edges(edges: Sequence[int]) -> tuple[int, ...]:
    """The reversed chain; shifting along it undoes the forward shift."""
    return tuple(reversed(edges))


def fan_plus_path_edges(fan: Fan, path: PathChain) -> tuple[int, ...]:
    """Edge sequence of the glued chain F + P (their shared edge once).

    Requires the path to start with the fan's last edge and be anchored at
    the pivot.
    """
    if path.start_edge != fan.end_edge or path.start_vertex != fan.pivot:
        raise BoundaryMismatch(
            f"path (edge {path.start_edge}, anchor {path.start_vertex}) does not "
            f"continue fan (edge {fan.end_edge}, pivot {fan.pivot})"
        )
    return fan.edge_ids + path.path_edges


# ---------------------------------------------------------------------------
# Multi-step chain validation


def check_non_intersecting(chain: MultiStepChain) -> list[str]:
    """Violations of the non-intersection rule between chain pieces.

    For pieces i < j the rule is: no vertex of fan i appears anywhere in
    piece j, and no interior path edge of piece i appears among piece j's
    edges.  Returns human-readable violation strings; empty means valid.
    O(total size) via precomputed sets.
    """
    pieces = chain.pieces()
    fan_vertices = [set(f.vertices()) for f, _ in pieces]
    interior_edges = [set(p.interior_edges()) for _, p in pieces]
    piece_vertices = [set(f.vertices()) | set(p.vertices()) for f, p in pieces]
    piece_edges = [set(f.edge_ids) | set(p.edges()) for f, p in pieces]
    violations: list[str] = []
    for j in range(len(pieces)):
        for i in range(j):
            shared_v = fan_vertices[i] & piece_vertices[j]
            if shared_v:
                violations.append(
                    f"fan vertices of piece {i} reappear in piece {j}: {sorted(shared_v)}"
                )
            shared_e = interior_edges[i] & piece_edges[j]
            if shared_e:
                violations.append(
                    f"interior path edges of piece {i} reappear in piece {j}: "
                    f"{sorted(shared_e)}"
                )
    return violations


# ---------------------------------------------------------------------------
# DOT rendering


def chain_to_dot(chain: MultiStepChain, state: ColoringState) -> str:
    """Render a multi-step chain as Graphviz DOT.

    Vertices are labeled by id; each chain edge is annotated with the index
    of the piece it first appears in and its current color in `state`.
    Ordering is stable: pieces in chain order, edges in piece order.
    """
    g = state.graph
    owner: dict[int, int] = {}
    order: list[int] = []
    for idx, (fan, path) in enumerate(chain.pieces()):
        for e in fan.edge_ids + path.path_edges:
            if e not in owner:
                owner[e] = idx
                order.append(e)
    nodes: list[int] = []
    seen: set[int] = set()
    for e in order:
        for x in g.endpoints(e):
            if x not in seen:
                seen.add(x)
                nodes.append(x)
    lines = ["graph chain {"]
    for x in nodes:
        lines.append(f'  {x} [label="{x}"];')
    for e in order:
        u, v = g.endpoints(e)
        c = state.color_of(e)
        color_txt = str(c) if c != BLANK else "blank"
        lines.append(f'  {u} -- {v} [label="step {owner[e]} color {color_txt}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
