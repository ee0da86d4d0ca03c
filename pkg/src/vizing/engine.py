"""Randomized multi-step chain search.

This module is the reference implementation of the recoloring engine.  Given
a partial proper edge coloring and an uncolored edge, it finds an augmenting
chain (a multi-step sequence of fans and alternating paths) whose final piece
ends in an edge that can legally receive a color, so that shifting the chain
and coloring its last edge extends the coloring by one edge.

The search is randomized and works in four layers:

- ``random_missing_color`` draws a uniformly random color from the missing
  set of a vertex, optionally excluding one color.
- ``random_fan`` grows a fan (a star of edges around a pivot vertex) one
  random color at a time until it can either be completed directly or handed
  to a path walk.
- ``random_vizing_chain`` combines one fan with one truncated alternating
  path into a single chain candidate, leaving the coloring unchanged.
- ``msva`` (multi-step vizing algorithm) strings candidates together,
  truncating each accepted path at a random length and backtracking whenever
  a new candidate touches an earlier piece, until a candidate's path ends
  early and the whole chain can be completed.

All randomness flows through an explicit random stream, one draw at a time,
in a fixed documented order, which makes runs reproducible and lets the
compiled kernels replay byte-identical executions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import (
    Fan,
    MultiStepChain,
    PathChain,
    StepRecord,
    fan_plus_path_edges,
    reverse_edges,
    walk_alternating_path,
)
from .coloring import BLANK, ColoringState
from .errors import InternalError, PreconditionViolated
from .rng import RngStream
from .stats import (
    BACKWARD_ITERS,
    BACKWARD_STEPS,
    COLOR_CALLS,
    COLOR_DRAWS,
    FAN_RESTARTS,
    FORWARD_ITERS,
    ITERATIONS,
    MAX_CHAIN_EDGES,
    MSVA_CALLS,
    RANDOMCHAIN_CALLS,
    SUM_CHAIN_EDGES,
)

# A single fan construction may restart when it hits the length bound.
# Restarts are geometrically rare; this bound only trips on corrupted state.
_MAX_FAN_RESTARTS = 1_000_000


class VisitedMap:
    """Constant-time marking of vertices and edges by chain step.

    The multi-step search marks the fan vertices and interior path edges of
    every committed step so that later candidates can be tested for overlap.
    Each mark remembers the step that owns it.  Resetting the map and
    dropping the marks of steps ``j..k`` during backtracking are both O(1):

    - a generation counter is bumped on `reset`, invalidating all slots;
    - `live_steps` records how many leading steps are currently committed,
      so truncating to ``j`` steps simply lowers ``live_steps`` to ``j``.

    A slot is live only if its generation matches the current one and its
    owning step is below ``live_steps``.  Committed marks are never
    overwritten while live, because candidates are only committed after
    testing mark-free.
    """

    __slots__ = (
        "_vertex_gen",
        "_vertex_step",
        "_edge_gen",
        "_edge_step",
        "_generation",
        "live_steps",
    )

    def __init__(self, num_vertices: int, num_edges: int) -> None:
        self._vertex_gen = np.zeros(num_vertices, dtype=np.int64)
        self._vertex_step = np.zeros(num_vertices, dtype=np.int64)
        self._edge_gen = np.zeros(num_edges, dtype=np.int64)
        self._edge_step = np.zeros(num_edges, dtype=np.int64)
        self._generation = 0
        self.live_steps = 0

    def reset(self) -> None:
        """Invalidate all marks (O(1))."""
        self._generation += 1
        self.live_steps = 0

    def truncate(self, num_steps: int) -> None:
        """Drop the marks of every step with index >= num_steps (O(1))."""
        self.live_steps = num_steps

    def mark_vertex(self, v: int, step: int) -> None:
        self._vertex_gen[v] = self._generation
        self._vertex_step[v] = step

    def mark_edge(self, e: int, step: int) -> None:
        self._edge_gen[e] = self._generation
        self._edge_step[e] = step

    def vertex_mark(self, v: int) -> int | None:
        """Owning step of a live vertex mark, or None."""
        if self._vertex_gen[v] == self._generation:
            step = int(self._vertex_step[v])
            if step < self.live_steps:
                return step
        return None

    def edge_mark(self, e: int) -> int | None:
        """Owning step of a live edge mark, or None."""
        if self._edge_gen[e] == self._generation:
            step = int(self._edge_step[e])
            if step < self.live_steps:
                return step
        return None

    def commit_step(self, fan: Fan, truncated_path: PathChain, step: int) -> None:
        """Mark one committed piece and make its marks live.

        Marks every vertex of the fan (pivot and leaves) and every interior
        edge of the truncated path (edges other than its first and last),
        then raises ``live_steps`` to ``step + 1``.
        """
        for v in fan.vertices():
            self.mark_vertex(v, step)
        for e in truncated_path.interior_edges():
            self.mark_edge(e, step)
        self.live_steps = step + 1


def first_intersection(
    visited: VisitedMap, fan: Fan, path: PathChain
) -> tuple[int, str, int] | None:
    """First marked element of a chain candidate, in canonical scan order.

    The candidate ``fan + path`` is scanned element by element:

    1. the fan's pivot vertex,
    2. the fan's first leaf,
    3. for each later fan position: the fan edge, then its leaf,
    4. for each path edge (in walk order): the edge, then its far endpoint.

    The candidate's first edge is skipped; it is blank and can never carry a
    mark.  Returns ``(owning step, kind, element)`` where ``kind`` is
    ``"vertex"`` or ``"edge"``, or None when the candidate is mark-free.
    Note the result is the first hit in *candidate* order; its owning step
    need not be the smallest among all hits.
    """
    step = visited.vertex_mark(fan.pivot)
    if step is not None:
        return (step, "vertex", fan.pivot)
    step = visited.vertex_mark(fan.leaves[0])
    if step is not None:
        return (step, "vertex", fan.leaves[0])
    for i in range(1, fan.length):
        step = visited.edge_mark(fan.edge_ids[i])
        if step is not None:
            return (step, "edge", fan.edge_ids[i])
        step = visited.vertex_mark(fan.leaves[i])
        if step is not None:
            return (step, "vertex", fan.leaves[i])
    for t, e in enumerate(path.path_edges):
        step = visited.edge_mark(e)
        if step is not None:
            return (step, "edge", e)
        far = path.walk_vertices[t + 1]
        step = visited.vertex_mark(far)
        if step is not None:
            return (step, "vertex", far)
    return None


@dataclass(frozen=True, slots=True)
class MsvaOutcome:
    """Result of one successful multi-step chain search.

    Attributes:
        chain: the full augmenting chain.  The coloring passed to `msva` has
            already been shifted along every *committed* step of this chain;
            shifting the final fan-plus-path piece and coloring its last
            edge with ``xi`` completes the augmentation (`ColoringState.augment`
            on ``chain.final_piece_edges()`` does both).
        xi: color for the last edge of the chain after shifting.
        iterations: basic-loop passes used by this search (including the
            success pass).
        backward_steps: total committed steps undone by backtracking.
    """

    chain: MultiStepChain
    xi: int
    iterations: int
    backward_steps: int


def random_missing_color(
    state: ColoringState,
    x: int,
    theta: int,
    rng: RngStream,
    stats: np.ndarray,
) -> int:
    """Draw a uniformly random color from M(x) minus one excluded color.

    M(x) is the set of colors in ``1..q`` missing at vertex x.  Colors are
    drawn uniformly from ``1..q`` and rejected until one is missing at x and
    differs from ``theta``; by symmetry the result is uniform on
    ``M(x) \\ {theta}``.  Pass ``theta = 0`` to exclude nothing.

    Parameters:
        state: current coloring.
        x: vertex whose missing set is sampled.
        theta: color to exclude, or 0 for no exclusion.
        rng: random stream (one draw per rejection round).
        stats: counter array (see `vizing.stats`).

    Returns:
        A color in ``M(x) \\ {theta}``.

    Raises:
        InternalError: if an implausibly long rejection streak occurs, which
            indicates corrupted state (callers guarantee the sampled set is
            non-empty, so the success chance per draw is at least 1/q).
    """
    q = state.q
    stats[COLOR_CALLS] += 1
    # With at least one admissible color the chance of this many consecutive
    # rejections is below exp(-64).
    limit = 64 * q // (q - state.graph.max_degree) + 1
    misses = 0
    while True:
        stats[COLOR_DRAWS] += 1
        eta = 1 + rng.uniform_below(q)
        if eta != theta and state.missing_edge[x, eta] == -1:
            return eta
        misses += 1
        if misses > limit:
            raise InternalError(
                "random color draw rejected %d times at vertex %d; "
                "missing-color table is likely corrupted" % (misses, x)
            )


def random_fan(
    state: ColoringState,
    e: int,
    x: int,
    beta: int,
    rng: RngStream,
    k_max: int,
    stats: np.ndarray,
) -> tuple[Fan, int, int]:
    """Grow a random fan around pivot x, starting from the blank edge e.

    The fan starts as the single edge ``e = x y_0`` and is extended one leaf
    at a time: a color ``eta`` is drawn from the missing set of the current
    end leaf, and the edge colored ``eta`` at x becomes the next fan edge.
    Growth stops as soon as one of three events occurs:

    - ``eta`` is missing at x: the full fan is returned and is *happy*
      (after shifting it, its last edge can be colored ``eta`` directly);
    - ``eta`` equals ``beta``: the full fan is returned for a path walk;
    - ``eta`` is missing at an earlier leaf ``y_{j-1}``: the fan is returned
      with index ``j``, so both the full fan and its j-edge prefix end in a
      vertex missing ``eta``.

    If the fan reaches ``k_max`` edges without stopping, the construction
    restarts from scratch (with the ``beta`` exclusion restored).  When
    ``k_max`` exceeds the maximum degree, restarts never occur because a fan
    can have at most ``deg(x)`` edges.

    On the first draw only, ``beta`` is excluded from the sample; this keeps
    the walk colors distinct in the caller.  All fan leaves are distinct: a
    draw equal to an existing fan edge's color is intercepted by the earlier-
    leaf scan, because that color was drawn from (and is still missing at)
    the preceding leaf.

    Parameters:
        state: current coloring (never modified).
        e: blank edge ``x y_0`` the fan starts with.
        x: pivot vertex (an endpoint of e).
        beta: color excluded from the first draw, or 0 for none.
        rng: random stream.
        k_max: fan length bound (must be >= 2).
        stats: counter array.

    Returns:
        Tuple ``(fan, delta, j)`` where ``delta`` is the stopping color and
        ``j`` in ``1..fan.length`` is the prefix index: ``delta`` is missing
        at the end leaf of both the fan and its j-edge prefix.

    Raises:
        PreconditionViolated: if e is not blank, x is not an endpoint of e,
            or ``beta`` is neither 0 nor missing at ``y_0``.
        InternalError: if the construction restarts implausibly often.
    """
    g = state.graph
    if state.edge_color[e] != BLANK:
        raise PreconditionViolated("fan start edge %d is not blank" % e)
    if x == g.eu[e]:
        y0 = int(g.ev[e])
    elif x == g.ev[e]:
        y0 = int(g.eu[e])
    else:
        raise PreconditionViolated(
            "pivot %d is not an endpoint of edge %d" % (x, e)
        )
    if beta != BLANK and state.missing_edge[y0, beta] != -1:
        raise PreconditionViolated(
            "excluded color %d is present at leaf %d" % (beta, y0)
        )

    restarts = 0
    while True:
        edge_ids = [e]
        leaves = [y0]
        theta = beta
        k = 0
        while k < k_max:
            eta = random_missing_color(state, leaves[k], theta, rng, stats)
            theta = BLANK
            if state.missing_edge[x, eta] == -1:
                fan = Fan(pivot=x, leaves=tuple(leaves), edge_ids=tuple(edge_ids))
                return (fan, eta, k + 1)
            if eta == beta:
                fan = Fan(pivot=x, leaves=tuple(leaves), edge_ids=tuple(edge_ids))
                return (fan, eta, k + 1)
            for j in range(1, k + 1):
                if state.missing_edge[leaves[j - 1], eta] == -1:
                    fan = Fan(
                        pivot=x, leaves=tuple(leaves), edge_ids=tuple(edge_ids)
                    )
                    return (fan, eta, j)
            nxt = int(state.missing_edge[x, eta])
            leaves.append(
                int(g.ev[nxt]) if x == g.eu[nxt] else int(g.eu[nxt])
            )
            edge_ids.append(nxt)
            k += 1
        restarts += 1
        stats[FAN_RESTARTS] += 1
        if restarts > _MAX_FAN_RESTARTS:
            raise InternalError(
                "fan construction at pivot %d restarted %d times; "
                "state is likely corrupted" % (x, restarts)
            )


def _singleton_path(fan: Fan) -> PathChain:
    """Path chain consisting of just the fan's last edge."""
    return PathChain(
        start_edge=fan.end_edge,
        start_vertex=fan.pivot,
        path_edges=(),
        walk_vertices=(fan.v_end,),
        alpha=BLANK,
        beta=BLANK,
        reached_cap=False,
    )


def _select_eta(path: PathChain, first_color: int, second_color: int) -> int:
    """Final color for a fan-plus-path candidate.

    The chain's last edge receives ``first_color`` unless the path is longer
    than one edge and its last edge already carries ``first_color`` (read off
    the walk's alternation parity), in which case it receives
    ``second_color``.
    """
    if path.length >= 2 and path.last_edge_color == first_color:
        return second_color
    return first_color


def random_vizing_chain(
    state: ColoringState,
    e: int,
    u: int,
    alpha: int,
    beta: int,
    rng: RngStream,
    k_max: int,
    ell: int,
    stats: np.ndarray,
) -> tuple[Fan, PathChain, int]:
    """Build one fan-plus-path chain candidate starting at a blank edge.

    A fan is grown around pivot ``u`` from edge ``e = uv``.  Depending on how
    the fan stopped, the candidate is completed in one of three ways:

    - the fan is happy: the path is just the fan's last edge and the final
      color is the fan's stopping color;
    - the fan stopped on ``beta``: an (alpha, beta)-alternating path is
      walked from the fan's end leaf in the fan-shifted coloring, truncated
      at ``2*ell`` edges;
    - otherwise a fresh color ``gamma`` is drawn from ``M(u)`` excluding
      ``alpha``, and (gamma, delta)-paths are walked from the end of both the
      full fan and its prefix; the full fan is kept unless its path loops
      back to the pivot, in which case the prefix candidate is kept (at most
      one of the two paths can end at the pivot).

    The coloring is shifted along the fan before each walk and shifted back
    afterwards, so on return the coloring is exactly as it was on entry.

    Parameters:
        state: current coloring (temporarily modified, restored on return).
        e: blank edge ``uv``.
        u: pivot-side endpoint of e.
        alpha, beta: walk colors.  Either both 0 (first chain of a search,
            no constraint), or ``alpha`` is missing at u but present at v
            and ``beta`` is missing at v (the invariant maintained along a
            multi-step chain).
        rng: random stream.
        k_max: fan length bound.
        ell: path length parameter; walks are truncated at ``2*ell`` edges.
        stats: counter array.

    Returns:
        Tuple ``(fan, path, eta)``: a candidate chain ``fan + path`` (the
        path's first edge is the fan's last edge) and the color ``eta`` its
        final edge receives if the candidate is accepted as the last piece.

    Raises:
        PreconditionViolated: if e is not blank, u is not an endpoint, or
            (alpha, beta) violate the pattern above.
        InternalError(NotShiftable): in debug mode, if an internal shift is
            invalid or the entry coloring is not restored exactly.
    """
    stats[RANDOMCHAIN_CALLS] += 1
    calls_before = int(stats[COLOR_CALLS])
    restarts_before = int(stats[FAN_RESTARTS])
    g = state.graph
    if state.edge_color[e] != BLANK:
        raise PreconditionViolated("chain start edge %d is not blank" % e)
    if u == g.eu[e]:
        v = int(g.ev[e])
    elif u == g.ev[e]:
        v = int(g.eu[e])
    else:
        raise PreconditionViolated(
            "pivot %d is not an endpoint of edge %d" % (u, e)
        )
    if alpha == BLANK or beta == BLANK:
        if alpha != BLANK or beta != BLANK:
            raise PreconditionViolated(
                "walk colors must both be 0 or both be set, got (%d, %d)"
                % (alpha, beta)
            )
    else:
        if state.missing_edge[u, alpha] != -1:
            raise PreconditionViolated(
                "color %d is present at pivot %d" % (alpha, u)
            )
        if state.missing_edge[v, alpha] == -1:
            raise PreconditionViolated(
                "color %d is missing at both endpoints of edge %d" % (alpha, e)
            )
        if state.missing_edge[v, beta] != -1:
            raise PreconditionViolated(
                "color %d is present at vertex %d" % (beta, v)
            )

    if state.debug:
        entry_colors = state.edge_color.tobytes()
        entry_table = state.missing_edge.tobytes()

    cap = 2 * ell
    fan_full, delta, j = random_fan(state, e, u, beta, rng, k_max, stats)

    if state.missing_edge[u, delta] == -1:
        # Happy fan: delta is missing at the pivot and at the fan's end leaf.
        result = (fan_full, _singleton_path(fan_full), delta)
    elif delta == beta:
        edges = fan_full.edge_ids
        state.shift(edges)
        path = walk_alternating_path(
            state, fan_full.end_edge, fan_full.v_end, alpha, beta, cap
        )
        state.shift(reverse_edges(edges))
        result = (fan_full, path, _select_eta(path, alpha, beta))
    else:
        gamma = random_missing_color(state, u, alpha, rng, stats)
        fan_prefix = fan_full.prefix(j)

        state.shift(fan_full.edge_ids)
        path_full = walk_alternating_path(
            state, fan_full.end_edge, fan_full.v_end, gamma, delta, cap
        )
        state.shift(reverse_edges(fan_full.edge_ids))

        state.shift(fan_prefix.edge_ids)
        path_prefix = walk_alternating_path(
            state, fan_prefix.end_edge, fan_prefix.v_end, gamma, delta, cap
        )
        state.shift(reverse_edges(fan_prefix.edge_ids))

        if path_full.end_vertex != u:
            fan, path = fan_full, path_full
        else:
            fan, path = fan_prefix, path_prefix
        result = (fan, path, _select_eta(path, gamma, delta))

    if state.debug:
        if (
            state.edge_color.tobytes() != entry_colors
            or state.missing_edge.tobytes() != entry_table
        ):
            raise InternalError(
                "chain candidate construction failed to restore the coloring"
            )
    # Per-call work bound: one fan attempt costs at most k_max color draws,
    # each restart adds another attempt, and the fresh-color draw adds one.
    color_calls = int(stats[COLOR_CALLS]) - calls_before
    restarts = int(stats[FAN_RESTARTS]) - restarts_before
    if color_calls > k_max * (restarts + 1) + 1:
        raise InternalError(
            "chain candidate used %d color draws with %d restarts "
            "(bound %d)" % (color_calls, restarts, k_max * (restarts + 1) + 1)
        )
    return result


def _piece_edges(step: StepRecord) -> tuple[int, ...]:
    return fan_plus_path_edges(step.fan, step.truncated_path)


def msva(
    state: ColoringState,
    e: int,
    x: int,
    k_max: int,
    ell: int,
    rng: RngStream,
    stats: np.ndarray,
    visited: VisitedMap,
    trace=None,
) -> MsvaOutcome:
    """Multi-step chain search for one uncolored edge.

    Starting from a first chain candidate at ``e``, the basic loop below
    runs until a candidate's path is shorter than ``2*ell`` edges, which
    means the walk ended naturally and the candidate can finish the chain:

    - *success*: if the current candidate's path is shorter than ``2*ell``,
      return the committed steps plus this final piece;
    - *forward*: otherwise truncate the path at a uniformly random length in
      ``ell..2*ell-1``, shift the coloring along the truncated piece, mark
      its fan vertices and interior path edges, and build the next candidate
      from the truncated path's last edge (walk colors carried over from the
      truncation point);
    - *backward*: if the new candidate touches a marked element, undo the
      shifts of every step from the owner ``j`` of the first such element
      onward, drop their marks, and resume with step j's pieces as the
      candidate (its full, untruncated path).

    On return the coloring has been shifted along every committed step;
    augmenting the final piece with the returned color completes the
    extension.  Backtracking restores the coloring exactly, so a failed
    direction leaves no residue.

    Parameters:
        state: current coloring; mutated as described above.
        e: uncolored edge to extend the coloring to.
        x: endpoint of e chosen as the first pivot.
        k_max: fan length bound.
        ell: path truncation parameter.
        rng: random stream.
        stats: counter array.
        visited: scratch marking structure (reset here; reusable across
            calls).
        trace: optional callable receiving one tuple per event:
            ``("forward", step, ell_prime, alpha, beta)``,
            ``("backward", j, steps_removed)`` or
            ``("success", num_steps, total_edges, xi)``.

    Returns:
        An `MsvaOutcome` with the chain, its final color, and per-call
        iteration counts.

    Raises:
        InternalError: if a candidate's path ends at its own pivot while
            shorter than ``2*ell`` (provably impossible for valid input),
            or in debug mode when a backtrack fails to restore the coloring
            or a same-step intersection is not a fan vertex.
    """
    stats[MSVA_CALLS] += 1
    iters_before = int(stats[ITERATIONS])
    back_before = int(stats[BACKWARD_STEPS])
    visited.reset()
    cap = 2 * ell
    debug = state.debug

    fan, path, xi = random_vizing_chain(
        state, e, x, BLANK, BLANK, rng, k_max, ell, stats
    )
    steps: list[StepRecord] = []
    snapshots: list[tuple[bytes, bytes]] = []

    while True:
        stats[ITERATIONS] += 1
        if path.length < cap:
            chain = MultiStepChain(
                start_edge=e,
                start_vertex=x,
                steps=tuple(steps),
                final_fan=fan,
                final_path=path,
            )
            total = chain.total_edges
            if total > stats[MAX_CHAIN_EDGES]:
                stats[MAX_CHAIN_EDGES] = total
            stats[SUM_CHAIN_EDGES] += total
            if trace is not None:
                trace(("success", len(steps), total, xi))
            return MsvaOutcome(
                chain=chain,
                xi=xi,
                iterations=int(stats[ITERATIONS]) - iters_before,
                backward_steps=int(stats[BACKWARD_STEPS]) - back_before,
            )

        # Forward: commit a truncated piece and probe beyond it.
        k = len(steps)
        ell_prime = ell + rng.uniform_below(ell)
        trunc = path.prefix(ell_prime)
        beta_k = trunc.last_edge_color
        alpha_k = trunc.beta if beta_k == trunc.alpha else trunc.alpha
        if debug:
            snapshots.append(
                (state.edge_color.tobytes(), state.missing_edge.tobytes())
            )
        step = StepRecord(
            fan=fan,
            truncated_path=trunc,
            full_path=path,
            alpha=alpha_k,
            beta=beta_k,
            index=k,
        )
        state.shift(_piece_edges(step))
        visited.commit_step(fan, trunc, k)
        steps.append(step)
        if trace is not None:
            trace(("forward", k, ell_prime, alpha_k, beta_k))

        uv = trunc.last_edge
        v_end = trunc.end_vertex
        g = state.graph
        u = int(g.ev[uv]) if v_end == g.eu[uv] else int(g.eu[uv])
        cand_fan, cand_path, eta = random_vizing_chain(
            state, uv, u, alpha_k, beta_k, rng, k_max, ell, stats
        )

        hit = first_intersection(visited, cand_fan, cand_path)
        if hit is not None:
            j, kind, element = hit
            if debug and j == len(steps) - 1:
                # A same-step intersection must be a vertex of that step's fan.
                if kind != "vertex" or element not in steps[j].fan.vertices():
                    raise InternalError(
                        "same-step intersection at %s %d is not a fan vertex"
                        % (kind, element)
                    )
            removed = len(steps) - j
            stats[BACKWARD_ITERS] += 1
            stats[BACKWARD_STEPS] += removed
            for s in reversed(steps[j:]):
                state.shift(reverse_edges(_piece_edges(s)))
            resume = steps[j]
            del steps[j:]
            visited.truncate(j)
            if debug:
                want = snapshots[j]
                del snapshots[j:]
                if (
                    state.edge_color.tobytes() != want[0]
                    or state.missing_edge.tobytes() != want[1]
                ):
                    raise InternalError(
                        "backtrack to step %d did not restore the coloring" % j
                    )
            fan = resume.fan
            path = resume.full_path
            xi = (
                path.beta
                if path.last_edge_color == path.alpha
                else path.alpha
            )
            if trace is not None:
                trace(("backward", j, removed))
        elif 2 <= cand_path.length < cap and cand_path.end_vertex == cand_fan.pivot:
            raise InternalError(
                "short candidate path returned to its pivot at edge %d" % uv
            )
        else:
            stats[FORWARD_ITERS] += 1
            fan = cand_fan
            path = cand_path
            xi = eta
