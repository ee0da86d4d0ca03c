"""Mutable partial edge colorings with O(1) lookups, shifting, augmenting.

A :class:`ColoringState` pairs an immutable graph with a proper partial
edge coloring.  Colors are ``1..q``; ``0`` encodes blank.  Besides the
per-edge color array it maintains, per vertex ``x`` and color ``alpha``,
the incident edge currently colored ``alpha`` (or -1), so membership in
the missing set M(x) and walking along color-alternating paths are O(1).

The two mutators are the chain primitives the whole algorithm is built
from:

* :meth:`ColoringState.shift` moves every color one edge toward the start
  of a chain and blanks the last edge;
* :meth:`ColoringState.augment` shifts and then colors the freed last
  edge, completing one augmentation step.

Release-mode shifts trust their callers (the engine constructs chains
that are shiftable by design); constructing the state with ``debug=True``
validates every shift and re-checks properness around the touched
vertices.

:meth:`ColoringState.verify_proper` is an independent oracle: it scans
only ``edge_color`` and the graph, never the incremental lookup table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InvalidFinalColor,
    NotShiftable,
    PreconditionViolated,
    QTooSmall,
)
from .graph import Graph

__all__ = [
    "ColoringState",
    "ProperReport",
    "rebuild_missing_table",
    "format_coloring",
    "parse_coloring",
]

BLANK = 0


@dataclass
class ProperReport:
    """Result of an exhaustive properness scan.

    Attributes
    ----------
    proper : bool
        True iff no vertex has two incident edges of equal non-blank color.
    violations : list of (vertex, color, edge ids)
        One entry per (vertex, color) pair carried by more than one edge.
    colored : int
        Number of non-blank edges.
    """

    proper: bool
    violations: list[tuple[int, int, tuple[int, ...]]]
    colored: int


class ColoringState:
    """A proper partial edge coloring of a fixed graph with q colors.

    Parameters
    ----------
    g : Graph
        Host graph; never mutated.
    q : int
        Number of colors, ``q >= max_degree + 1``.
    debug : bool, optional
        Validate every shift (shiftability and resulting properness around
        the touched vertices).  Off by default: the engine's chains are
        shiftable by construction and validation would break the linear
        time bound.

    Raises
    ------
    QTooSmall
        If ``q <= max_degree``.
    """

    __slots__ = ("graph", "q", "edge_color", "missing_edge", "uncolored_count", "debug")

    def __init__(self, g: Graph, q: int, debug: bool = False) -> None:
        if q < g.max_degree + 1:
            raise QTooSmall(
                f"q={q} but max degree {g.max_degree} requires q >= {g.max_degree + 1}"
            )
        self.graph = g
        self.q = int(q)
        self.edge_color = np.zeros(g.m, dtype=np.int64)
        # missing_edge[x, a] = incident edge of x colored a, else -1.
        # Column 0 (blank) is never written and stays -1.
        self.missing_edge = np.full((g.n, q + 1), -1, dtype=np.int64)
        self.uncolored_count = g.m
        self.debug = bool(debug)

    @classmethod
    def from_arrays(
        cls,
        g: Graph,
        q: int,
        edge_color: np.ndarray,
        missing_edge: np.ndarray,
        debug: bool = False,
    ) -> "ColoringState":
        """Adopt arrays produced elsewhere (e.g. by the compiled driver).

        `missing_edge` may be flat of length ``n*(q+1)`` or already
        shaped ``(n, q+1)``; both are reshaped without copying.
        """
        state = cls(g, q, debug=debug)
        ec = np.ascontiguousarray(edge_color, dtype=np.int64)
        if ec.shape != (g.m,):
            raise PreconditionViolated(f"edge_color must have shape ({g.m},)")
        tbl = np.ascontiguousarray(missing_edge, dtype=np.int64).reshape(g.n, q + 1)
        state.edge_color = ec
        state.missing_edge = tbl
        state.uncolored_count = int((ec == BLANK).sum())
        return state

    def copy(self) -> "ColoringState":
        """Deep copy (shares the immutable graph)."""
        dup = ColoringState.__new__(ColoringState)
        dup.graph = self.graph
        dup.q = self.q
        dup.edge_color = self.edge_color.copy()
        dup.missing_edge = self.missing_edge.copy()
        dup.uncolored_count = self.uncolored_count
        dup.debug = self.debug
        return dup

    # -- lookups ----------------------------------------------------------

    def color_of(self, e: int) -> int:
        """Color of edge `e`, or 0 if blank."""
        return int(self.edge_color[e])

    def is_missing(self, x: int, alpha: int) -> bool:
        """True iff no edge at `x` carries color `alpha` (1 <= alpha <= q)."""
        return self.missing_edge[x, alpha] == -1

    def missing_partner(self, x: int, alpha: int) -> int | None:
        """The neighbor y with the edge xy colored `alpha`, or None.

        None corresponds exactly to ``is_missing(x, alpha)``.  (A blank
        sentinel vertex id would collide with vertex 0, hence None.)
        """
        e = int(self.missing_edge[x, alpha])
        if e == -1:
            return None
        u, v = self.graph.endpoints(e)
        return v if u == x else u

    def missing_colors(self, x: int) -> list[int]:
        """All colors missing at `x`, ascending (O(q); for tests/debug)."""
        row = self.missing_edge[x]
        return [a for a in range(1, self.q + 1) if row[a] == -1]

    # -- mutation ---------------------------------------------------------

    def _recolor(self, e: int, c_new: int) -> None:
        """Set edge `e` to `c_new`, maintaining the lookup table.

        The clear is guarded because mid-shift a color can legitimately
        sit on two adjacent chain edges for a moment; only entries still
        pointing at `e` may be dropped.
        """
        ec = self.edge_color
        tbl = self.missing_edge
        c_old = int(ec[e])
        if c_old == c_new:
            return
        a = int(self.graph.eu[e])
        b = int(self.graph.ev[e])
        if c_old != BLANK:
            if tbl[a, c_old] == e:
                tbl[a, c_old] = -1
            if tbl[b, c_old] == e:
                tbl[b, c_old] = -1
            if c_new == BLANK:
                self.uncolored_count += 1
        elif c_new != BLANK:
            self.uncolored_count -= 1
        if c_new != BLANK:
            tbl[a, c_new] = e
            tbl[b, c_new] = e
        ec[e] = c_new

    def shift(self, chain: Sequence[int]) -> None:
        """Shift colors one edge toward the start of `chain`; blank the end.

        Parameters
        ----------
        chain : sequence of edge ids
            A shiftable chain: consecutive edges adjacent, first edge
            blank, and the shifted coloring proper.  Validated only in
            debug mode.

        Raises
        ------
        PreconditionViolated
            If the chain is empty.
        NotShiftable
            In debug mode, if the chain is malformed or the shift breaks
            properness.
        """
        k = len(chain)
        if k == 0:
            raise PreconditionViolated("cannot shift an empty chain")
        if self.debug:
            self._debug_check_chain(chain)
        ec = self.edge_color
        for i in range(k - 1):
            self._recolor(chain[i], int(ec[chain[i + 1]]))
        self._recolor(chain[k - 1], BLANK)
        if self.debug:
            self._debug_check_proper_around(chain)

    def augment(self, chain: Sequence[int], xi: int) -> None:
        """Shift `chain`, then color its last edge with `xi`.

        Raises
        ------
        InvalidFinalColor
            If `xi` is already present at either endpoint of the last
            edge after the shift.  This check is cheap and always on; it
            firing means the engine produced a non-happy chain.
        """
        if not 1 <= xi <= self.q:
            raise PreconditionViolated(f"final color {xi} outside 1..{self.q}")
        self.shift(chain)
        e = chain[-1]
        a = int(self.graph.eu[e])
        b = int(self.graph.ev[e])
        if self.missing_edge[a, xi] != -1 or self.missing_edge[b, xi] != -1:
            raise InvalidFinalColor(
                f"color {xi} not free at both endpoints ({a},{b}) of edge {e}"
            )
        self._recolor(e, xi)

    # -- debug validation -------------------------------------------------

    def _debug_check_chain(self, chain: Sequence[int]) -> None:
        if len(set(chain)) != len(chain):
            raise NotShiftable("chain repeats an edge")
        if self.edge_color[chain[0]] != BLANK:
            raise NotShiftable(f"first chain edge {chain[0]} is not blank")
        for i in range(len(chain) - 1):
            u1, v1 = self.graph.endpoints(chain[i])
            u2, v2 = self.graph.endpoints(chain[i + 1])
            if not {u1, v1} & {u2, v2}:
                raise NotShiftable(
                    f"consecutive chain edges {chain[i]} and {chain[i + 1]} not adjacent"
                )

    def _debug_check_proper_around(self, chain: Sequence[int]) -> None:
        touched: set[int] = set()
        for e in chain:
            u, v = self.graph.endpoints(e)
            touched.add(u)
            touched.add(v)
        ec = self.edge_color
        for x in sorted(touched):
            seen: set[int] = set()
            for _, e in self.graph.adjacency[x]:
                c = int(ec[e])
                if c == BLANK:
                    continue
                if c in seen:
                    raise NotShiftable(f"shift left two edges colored {c} at vertex {x}")
                seen.add(c)

    # -- verification -----------------------------------------------------

    def verify_proper(self) -> ProperReport:
        """Exhaustively re-check properness from edge colors alone.

        Never consults the incremental lookup table, so it doubles as an
        oracle for it.  O(m log m).
        """
        g = self.graph
        ec = self.edge_color
        mask = ec != BLANK
        colored = int(mask.sum())
        ids = np.flatnonzero(mask)
        width = np.int64(self.q + 1)
        keys = np.concatenate((g.eu[ids] * width + ec[ids], g.ev[ids] * width + ec[ids]))
        eids = np.concatenate((ids, ids))
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        eids = eids[order]
        violations: list[tuple[int, int, tuple[int, ...]]] = []
        i = 0
        total = keys.shape[0]
        while i < total:
            j = i + 1
            while j < total and keys[j] == keys[i]:
                j += 1
            if j - i > 1:
                vertex = int(keys[i] // width)
                color = int(keys[i] % width)
                violations.append((vertex, color, tuple(sorted(int(e) for e in eids[i:j]))))
            i = j
        return ProperReport(proper=not violations, violations=violations, colored=colored)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoringState):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.q == other.q
            and bool(np.array_equal(self.edge_color, other.edge_color))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"ColoringState(n={self.graph.n}, m={self.graph.m}, q={self.q}, "
            f"uncolored={self.uncolored_count})"
        )


def rebuild_missing_table(state: ColoringState) -> np.ndarray:
    """Recompute the (vertex, color) -> edge table from scratch.

    Oracle for the incrementally maintained table: after any operation
    sequence the rebuild must equal ``state.missing_edge`` exactly.
    """
    g = state.graph
    tbl = np.full((g.n, state.q + 1), -1, dtype=np.int64)
    ec = state.edge_color
    for e in range(g.m):
        c = int(ec[e])
        if c != BLANK:
            tbl[int(g.eu[e]), c] = e
            tbl[int(g.ev[e]), c] = e
    return tbl


# ---------------------------------------------------------------------------
# Coloring text format


def format_coloring(state: ColoringState) -> str:
    """Serialize a complete coloring: header ``# q=<q>``, then ``u v c``
    per edge in edge-id order (endpoints ascending).

    Raises
    ------
    ValueError
        If any edge is still blank; only complete colorings serialize.
    """
    if state.uncolored_count:
        raise ValueError(
            f"cannot serialize a partial coloring ({state.uncolored_count} blank edges)"
        )
    g = state.graph
    ec = state.edge_color
    parts = [f"# q={state.q}\n"]
    for e in range(g.m):
        parts.append(f"{g.eu[e]} {g.ev[e]} {ec[e]}\n")
    return "".join(parts)


def parse_coloring(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    """Parse the coloring format back into ``(q, rows)``.

    Each row is ``(u, v, c)`` in file order.  Structural validation
    against a graph (matching edges, color range, properness) is the
    caller's job.

    Raises
    ------
    ValueError
        On malformed syntax, naming the line.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("# q="):
        raise ValueError("line 1: expected header '# q=<q>'")
    try:
        q = int(lines[0][4:])
    except ValueError as exc:
        raise ValueError("line 1: expected header '# q=<q>'") from exc
    if q < 1:
        raise ValueError("line 1: q must be >= 1")
    rows: list[tuple[int, int, int]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            continue
        fields = line.split(" ")
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected 'u v c', got {line!r}")
        try:
            u, v, c = (int(f) for f in fields)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected 'u v c', got {line!r}") from exc
        rows.append((u, v, c))
    return q, rows
