"""Immutable simple graphs: construction, text format, seeded generators.

Representation
--------------
Vertices are ``0..n-1`` and edge ids ``0..m-1``, assigned in input order.
Endpoints are stored as two parallel ``int64`` arrays ``eu``/``ev`` with
``eu[e] < ev[e]``; adjacency lists are derived on demand.  A ``Graph`` is
immutable after construction, so one graph can host many independent
coloring runs.

Text format
-----------
ASCII, LF line endings.  Lines starting ``'#'`` are comments.  The first
data line is ``"n m"``; exactly ``m`` data lines ``"u v"`` follow, fields
separated by single spaces.  The writer is bit-exact: no comments, no
trailing whitespace, final newline present.

Generators
----------
``cycle``, ``star`` and ``complete_bipartite`` are deterministic;
``erdos_renyi_m`` and ``near_regular`` draw from an explicit
:class:`~vizing.rng.RngStream`.  ``near_regular(n, d)`` pairs ``n*d``
vertex stubs after a seeded shuffle and then repairs the handful of loops
and duplicate pairs by switching ends with randomly chosen good pairs, so
every vertex keeps degree exactly ``d``.
"""

from __future__ import annotations

import operator
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import DuplicateEdge, Infeasible, SelfLoop, VertexOutOfRange
from .rng import RngStream

__all__ = [
    "Graph",
    "build_graph",
    "parse_edge_list",
    "format_edge_list",
    "read_edge_list",
    "write_edge_list",
    "generate",
    "gen_cycle",
    "gen_star",
    "gen_complete_bipartite",
    "gen_erdos_renyi_m",
    "gen_near_regular",
    "GENERATOR_KINDS",
]

# Attempts per bad pair when repairing the stub pairing of near_regular.
_REPAIR_TRIES = 512


class Graph:
    """A simple undirected graph, immutable after construction.

    Do not call the constructor directly with unvalidated input; use
    :func:`build_graph`, :func:`parse_edge_list` or a generator.  The
    constructor assumes the endpoint arrays contain no self-loops and no
    duplicate pairs and only normalizes and freezes them.
    """

    __slots__ = ("n", "m", "eu", "ev", "degree", "max_degree", "_adjacency")

    def __init__(self, n: int, eu: np.ndarray, ev: np.ndarray) -> None:
        lo = np.minimum(eu, ev).astype(np.int64)
        hi = np.maximum(eu, ev).astype(np.int64)
        lo.setflags(write=False)
        hi.setflags(write=False)
        degree = (
            np.bincount(lo, minlength=n) + np.bincount(hi, minlength=n)
        ).astype(np.int64)
        degree.setflags(write=False)
        self.n = int(n)
        self.m = int(lo.shape[0])
        self.eu = lo
        self.ev = hi
        self.degree = degree
        self.max_degree = int(degree.max()) if n > 0 else 0
        self._adjacency: tuple | None = None

    @property
    def adjacency(self) -> tuple:
        """Per vertex, the tuple of ``(neighbor, edge_id)`` in edge-id order.

        Built lazily; large benchmark runs never touch it.
        """
        if self._adjacency is None:
            lists: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
            eu, ev = self.eu, self.ev
            for e in range(self.m):
                u = int(eu[e])
                v = int(ev[e])
                lists[u].append((v, e))
                lists[v].append((u, e))
            self._adjacency = tuple(tuple(entries) for entries in lists)
        return self._adjacency

    def endpoints(self, e: int) -> tuple[int, int]:
        """Return the endpoints ``(u, v)`` of edge `e`, with ``u < v``."""
        return (int(self.eu[e]), int(self.ev[e]))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Iterate over endpoint pairs in edge-id order."""
        for e in range(self.m):
            yield (int(self.eu[e]), int(self.ev[e]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and bool(np.array_equal(self.eu, other.eu))
            and bool(np.array_equal(self.ev, other.ev))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


def _validate_pairs(
    n: int, pairs: Sequence, label: Callable[[int], str]
) -> tuple[np.ndarray, np.ndarray]:
    """Check a sequence of endpoint pairs and return normalized arrays.

    `label` maps a pair index to the name used in error messages ("pair 3",
    "line 17", ...).
    """
    m = len(pairs)
    eu = np.empty(m, dtype=np.int64)
    ev = np.empty(m, dtype=np.int64)
    seen: set[int] = set()
    for i, pair in enumerate(pairs):
        try:
            a, b = pair
            u = operator.index(a)
            v = operator.index(b)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{label(i)}: expected a pair of integers") from exc
        if not (0 <= u < n) or not (0 <= v < n):
            bad = u if not (0 <= u < n) else v
            raise VertexOutOfRange(
                f"{label(i)}: vertex {bad} out of range 0..{n - 1} for ({u},{v})"
            )
        if u == v:
            raise SelfLoop(f"{label(i)}: self-loop at vertex {u}")
        lo, hi = (u, v) if u < v else (v, u)
        key = lo * n + hi
        if key in seen:
            raise DuplicateEdge(f"{label(i)}: duplicate edge ({lo},{hi})")
        seen.add(key)
        eu[i] = lo
        ev[i] = hi
    return eu, ev


def _validate_arrays(n: int, eu: np.ndarray, ev: np.ndarray) -> None:
    """Vectorized twin of `_validate_pairs` for ndarray input."""
    if eu.shape != ev.shape or eu.ndim != 1:
        raise ValueError("endpoint arrays must be 1-d and of equal length")
    if eu.shape[0] == 0:
        return
    out = (eu < 0) | (eu >= n) | (ev < 0) | (ev >= n)
    if out.any():
        i = int(np.flatnonzero(out)[0])
        raise VertexOutOfRange(
            f"pair {i}: vertex out of range 0..{n - 1} for ({int(eu[i])},{int(ev[i])})"
        )
    loops = eu == ev
    if loops.any():
        i = int(np.flatnonzero(loops)[0])
        raise SelfLoop(f"pair {i}: self-loop at vertex {int(eu[i])}")
    lo = np.minimum(eu, ev)
    hi = np.maximum(eu, ev)
    keys = lo * np.int64(n) + hi
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    eq = sk[1:] == sk[:-1]
    if eq.any():
        i = int(order[1:][eq].min())
        raise DuplicateEdge(f"pair {i}: duplicate edge ({int(lo[i])},{int(hi[i])})")


def build_graph(n: int, edges) -> Graph:
    """Build a :class:`Graph` from an explicit edge list.

    Parameters
    ----------
    n : int
        Number of vertices; endpoints must lie in ``0..n-1``.
    edges : sequence of (int, int), or int ndarray of shape (m, 2)
        Endpoint pairs in the order edge ids are to be assigned.  A pair
        may appear at most once in either orientation.

    Returns
    -------
    Graph

    Raises
    ------
    SelfLoop, DuplicateEdge, VertexOutOfRange
        Naming the offending pair.
    ValueError
        For negative `n` or malformed pairs.
    """
    n = operator.index(n)
    if n < 0:
        raise ValueError(f"vertex count must be >= 0, got {n}")
    if isinstance(edges, np.ndarray):
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise ValueError("edge array must have shape (m, 2)")
        eu = edges[:, 0].astype(np.int64)
        ev = edges[:, 1].astype(np.int64)
        _validate_arrays(n, eu, ev)
    else:
        eu, ev = _validate_pairs(n, edges, lambda i: f"pair {i}")
    return Graph(n, eu, ev)


# ---------------------------------------------------------------------------
# Text format


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format into a :class:`Graph`.

    Raises
    ------
    ValueError
        On malformed syntax, naming the line.
    SelfLoop, DuplicateEdge, VertexOutOfRange
        On semantically invalid edges, naming the line.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header: tuple[int, int] | None = None
    pairs: list[tuple[int, int]] = []
    line_of: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            continue
        fields = line.split(" ")
        if len(fields) != 2:
            raise ValueError(
                f"line {lineno}: expected two space-separated integers, got {line!r}"
            )
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise ValueError(
                f"line {lineno}: expected two space-separated integers, got {line!r}"
            ) from exc
        if header is None:
            if a < 0 or b < 0:
                raise ValueError(f"line {lineno}: header 'n m' must be non-negative")
            header = (a, b)
        else:
            pairs.append((a, b))
            line_of.append(lineno)
            if len(pairs) > header[1]:
                raise ValueError(
                    f"line {lineno}: more than the {header[1]} edges announced in the header"
                )
    if header is None:
        raise ValueError("empty input: missing 'n m' header line")
    n, m = header
    if len(pairs) != m:
        raise ValueError(f"expected {m} edge lines, found {len(pairs)}")
    eu, ev = _validate_pairs(n, pairs, lambda i: f"line {line_of[i]}")
    return Graph(n, eu, ev)


def format_edge_list(g: Graph) -> str:
    """Serialize `g` to the canonical edge-list text (bit-exact writer)."""
    parts = [f"{g.n} {g.m}\n"]
    eu, ev = g.eu, g.ev
    for e in range(g.m):
        parts.append(f"{eu[e]} {ev[e]}\n")
    return "".join(parts)


def read_edge_list(path) -> Graph:
    """Read and parse an edge-list file."""
    with open(path, "r", encoding="ascii") as f:
        return parse_edge_list(f.read())


def write_edge_list(g: Graph, path) -> None:
    """Write `g` to `path` in the canonical edge-list format."""
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_edge_list(g))


# ---------------------------------------------------------------------------
# Generators


def gen_cycle(n: int) -> Graph:
    """Cycle on `n` vertices (``n >= 3``); edges ``(i, i+1)`` then ``(0, n-1)``."""
    if n < 3:
        raise Infeasible(f"cycle needs n >= 3, got {n}")
    eu = np.empty(n, dtype=np.int64)
    ev = np.empty(n, dtype=np.int64)
    eu[: n - 1] = np.arange(n - 1)
    ev[: n - 1] = np.arange(1, n)
    eu[n - 1] = 0
    ev[n - 1] = n - 1
    return Graph(n, eu, ev)


def gen_star(d: int) -> Graph:
    """Star with center 0 and `d` leaves ``1..d`` (``d >= 0``)."""
    if d < 0:
        raise Infeasible(f"star needs d >= 0, got {d}")
    eu = np.zeros(d, dtype=np.int64)
    ev = np.arange(1, d + 1, dtype=np.int64)
    return Graph(d + 1, eu, ev)


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """Complete bipartite graph on parts ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise Infeasible(f"complete_bipartite needs a, b >= 1, got ({a},{b})")
    left = np.repeat(np.arange(a, dtype=np.int64), b)
    right = np.tile(np.arange(a, a + b, dtype=np.int64), a)
    return Graph(a + b, left, right)


def gen_erdos_renyi_m(n: int, m_target: int, rng: RngStream) -> Graph:
    """Uniform simple graph with `n` vertices and exactly `m_target` edges.

    Vertex pairs are drawn uniformly and rejected while loops or repeats;
    edge ids follow acceptance order.

    Raises
    ------
    Infeasible
        If ``m_target > n*(n-1)/2`` or the rejection budget is exhausted
        (only plausible when `m_target` is close to the maximum).
    """
    if n < 0 or m_target < 0:
        raise Infeasible("erdos_renyi_m needs n >= 0 and m_target >= 0")
    max_m = n * (n - 1) // 2
    if m_target > max_m:
        raise Infeasible(
            f"erdos_renyi_m: m_target {m_target} exceeds maximum {max_m} for n={n}"
        )
    eu = np.empty(m_target, dtype=np.int64)
    ev = np.empty(m_target, dtype=np.int64)
    seen: set[int] = set()
    count = 0
    budget = 100 * m_target + 1000
    attempts = 0
    while count < m_target:
        attempts += 1
        if attempts > budget:
            raise Infeasible(
                "erdos_renyi_m: rejection budget exhausted; "
                "retry with another seed or fewer edges"
            )
        u = rng.uniform_below(n)
        v = rng.uniform_below(n)
        if u == v:
            continue
        lo, hi = (u, v) if u < v else (v, u)
        key = lo * n + hi
        if key in seen:
            continue
        seen.add(key)
        eu[count] = lo
        ev[count] = hi
        count += 1
    return Graph(n, eu, ev)


def gen_near_regular(n: int, d: int, rng: RngStream) -> Graph:
    """Random `d`-regular-ish simple graph by stub pairing with repair.

    ``n*d`` vertex stubs are shuffled and paired consecutively.  Pairs that
    form loops or duplicates are then repaired by switching ends with a
    randomly drawn good pair, so the final graph is simple and every vertex
    has degree exactly `d` (in particular all degrees lie in ``{d-1, d}``).

    Raises
    ------
    Infeasible
        If ``n*d`` is odd, ``d >= n``, or the repair budget for some bad
        pair is exhausted (retry with another seed).
    """
    if n < 1 or d < 0:
        raise Infeasible(f"near_regular needs n >= 1 and d >= 0, got ({n},{d})")
    if d >= n:
        raise Infeasible(f"near_regular needs d < n for a simple graph, got ({n},{d})")
    if (n * d) % 2 != 0:
        raise Infeasible(f"near_regular needs n*d even, got n={n}, d={d}")
    num_pairs = n * d // 2
    if num_pairs == 0:
        return Graph(n, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))

    from . import _kernels  # deferred: first use triggers numba compilation

    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    state = np.array(rng.state, dtype=np.uint64)
    _kernels.shuffle_int64(stubs, state)
    rng.set_state(tuple(int(w) for w in state))

    pa = stubs[0::2].copy()
    pb = stubs[1::2].copy()
    keys = np.minimum(pa, pb) * np.int64(n) + np.maximum(pa, pb)
    loop_mask = pa == pb
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    dup_mask = np.zeros(num_pairs, dtype=bool)
    dup_mask[order[1:]] = sk[1:] == sk[:-1]
    is_bad = loop_mask | dup_mask
    bad_idx = np.flatnonzero(is_bad)

    # Membership in the current set of good pair keys: the frozen sorted
    # array of originally-good keys, patched by two small churn sets.
    sorted_good = np.sort(keys[~is_bad])
    added: set[int] = set()
    removed: set[int] = set()

    def key_is_good(k: int) -> bool:
        if k in added:
            return True
        if k in removed:
            return False
        pos = int(np.searchsorted(sorted_good, k))
        return pos < sorted_good.shape[0] and int(sorted_good[pos]) == k

    def mark_added(k: int) -> None:
        if k in removed:
            removed.discard(k)
        else:
            added.add(k)

    def mark_removed(k: int) -> None:
        if k in added:
            added.discard(k)
        else:
            removed.add(k)

    for idx in bad_idx:
        idx = int(idx)
        a = int(pa[idx])
        b = int(pb[idx])
        fixed = False
        for _ in range(_REPAIR_TRIES):
            t = rng.uniform_below(num_pairs)
            if t == idx or is_bad[t]:
                continue
            c = int(pa[t])
            d2 = int(pb[t])
            # Propose replacing (a,b),(c,d2) by (a,d2),(c,b).
            if a == d2 or c == b:
                continue
            k1 = a * n + d2 if a < d2 else d2 * n + a
            k2 = c * n + b if c < b else b * n + c
            if k1 == k2 or key_is_good(k1) or key_is_good(k2):
                continue
            mark_removed(int(keys[t]))
            mark_added(k1)
            mark_added(k2)
            pb[idx] = d2
            pb[t] = b
            keys[idx] = k1
            keys[t] = k2
            is_bad[idx] = False
            fixed = True
            break
        if not fixed:
            raise Infeasible(
                "near_regular: pairing repair budget exhausted; retry with another seed"
            )

    _validate_arrays(n, pa, pb)
    return Graph(n, pa, pb)


GENERATOR_KINDS = ("near_regular", "erdos_renyi_m", "complete_bipartite", "cycle", "star")

_KIND_PARAMS: dict[str, tuple[str, ...]] = {
    "near_regular": ("n", "d"),
    "erdos_renyi_m": ("n", "m_target"),
    "complete_bipartite": ("a", "b"),
    "cycle": ("n",),
    "star": ("d",),
}

_KIND_NEEDS_RNG = frozenset({"near_regular", "erdos_renyi_m"})


def generate(kind: str, rng: RngStream | None = None, **params: int) -> Graph:
    """Dispatch to a named generator.

    Parameters
    ----------
    kind : str
        One of :data:`GENERATOR_KINDS`.
    rng : RngStream, optional
        Required for the randomized kinds (``near_regular``,
        ``erdos_renyi_m``); ignored by the deterministic ones.
    **params
        The kind's parameters: ``near_regular(n, d)``,
        ``erdos_renyi_m(n, m_target)``, ``complete_bipartite(a, b)``,
        ``cycle(n)``, ``star(d)``.
    """
    if kind not in _KIND_PARAMS:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {GENERATOR_KINDS}")
    expected = _KIND_PARAMS[kind]
    if set(params) != set(expected):
        raise ValueError(
            f"kind {kind!r} takes parameters {expected}, got {tuple(sorted(params))}"
        )
    if kind in _KIND_NEEDS_RNG and rng is None:
        raise ValueError(f"kind {kind!r} requires an RngStream")
    if kind == "near_regular":
        return gen_near_regular(params["n"], params["d"], rng)
    if kind == "erdos_renyi_m":
        return gen_erdos_renyi_m(params["n"], params["m_target"], rng)
    if kind == "complete_bipartite":
        return gen_complete_bipartite(params["a"], params["b"])
    if kind == "cycle":
        return gen_cycle(params["n"])
    return gen_star(params["d"])
