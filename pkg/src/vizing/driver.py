"""Top-level coloring loop and run parameters.

`derive_params` turns a target accuracy ``epsilon`` into concrete knobs
(number of colors ``q``, fan cap ``k_max``, path parameter ``ell``), and
`edge_color` runs the sequential loop: repeatedly pick a uniformly random
uncolored edge and endpoint, search for an augmenting chain, apply it, and
continue until the coloring is total.

``epsilon`` is treated as an exact rational throughout, so the derived
color count ``q = floor((1+eps) * max_degree)`` never suffers float
rounding (e.g. ``0.29 * 100`` must floor to 29, not 28).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coloring import BLANK, ColoringState
from .engine import VisitedMap, msva
from .errors import EpsilonTooSmall, InternalError, InvalidOverride, PreconditionViolated
from .graph import Graph
from .rng import RngStream
from . import stats as st

__all__ = [
    "Params",
    "RunStats",
    "UncoloredSet",
    "derive_params",
    "edge_color",
]

# Correctness floors: fans need room to pivot at least once, and truncated
# paths must keep more than two edges so the carried color pair stays
# meaningful.
_MIN_K_MAX = 2
_MIN_ELL = 3

_MODES = ("practical", "theory")


@dataclass(frozen=True, slots=True)
class Params:
    """Derived run parameters.

    Attributes:
        epsilon: exact accuracy parameter (rational).
        q: number of colors, ``floor((1+epsilon) * delta)``, at least
            ``delta + 1``.
        k_max: fan length cap.
        ell: path parameter; walks are capped at ``2*ell`` edges and
            truncated at a random length in ``ell..2*ell-1``.
        seed: default seed recorded with the parameters (informational;
            `edge_color` takes the authoritative seed explicitly).
        mode: "practical" (small defaults tuned for use) or "theory"
            (constants matching the analysed regime, astronomically larger).
    """

    epsilon: Fraction
    q: int
    k_max: int
    ell: int
    seed: int
    mode: str


@dataclass(frozen=True, slots=True)
class RunStats:
    """Aggregate counters of one coloring run.

    ``iterations_total`` counts basic-loop passes of the chain search over
    all edges; ``color_calls``/``color_draws`` count random color samples
    (calls and individual draws including rejections); ``fan_restarts``
    counts fan constructions that hit the length cap; ``backward_steps``
    counts committed chain steps undone by backtracking.  Chain edge counts
    are per augmentation (max and mean).  ``wall_ms`` is wall-clock run
    time in milliseconds.
    """

    iterations_total: int
    fan_restarts: int
    color_calls: int
    color_draws: int
    backward_steps: int
    max_chain_edges: int
    avg_chain_edges: float
    wall_ms: float


def _as_fraction(value) -> Fraction:
    """Exact rational from int/str/Fraction, or the shortest decimal
    reading of a float (``Fraction(str(v))``, so 0.29 means 29/100)."""
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def derive_params(
    delta: int,
    epsilon,
    *,
    k_max: int | None = None,
    ell: int | None = None,
    mode: str = "practical",
    seed: int = 0,
) -> Params:
    """Derive run parameters for a graph of maximum degree `delta`.

    Defaults: ``k_max = max(8, ceil(16/epsilon))`` and, in practical mode,
    ``ell = max(4, ceil(1/epsilon^2))``; theory mode instead uses
    ``ell = 6400 * k_max**4``, the constant under which the analysis is
    stated.  Explicit `k_max`/`ell` overrides win in either mode, subject
    to floors.

    Parameters:
        delta: maximum degree of the target graph (>= 0).
        epsilon: accuracy parameter, rational > 0 (int, float, string or
            Fraction; floats are read at decimal precision).
        k_max: optional fan cap override.
        ell: optional path parameter override.
        mode: "practical" or "theory".
        seed: recorded in the returned Params (informational).

    Returns:
        A validated `Params`.

    Raises:
        EpsilonTooSmall: if ``floor(epsilon*delta) < 1`` for ``delta >= 2``
            (the chain machinery needs at least one spare color; graphs
            with ``delta <= 1`` are colored by the trivial pre-pass and
            accept any positive epsilon).
        InvalidOverride: if an override violates the floors
            (``k_max >= 2``, ``ell >= 3``), or theory-mode requirements
            (``k_max >= ceil(16/epsilon)``, ``ell >= 6400*k_max**4``).
        ValueError: for a non-positive epsilon or unknown mode.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be > 0, got {eps}")
    delta = int(delta)
    if delta < 0:
        raise ValueError(f"maximum degree must be >= 0, got {delta}")

    if delta >= 2 and math.floor(eps * delta) < 1:
        raise EpsilonTooSmall(
            f"epsilon={eps} gives no spare color at maximum degree {delta}: "
            f"floor(eps*delta)={math.floor(eps * delta)} < 1"
        )
    q = max(delta + 1, math.floor((1 + eps) * delta))

    k_default = max(8, math.ceil(Fraction(16) / eps))
    k = int(k_max) if k_max is not None else k_default
    if k < _MIN_K_MAX:
        raise InvalidOverride(f"k_max must be >= {_MIN_K_MAX}, got {k}")

    if ell is not None:
        l = int(ell)
    elif mode == "theory":
        l = 6400 * k**4
    else:
        l = max(4, math.ceil(1 / (eps * eps)))
    if l < _MIN_ELL:
        raise InvalidOverride(f"ell must be >= {_MIN_ELL}, got {l}")

    if mode == "theory":
        k_floor = math.ceil(Fraction(16) / eps)
        if k < k_floor:
            raise InvalidOverride(
                f"theory mode requires k_max >= {k_floor}, got {k}"
            )
        l_floor = 6400 * k**4
        if l < l_floor:
            raise InvalidOverride(
                f"theory mode requires ell >= {l_floor}, got {l}"
            )

    return Params(epsilon=eps, q=int(q), k_max=k, ell=l, seed=int(seed), mode=mode)


class UncoloredSet:
    """Array-backed set over ``0..m-1`` with O(1) uniform sample and remove.

    Members live in ``items[:size]``; ``pos[e]`` is e's index in `items`
    while present, else -1.  Removal swaps the last member into the hole.
    """

    __slots__ = ("items", "pos", "size")

    def __init__(self, m: int) -> None:
        self.items = np.arange(m, dtype=np.int64)
        self.pos = np.arange(m, dtype=np.int64)
        self.size = int(m)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, e: int) -> bool:
        return self.pos[e] >= 0

    def sample(self, rng: RngStream) -> int:
        """Uniformly random current member (one draw)."""
        if self.size == 0:
            raise PreconditionViolated("cannot sample from an empty set")
        return int(self.items[rng.uniform_below(self.size)])

    def remove(self, e: int) -> None:
        """Remove a present member.

        Raises:
            PreconditionViolated: if `e` is not currently a member.
        """
        i = int(self.pos[e])
        if i < 0:
            raise PreconditionViolated(f"edge {e} is not in the uncolored set")
        last = int(self.items[self.size - 1])
        self.items[i] = last
        self.pos[last] = i
        self.size -= 1
        self.pos[e] = -1


def _run_stats(stats: np.ndarray, wall_ms: float) -> RunStats:
    calls = int(stats[st.MSVA_CALLS])
    avg = float(stats[st.SUM_CHAIN_EDGES]) / calls if calls else 0.0
    return RunStats(
        iterations_total=int(stats[st.ITERATIONS]),
        fan_restarts=int(stats[st.FAN_RESTARTS]),
        color_calls=int(stats[st.COLOR_CALLS]),
        color_draws=int(stats[st.COLOR_DRAWS]),
        backward_steps=int(stats[st.BACKWARD_STEPS]),
        max_chain_edges=int(stats[st.MAX_CHAIN_EDGES]),
        avg_chain_edges=avg,
        wall_ms=wall_ms,
    )


def _edge_color_python(
    g: Graph,
    params: Params,
    seed: int,
    debug: bool = False,
    capture=None,
    trace=None,
) -> tuple[ColoringState, np.ndarray]:
    """Reference driver loop; returns the state and the raw counter array."""
    state = ColoringState(g, params.q, debug=debug)
    stats = st.make_stats_array()
    if g.max_degree <= 1:
        # Edges are pairwise disjoint; one color suffices.
        for e in range(g.m):
            state._recolor(e, 1)
        return state, stats

    rng = RngStream(seed)
    uncolored = UncoloredSet(g.m)
    visited = VisitedMap(g.n, g.m)
    while uncolored.size > 0:
        e = uncolored.sample(rng)
        u, v = g.endpoints(e)
        x = u if rng.uniform_below(2) == 0 else v
        before = state.uncolored_count
        out = msva(
            state, e, x, params.k_max, params.ell, rng, stats, visited, trace=trace
        )
        state.augment(out.chain.final_piece_edges(), out.xi)
        if capture is not None:
            capture(out)
        uncolored.remove(e)
        if debug:
            if state.uncolored_count != before - 1:
                raise InternalError(
                    "augmentation changed the blank count by "
                    f"{before - state.uncolored_count}, expected 1"
                )
            if state.uncolored_count != uncolored.size:
                raise InternalError(
                    "uncolored set size drifted from the blank edge count"
                )
    if debug:
        blanks = {int(e) for e in np.flatnonzero(state.edge_color == BLANK)}
        if blanks:
            raise InternalError(f"driver loop finished with blank edges {blanks}")
    return state, stats


def edge_color(
    g: Graph,
    params: Params,
    seed: int,
    *,
    debug: bool = False,
    use_kernel: bool | None = None,
    capture=None,
    trace=None,
) -> tuple[ColoringState, RunStats]:
    """Properly edge-color `g` with ``params.q`` colors.

    Runs the sequential loop: while any edge is blank, pick a uniformly
    random blank edge and a uniformly random endpoint of it, search for an
    augmenting chain there, and apply it.  Graphs of maximum degree <= 1
    are colored directly (every edge gets color 1).

    The run is deterministic given (graph, params, seed): the compiled and
    reference paths replay the identical draw sequence and produce
    byte-identical colorings and counters.

    Parameters:
        g: simple graph to color.
        params: derived parameters (see `derive_params`); ``params.q``
            must be at least ``g.max_degree + 1``.
        seed: random stream seed.
        debug: validate every shift, chain-candidate restoration, and the
            blank-set bookkeeping (reference path; much slower).
        use_kernel: force (True) or forbid (False) the compiled path;
            default picks the compiled path when available unless `debug`,
            `capture` or `trace` require the reference path.
        capture: optional callable receiving each chain-search outcome
            (`vizing.engine.MsvaOutcome`); implies the reference path.
        trace: optional per-iteration event callable (see
            `vizing.engine.msva`); implies the reference path.

    Returns:
        ``(state, run_stats)``; the state's coloring is proper and total.

    Raises:
        QTooSmall: if ``params.q <= g.max_degree``.
        InternalError: propagated from the engine; never expected on valid
            input.
    """
    needs_reference = debug or capture is not None or trace is not None
    if use_kernel is None:
        use_kernel = not needs_reference
    if use_kernel and needs_reference:
        raise PreconditionViolated(
            "debug/capture/trace require the reference path (use_kernel=False)"
        )
    t0 = time.perf_counter()
    if use_kernel:
        from . import _kernels

        state, stats = _kernels.run_edge_color(g, params, seed)
    else:
        state, stats = _edge_color_python(
            g, params, seed, debug=debug, capture=capture, trace=trace
        )
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return state, _run_stats(stats, wall_ms)
