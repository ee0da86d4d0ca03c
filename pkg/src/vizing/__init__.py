"""Proper edge coloring with ``(1+eps) * max_degree`` colors in linear time.

The coloring loop repeatedly picks an uncolored edge and extends the
coloring along a randomized multi-step augmenting chain (fans joined to
alternating paths, truncated at random lengths, with backtracking when a
new piece touches an earlier one).  Typical use::

    from vizing import build_graph, derive_params, edge_color

    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    params = derive_params(g.max_degree, epsilon=1)
    state, run = edge_color(g, params, seed=0)
    assert state.verify_proper().proper

Two interchangeable engines produce bit-identical results: a documented
pure-Python reference (`vizing.engine`) and a compiled driver used by
default for plain runs.  The ``vizing`` command line tool wraps graph
generation, coloring, verification and benchmarking.
"""

from __future__ import annotations

from .chains import (
    Fan,
    MultiStepChain,
    PathChain,
    StepRecord,
    chain_to_dot,
    check_non_intersecting,
    walk_alternating_path,
)
from .coloring import (
    BLANK,
    ColoringState,
    ProperReport,
    format_coloring,
    parse_coloring,
    rebuild_missing_table,
)
from .driver import Params, RunStats, derive_params, edge_color
from .engine import MsvaOutcome, msva, random_fan, random_missing_color, random_vizing_chain
from .errors import (
    EpsilonTooSmall,
    Infeasible,
    InternalError,
    InvalidOverride,
    PreconditionViolated,
    QTooSmall,
)
from .graph import (
    GENERATOR_KINDS,
    Graph,
    build_graph,
    format_edge_list,
    generate,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from .rng import RngStream

__all__ = [
    "BLANK",
    "ColoringState",
    "EpsilonTooSmall",
    "Fan",
    "GENERATOR_KINDS",
    "Graph",
    "Infeasible",
    "InternalError",
    "InvalidOverride",
    "MsvaOutcome",
    "MultiStepChain",
    "Params",
    "PathChain",
    "PreconditionViolated",
    "ProperReport",
    "QTooSmall",
    "RngStream",
    "RunStats",
    "StepRecord",
    "build_graph",
    "chain_to_dot",
    "check_non_intersecting",
    "derive_params",
    "edge_color",
    "format_coloring",
    "format_edge_list",
    "generate",
    "msva",
    "parse_coloring",
    "parse_edge_list",
    "random_fan",
    "random_missing_color",
    "random_vizing_chain",
    "read_edge_list",
    "rebuild_missing_table",
    "walk_alternating_path",
    "write_edge_list",
]
