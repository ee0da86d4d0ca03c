"""Command-line interface: generate, color, verify, benchmark.

Subcommands
-----------
``gen``
    Write a generated graph as an edge-list file.
``color``
    Edge-color a graph file; optionally emit a metrics record (one JSON
    object with a stable key order) and a DOT rendering of the largest
    augmenting chain encountered.
``verify``
    Check a coloring file against a graph file; nonzero exit and a
    listing of the offending edges on any failure.
``bench``
    Color generated graphs over a grid of sizes and seeds, emitting one
    metrics record per run plus a per-size summary table.

Exit codes: 0 success, 1 bad input or parameters (including verification
failures), 2 internal invariant violation (a bug, never the input's fault).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chains import chain_to_dot
from .coloring import ColoringState, format_coloring, parse_coloring, rebuild_missing_table
from .driver import Params, RunStats, derive_params, edge_color
from .errors import InternalError
from .graph import (
    GENERATOR_KINDS,
    Graph,
    format_edge_list,
    generate,
    read_edge_list,
)
from .rng import RngStream

# One field per line of a metrics record, in emission order.  The order is
# part of the format: records are diffed byte-wise by tests and tooling.
_METRICS_FIELDS = (
    "n",
    "m",
    "delta",
    "epsilon",
    "q",
    "seed",
    "k_max",
    "ell",
    "iterations_total",
    "fan_restarts",
    "color_calls",
    "color_draws",
    "backward_steps",
    "max_chain_edges",
    "avg_chain_edges",
    "wall_ms",
    "proper",
)


@dataclass(frozen=True, slots=True)
class MetricsRecord:
    """One coloring run, flattened for machine consumption.

    ``proper`` is the result of an exhaustive `verify_proper` scan of the
    produced coloring, never inferred from the run having finished.  All
    other fields echo the inputs (`n` .. `ell`) or the run counters.
    """

    n: int
    m: int
    delta: int
    epsilon: float
    q: int
    seed: int
    k_max: int
    ell: int
    iterations_total: int
    fan_restarts: int
    color_calls: int
    color_draws: int
    backward_steps: int
    max_chain_edges: int
    avg_chain_edges: float
    wall_ms: float
    proper: bool

    def to_json(self) -> str:
        """Serialize as one JSON object with the documented key order."""
        return json.dumps({f: getattr(self, f) for f in _METRICS_FIELDS})


def build_metrics(
    g: Graph, params: Params, seed: int, run: RunStats, proper: bool
) -> MetricsRecord:
    """Assemble the record for one finished run."""
    return MetricsRecord(
        n=g.n,
        m=g.m,
        delta=g.max_degree,
        epsilon=float(params.epsilon),
        q=params.q,
        seed=seed,
        k_max=params.k_max,
        ell=params.ell,
        iterations_total=run.iterations_total,
        fan_restarts=run.fan_restarts,
        color_calls=run.color_calls,
        color_draws=run.color_draws,
        backward_steps=run.backward_steps,
        max_chain_edges=run.max_chain_edges,
        avg_chain_edges=run.avg_chain_edges,
        wall_ms=run.wall_ms,
        proper=proper,
    )


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors.

    Exit code 2 is reserved for internal invariant violations, so flag and
    argument problems must not use argparse's default of 2.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_epsilon(text: str) -> Fraction:
    """Parse --epsilon: decimal ('0.25') or rational ('1/4') syntax."""
    value = Fraction(text)  # ValueError propagates to argparse
    return value


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as f:
            f.write(text)


# ---------------------------------------------------------------------------
# gen


_GEN_FLAGS = ("n", "d", "m_target", "a", "b")


def _cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in _GEN_FLAGS if getattr(args, k) is not None}
    g = generate(args.kind, RngStream(args.seed), **params)
    _write_text(args.out, format_edge_list(g))
    return 0


# ---------------------------------------------------------------------------
# color


def _cmd_color(args) -> int:
    g = read_edge_list(args.graph)
    params = derive_params(
        g.max_degree,
        args.epsilon,
        k_max=args.kmax,
        ell=args.ell,
        mode=args.mode,
        seed=args.seed,
    )

    capture = None
    largest = []
    if args.trace_dot is not None:
        # Tracking chains requires the reference engine (slower).
        def capture(outcome):
            if not largest or outcome.chain.total_edges > largest[0].chain.total_edges:
                largest[:] = [outcome]

    state, run = edge_color(g, params, args.seed, capture=capture)
    report = state.verify_proper()
    if not report.proper or state.uncolored_count:
        raise InternalError(
            "coloring run finished but verification failed "
            f"({len(report.violations)} violations, {state.uncolored_count} blank)"
        )

    _write_text(args.out, format_coloring(state))
    if args.metrics_json is not None:
        record = build_metrics(g, params, args.seed, run, report.proper)
        _write_text(args.metrics_json, record.to_json() + "\n")
    if args.trace_dot is not None:
        if largest:
            dot = chain_to_dot(largest[0].chain, state)
        else:
            dot = "graph chain {\n}\n"  # no chain searches ran (max degree <= 1)
        _write_text(args.trace_dot, dot)
    return 0


# ---------------------------------------------------------------------------
# verify


def _cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    with open(args.coloring, "r", encoding="ascii") as f:
        q, rows = parse_coloring(f.read())

    if q < g.max_degree + 1:
        print(
            f"FAIL: header q={q} is below max degree {g.max_degree} + 1",
            file=sys.stderr,
        )
        return 1

    edge_of = {}
    for e in range(g.m):
        edge_of[(int(g.eu[e]), int(g.ev[e]))] = e
    ec = np.zeros(g.m, dtype=np.int64)
    seen = np.zeros(g.m, dtype=bool)
    for idx, (u, v, c) in enumerate(rows, start=1):
        key = (u, v) if u < v else (v, u)
        e = edge_of.get(key)
        if e is None:
            print(f"FAIL: row {idx}: {u} {v} is not an edge of the graph", file=sys.stderr)
            return 1
        if seen[e]:
            print(f"FAIL: row {idx}: edge {u} {v} listed twice", file=sys.stderr)
            return 1
        if not 1 <= c <= q:
            print(f"FAIL: row {idx}: color {c} outside 1..{q}", file=sys.stderr)
            return 1
        seen[e] = True
        ec[e] = c
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0])
        print(
            f"FAIL: edge {int(g.eu[missing])} {int(g.ev[missing])} has no color",
            file=sys.stderr,
        )
        return 1

    state = ColoringState.from_arrays(
        g, q, ec, np.full((g.n, q + 1), -1, dtype=np.int64)
    )
    state.missing_edge = rebuild_missing_table(state)
    report = state.verify_proper()
    if not report.proper:
        for vertex, color, edges in report.violations:
            pairs = ", ".join(
                f"({int(g.eu[e])},{int(g.ev[e])})" for e in edges
            )
            print(
                f"FAIL: vertex {vertex} has color {color} on edges {pairs}",
                file=sys.stderr,
            )
        return 1
    print(f"OK: proper coloring of {g.m} edges with q={q}")
    return 0


# ---------------------------------------------------------------------------
# bench


_BENCH_FAMILIES = ("near_regular", "erdos_renyi_m", "cycle")


def _bench_graph(family: str, n: int, d: int, graph_seed: int) -> Graph:
    rng = RngStream(graph_seed)
    if family == "near_regular":
        return generate("near_regular", rng, n=n, d=d)
    if family == "erdos_renyi_m":
        return generate("erdos_renyi_m", rng, n=n, m_target=n * d // 2)
    return generate("cycle", rng, n=n)


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes or min(sizes) < 1:
        raise ValueError(f"--sizes must be positive integers, got {args.sizes!r}")
    if args.seeds < 1:
        raise ValueError(f"--seeds must be >= 1, got {args.seeds}")

    out = sys.stdout if args.out is None else open(
        args.out, "w", encoding="ascii", newline="\n"
    )
    table_stream = sys.stderr if args.out is None else sys.stdout
    summary_rows = []
    try:
        for n in sizes:
            g = _bench_graph(args.family, n, args.d, args.graph_seed)
            params = derive_params(g.max_degree, args.epsilon)
            per_size = []
            for seed in range(args.seeds):
                state, run = edge_color(g, params, seed)
                report = state.verify_proper()
                if not report.proper or state.uncolored_count:
                    raise InternalError(
                        f"bench run n={n} seed={seed} produced an improper coloring"
                    )
                record = build_metrics(g, params, seed, run, report.proper)
                out.write(record.to_json() + "\n")
                per_size.append(record)
            summary_rows.append(
                (
                    n,
                    g.m,
                    statistics.median(r.wall_ms / r.m for r in per_size),
                    statistics.median(r.iterations_total / r.m for r in per_size),
                    statistics.median(r.max_chain_edges for r in per_size),
                )
            )
    finally:
        if out is not sys.stdout:
            out.close()

    header = f"{'n':>9} {'m':>10} {'wall_ms/m':>11} {'iters/m':>9} {'max_chain':>10}"
    print(header, file=table_stream)
    for n, m, wall, iters, mc in summary_rows:
        print(
            f"{n:>9} {m:>10} {wall:>11.5f} {iters:>9.3f} {mc:>10}",
            file=table_stream,
        )
    if args.csv is not None:
        lines = ["n,m,wall_ms_per_edge,iterations_per_edge,max_chain_edges\n"]
        for n, m, wall, iters, mc in summary_rows:
            lines.append(f"{n},{m},{wall!r},{iters!r},{mc}\n")
        _write_text(args.csv, "".join(lines))
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="vizing",
        description="Proper edge coloring with (1+eps) * max-degree colors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph and write it as an edge list")
    p.add_argument("kind", choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int, help="vertex count (near_regular, erdos_renyi_m, cycle)")
    p.add_argument("--d", type=int, help="degree (near_regular) or leaf count (star)")
    p.add_argument("--m-target", dest="m_target", type=int, help="edge count (erdos_renyi_m)")
    p.add_argument("--a", type=int, help="first part size (complete_bipartite)")
    p.add_argument("--b", type=int, help="second part size (complete_bipartite)")
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("color", help="edge-color a graph file")
    p.add_argument("graph", help="edge-list file to color")
    p.add_argument("--epsilon", required=True, type=_parse_epsilon,
                   help="color surplus: q = floor((1+epsilon) * max_degree)")
    p.add_argument("--seed", type=int, default=0, help="run seed (default 0)")
    p.add_argument("--kmax", type=int, help="override the fan length bound")
    p.add_argument("--ell", type=int, help="override the path truncation parameter")
    p.add_argument("--mode", choices=("practical", "theory"), default="practical",
                   help="parameter derivation mode (default practical)")
    p.add_argument("--out", help="coloring output path (default: stdout)")
    p.add_argument("--metrics-json", dest="metrics_json",
                   help="write one JSON metrics record to this path")
    p.add_argument("--trace-dot", dest="trace_dot",
                   help="write the largest augmenting chain as DOT to this path "
                        "(uses the slower reference engine)")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("verify", help="check a coloring file against a graph file")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("coloring", help="coloring file to check")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="color generated graphs over sizes x seeds")
    p.add_argument("--family", choices=_BENCH_FAMILIES, default="near_regular")
    p.add_argument("--d", type=int, default=16, help="target degree (default 16)")
    p.add_argument("--sizes", default="1000,10000,100000",
                   help="comma-separated vertex counts (default 1000,10000,100000)")
    p.add_argument("--epsilon", type=_parse_epsilon, default=Fraction(1, 2),
                   help="color surplus (default 0.5)")
    p.add_argument("--seeds", type=int, default=5,
                   help="run seeds 0..seeds-1 per size (default 5)")
    p.add_argument("--graph-seed", dest="graph_seed", type=int, default=0,
                   help="generator seed, one graph per size (default 0)")
    p.add_argument("--out", help="metrics JSONL path (default: stdout)")
    p.add_argument("--csv", help="also write the summary table as CSV to this path")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    """CLI entry point; returns the process exit code."""
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
