"""Shared layout of the run-statistics array.

Both the reference engine and the compiled kernels accumulate counters into
a flat ``int64`` array using these indices, so runs on either path can be
compared entry for entry.
"""

from __future__ import annotations

import numpy as np

# Basic-loop passes of the multi-step search, including the success pass.
# Every non-success pass issues exactly one chain-candidate call and the
# initial candidate balances the success pass, so this always equals
# RANDOMCHAIN_CALLS (asserted in tests).
ITERATIONS = 0
FAN_RESTARTS = 1
COLOR_CALLS = 2
COLOR_DRAWS = 3
BACKWARD_STEPS = 4  # total steps removed by backward iterations
BACKWARD_ITERS = 5
FORWARD_ITERS = 6
MAX_CHAIN_EDGES = 7
SUM_CHAIN_EDGES = 8
RANDOMCHAIN_CALLS = 9
MSVA_CALLS = 10

NUM_STATS = 11

STAT_NAMES = (
    "iterations",
    "fan_restarts",
    "color_calls",
    "color_draws",
    "backward_steps",
    "backward_iters",
    "forward_iters",
    "max_chain_edges",
    "sum_chain_edges",
    "randomchain_calls",
    "msva_calls",
)


def make_stats_array() -> np.ndarray:
    """Fresh all-zero counter array."""
    return np.zeros(NUM_STATS, dtype=np.int64)
