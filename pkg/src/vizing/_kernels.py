"""Compiled (numba) twins of the hot-path routines.

The documented implementations live in the plain-Python modules; everything
here is a line-for-line translation operating on flat arrays, compiled with
numba for the large benchmark runs.  The test suite pins both sides to
bit-identical behavior: same seed, same draws, same resulting coloring and
counters.

Conventions
-----------
* RNG state is a ``uint64[4]`` array (xoshiro256**), advanced in place.
  All RNG arithmetic stays in ``uint64``; mixing signed and unsigned would
  silently promote to float under numba.
* Vertex/edge ids, colors, and counters are ``int64``.  Blank color is 0;
  "no entry" in index tables is -1.
"""

from __future__ import annotations

import numba as nb
import numpy as np
from numba import njit

_U64 = np.uint64
_SPLITMIX_GAMMA = _U64(0x9E3779B97F4A7C15)
_SPLITMIX_MUL1 = _U64(0xBF58476D1CE4E5B9)
_SPLITMIX_MUL2 = _U64(0x94D049BB133111EB)
_U0 = _U64(0)


@njit(nb.uint64(nb.uint64), cache=True)
def _splitmix_mix(x):
    z = x
    z = (z ^ (z >> _U64(30))) * _SPLITMIX_MUL1
    z = (z ^ (z >> _U64(27))) * _SPLITMIX_MUL2
    return z ^ (z >> _U64(31))


@njit(nb.uint64[:](nb.uint64), cache=True)
def rng_from_seed(seed):
    """Expand a seed into a xoshiro256** state, exactly as RngStream does."""
    state = np.empty(4, dtype=np.uint64)
    x = seed
    for i in range(4):
        x = x + _SPLITMIX_GAMMA
        state[i] = _splitmix_mix(x)
    if (state[0] | state[1] | state[2] | state[3]) == _U0:
        state[0] = _SPLITMIX_GAMMA
    return state


@njit(nb.uint64(nb.uint64[:]), cache=True)
def rng_next(state):
    """Advance the state in place and return the next 64-bit word."""
    s0 = state[0]
    s1 = state[1]
    s2 = state[2]
    s3 = state[3]
    result = s1 * _U64(5)
    result = ((result << _U64(7)) | (result >> _U64(57))) * _U64(9)
    t = s1 << _U64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = (s3 << _U64(45)) | (s3 >> _U64(19))
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3
    return result


@njit(nb.uint64(nb.uint64[:], nb.uint64), cache=True)
def rng_below(state, k):
    """Exactly uniform draw in 0..k-1 (k >= 1), same rejection as RngStream."""
    threshold = (_U0 - k) % k  # == 2**64 mod k
    while True:
        u = rng_next(state)
        if u >= threshold:
            return u % k


@njit(nb.void(nb.int64[:], nb.uint64[:]), cache=True)
def shuffle_int64(arr, state):
    """In-place Fisher-Yates shuffle drawing j = uniform_below(i+1)."""
    for i in range(arr.shape[0] - 1, 0, -1):
        j = np.int64(rng_below(state, _U64(i + 1)))
        tmp = arr[i]
        arr[i] = arr[j]
        arr[j] = tmp


# ---------------------------------------------------------------------------
# Fused coloring driver
#
# run_edge_color() replays the whole driver loop in compiled code.  Every
# helper below is a twin of its counterpart in vizing.engine / vizing.driver
# and consumes random draws in exactly the same order, so equal
# (graph, params, seed) produce byte-identical colorings and counters.
# Imports are kept down here with the code they serve; none of the imported
# modules import this one at module level, so there is no cycle.

from .coloring import ColoringState  # noqa: E402
from .errors import InternalError, InvalidFinalColor  # noqa: E402
from .stats import (  # noqa: E402
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
    make_stats_array,
)

_MAX_FAN_RESTARTS = 1_000_000


@njit(cache=True)
def _k_recolor(eu, ev, ec, missing, qp1, e, c_new):
    """Twin of ColoringState._recolor (guarded clear; no blank-count)."""
    c_old = ec[e]
    if c_old == c_new:
        return
    a = eu[e]
    b = ev[e]
    if c_old != 0:
        if missing[a * qp1 + c_old] == e:
            missing[a * qp1 + c_old] = -1
        if missing[b * qp1 + c_old] == e:
            missing[b * qp1 + c_old] = -1
    if c_new != 0:
        missing[a * qp1 + c_new] = e
        missing[b * qp1 + c_new] = e
    ec[e] = c_new


@njit(cache=True)
def _k_shift(eu, ev, ec, missing, qp1, chain, cnt):
    """Shift colors toward the chain start; blank the last edge."""
    for i in range(cnt - 1):
        _k_recolor(eu, ev, ec, missing, qp1, chain[i], ec[chain[i + 1]])
    _k_recolor(eu, ev, ec, missing, qp1, chain[cnt - 1], 0)


@njit(cache=True)
def _k_reverse_shift(eu, ev, ec, missing, qp1, fan_e, fan_len, path, path_cnt, rev):
    """Shift along the reversed fan-plus-path piece (undoes a forward shift)."""
    total = fan_len + path_cnt
    for i in range(path_cnt):
        rev[i] = path[path_cnt - 1 - i]
    for i in range(fan_len):
        rev[path_cnt + i] = fan_e[fan_len - 1 - i]
    _k_shift(eu, ev, ec, missing, qp1, rev, total)


@njit(cache=True)
def _k_random_color(missing, qp1, x, theta, q, limit, rng, stats):
    """Twin of engine.random_missing_color (one draw per rejection round)."""
    stats[COLOR_CALLS] += 1
    misses = 0
    while True:
        stats[COLOR_DRAWS] += 1
        eta = 1 + np.int64(rng_below(rng, _U64(q)))
        if eta != theta and missing[x * qp1 + eta] == -1:
            return eta
        misses += 1
        if misses > limit:
            raise InternalError("color draw watchdog tripped in compiled driver")


@njit(cache=True)
def _k_random_fan(
    eu, ev, ec, missing, qp1, q, limit, e, x, beta, k_max, rng, stats,
    fan_e, fan_l,
):
    """Twin of engine.random_fan; fills `fan_e`/`fan_l` with the fan.

    Returns ``(length, delta, j)``.
    """
    if x == eu[e]:
        y0 = ev[e]
    else:
        y0 = eu[e]
    restarts = 0
    while True:
        fan_e[0] = e
        fan_l[0] = y0
        theta = beta
        k = 0
        while k < k_max:
            eta = _k_random_color(missing, qp1, fan_l[k], theta, q, limit, rng, stats)
            theta = 0
            if missing[x * qp1 + eta] == -1:
                return (k + 1, eta, k + 1)
            if eta == beta:
                return (k + 1, eta, k + 1)
            hit = -1
            for j in range(1, k + 1):
                if missing[fan_l[j - 1] * qp1 + eta] == -1:
                    hit = j
                    break
            if hit >= 0:
                return (k + 1, eta, hit)
            nxt = missing[x * qp1 + eta]
            if x == eu[nxt]:
                fan_l[k + 1] = ev[nxt]
            else:
                fan_l[k + 1] = eu[nxt]
            fan_e[k + 1] = nxt
            k += 1
        restarts += 1
        stats[FAN_RESTARTS] += 1
        if restarts > _MAX_FAN_RESTARTS:
            raise InternalError("fan restart watchdog tripped in compiled driver")


@njit(cache=True)
def _k_walk(eu, ev, missing, qp1, from_vertex, alpha, beta, cap, out_edges):
    """Twin of chains.walk_alternating_path.

    Writes the path edges (first expected color `alpha`) into `out_edges` and
    returns ``(edge_count, end_vertex)``.  `cap` bounds the total chain
    length including the start edge, so at most ``cap - 1`` edges are
    written.
    """
    cur = from_vertex
    expect = alpha
    other = beta
    length = 1
    cnt = 0
    while length < cap:
        e = missing[cur * qp1 + expect]
        if e == -1:
            break
        out_edges[cnt] = e
        cnt += 1
        if eu[e] == cur:
            cur = ev[e]
        else:
            cur = eu[e]
        t = expect
        expect = other
        other = t
        length += 1
    return (cnt, cur)


@njit(cache=True)
def _k_chain_inner(
    eu, ev, ec, missing, qp1, q, limit, e, u, alpha, beta, k_max, cap, rng,
    stats, out_fan_e, out_fan_l, out_path, sc_fan_e, sc_fan_l, sc_walk, rev,
):
    """Candidate construction behind `_k_random_chain` (same return)."""
    fl, delta, j = _k_random_fan(
        eu, ev, ec, missing, qp1, q, limit, e, u, beta, k_max, rng, stats,
        sc_fan_e, sc_fan_l,
    )

    if missing[u * qp1 + delta] == -1:
        # Happy fan: the path is just the fan's last edge.
        for i in range(fl):
            out_fan_e[i] = sc_fan_e[i]
            out_fan_l[i] = sc_fan_l[i]
        return (fl, 0, delta, sc_fan_l[fl - 1], 0, 0)

    if delta == beta:
        _k_shift(eu, ev, ec, missing, qp1, sc_fan_e, fl)
        cnt, endv = _k_walk(
            eu, ev, missing, qp1, sc_fan_l[fl - 1], alpha, beta, cap, out_path
        )
        _k_reverse_shift(eu, ev, ec, missing, qp1, sc_fan_e, fl, out_path, 0, rev)
        for i in range(fl):
            out_fan_e[i] = sc_fan_e[i]
            out_fan_l[i] = sc_fan_l[i]
        eta = alpha
        if cnt >= 1:
            last = alpha if cnt % 2 == 1 else beta
            if last == alpha:
                eta = beta
        return (fl, cnt, eta, endv, alpha, beta)

    gamma = _k_random_color(missing, qp1, u, alpha, q, limit, rng, stats)

    _k_shift(eu, ev, ec, missing, qp1, sc_fan_e, fl)
    cnt_f, end_f = _k_walk(
        eu, ev, missing, qp1, sc_fan_l[fl - 1], gamma, delta, cap, sc_walk
    )
    _k_reverse_shift(eu, ev, ec, missing, qp1, sc_fan_e, fl, sc_walk, 0, rev)

    if end_f != u:
        for i in range(fl):
            out_fan_e[i] = sc_fan_e[i]
            out_fan_l[i] = sc_fan_l[i]
        for i in range(cnt_f):
            out_path[i] = sc_walk[i]
        sel_len = fl
        sel_cnt = cnt_f
        sel_end = end_f
    else:
        # The full fan's path loops back to the pivot; keep the prefix fan.
        _k_shift(eu, ev, ec, missing, qp1, sc_fan_e, j)
        cnt_p, end_p = _k_walk(
            eu, ev, missing, qp1, sc_fan_l[j - 1], gamma, delta, cap, out_path
        )
        _k_reverse_shift(eu, ev, ec, missing, qp1, sc_fan_e, j, out_path, 0, rev)
        for i in range(j):
            out_fan_e[i] = sc_fan_e[i]
            out_fan_l[i] = sc_fan_l[i]
        sel_len = j
        sel_cnt = cnt_p
        sel_end = end_p

    eta = gamma
    if sel_cnt >= 1:
        last = gamma if sel_cnt % 2 == 1 else delta
        if last == gamma:
            eta = delta
    return (sel_len, sel_cnt, eta, sel_end, gamma, delta)


@njit(cache=True)
def _k_random_chain(
    eu, ev, ec, missing, qp1, q, limit, e, u, alpha, beta, k_max, cap, rng,
    stats, out_fan_e, out_fan_l, out_path, sc_fan_e, sc_fan_l, sc_walk, rev,
):
    """Twin of engine.random_vizing_chain.

    Writes the selected fan into ``out_fan_e``/``out_fan_l`` and its path
    edges into ``out_path``; the ``sc_*`` buffers are scratch.  Returns
    ``(fan_len, path_cnt, eta, end_vertex, walk_alpha, walk_beta)`` where the
    walk colors are 0 for a happy (single-edge-path) candidate.
    """
    stats[RANDOMCHAIN_CALLS] += 1
    calls0 = stats[COLOR_CALLS]
    restarts0 = stats[FAN_RESTARTS]
    res = _k_chain_inner(
        eu, ev, ec, missing, qp1, q, limit, e, u, alpha, beta, k_max, cap,
        rng, stats, out_fan_e, out_fan_l, out_path, sc_fan_e, sc_fan_l,
        sc_walk, rev,
    )
    spent = stats[COLOR_CALLS] - calls0
    if spent > k_max * (stats[FAN_RESTARTS] - restarts0 + 1) + 1:
        raise InternalError("chain candidate exceeded its color-draw budget")
    return res


@njit(cache=True)
def _k_scan_candidate(
    eu, ev, vgen, vstep, egen, estep, gen, live,
    pivot, fan_e, fan_l, fan_len, path, path_cnt,
):
    """Twin of engine.first_intersection; returns the owning step or -1.

    Scan order: pivot vertex, first leaf, then (fan edge, leaf) pairs, then
    (path edge, far endpoint) pairs.  The candidate's blank first edge is
    skipped.
    """
    if vgen[pivot] == gen and vstep[pivot] < live:
        return vstep[pivot]
    v0 = fan_l[0]
    if vgen[v0] == gen and vstep[v0] < live:
        return vstep[v0]
    for i in range(1, fan_len):
        e = fan_e[i]
        if egen[e] == gen and estep[e] < live:
            return estep[e]
        v = fan_l[i]
        if vgen[v] == gen and vstep[v] < live:
            return vstep[v]
    cur = fan_l[fan_len - 1]
    for t in range(path_cnt):
        e = path[t]
        if egen[e] == gen and estep[e] < live:
            return estep[e]
        if eu[e] == cur:
            cur = ev[e]
        else:
            cur = eu[e]
        if vgen[cur] == gen and vstep[cur] < live:
            return vstep[cur]
    return np.int64(-1)


@njit(cache=True)
def _k_drive(
    eu, ev, ec, missing, qp1, q, delta, k_max, ell, rng, stats,
    items, pos,
    vgen, vstep, egen, estep,
    spivot, sfan_len, strunc_cnt, sfull_cnt, swa, swb,
    fanpool, pathpool, stride,
    cfan_e, cfan_l, cpath, sc_fan_e, sc_fan_l, sc_walk, rev,
):
    """Whole-run driver loop with the multi-step chain search inlined.

    Draw order per uncolored edge: set index, endpoint coin, then the chain
    search draws — identical to the reference path.  Committed steps live in
    the ``s*`` arrays (`fanpool` is packed; full paths use a fixed `stride`
    per step), the current candidate in ``cfan_*``/``cpath``.
    """
    m = ec.shape[0]
    cap = 2 * ell
    limit = 64 * q // (q - delta) + 1
    usize = m
    gen = 0

    while usize > 0:
        e0 = items[np.int64(rng_below(rng, _U64(usize)))]
        if rng_below(rng, _U64(2)) == _U0:
            x0 = eu[e0]
        else:
            x0 = ev[e0]

        # --- multi-step chain search (twin of engine.msva) ---------------
        stats[MSVA_CALLS] += 1
        gen += 1
        live = np.int64(0)
        nsteps = 0
        fan_base = 0
        cur_pivot = x0
        cur_len, cur_cnt, cur_xi, _end0, cur_a, cur_b = _k_random_chain(
            eu, ev, ec, missing, qp1, q, limit, e0, x0, 0, 0, k_max, cap,
            rng, stats, cfan_e, cfan_l, cpath, sc_fan_e, sc_fan_l, sc_walk,
            rev,
        )

        while True:
            stats[ITERATIONS] += 1
            if 1 + cur_cnt < cap:
                # Success: account the chain size, then augment by shifting
                # the final piece and coloring its last edge.
                total = 1
                for s in range(nsteps):
                    total += sfan_len[s] + strunc_cnt[s] - 1
                total += cur_len + cur_cnt - 1
                if total > stats[MAX_CHAIN_EDGES]:
                    stats[MAX_CHAIN_EDGES] = total
                stats[SUM_CHAIN_EDGES] += total
                piece = cur_len + cur_cnt
                for i in range(cur_len):
                    rev[i] = cfan_e[i]
                for i in range(cur_cnt):
                    rev[cur_len + i] = cpath[i]
                _k_shift(eu, ev, ec, missing, qp1, rev, piece)
                last_e = rev[piece - 1]
                a = eu[last_e]
                b = ev[last_e]
                if (
                    missing[a * qp1 + cur_xi] != -1
                    or missing[b * qp1 + cur_xi] != -1
                ):
                    raise InvalidFinalColor(
                        "final chain color not free at both endpoints"
                    )
                _k_recolor(eu, ev, ec, missing, qp1, last_e, cur_xi)
                break

            # Forward: commit a truncated piece and probe beyond it.
            k = nsteps
            if k >= spivot.shape[0]:
                raise InternalError("committed step capacity exceeded")
            ell_p = ell + np.int64(rng_below(rng, _U64(ell)))
            t_cnt = ell_p - 1  # path edges kept by the truncation
            beta_k = cur_a if t_cnt % 2 == 1 else cur_b
            alpha_k = cur_b if beta_k == cur_a else cur_a

            spivot[k] = cur_pivot
            sfan_len[k] = cur_len
            strunc_cnt[k] = t_cnt
            sfull_cnt[k] = cur_cnt
            swa[k] = cur_a
            swb[k] = cur_b
            for i in range(cur_len):
                fanpool[fan_base + i] = cfan_e[i]
            off = k * stride
            for i in range(cur_cnt):
                pathpool[off + i] = cpath[i]

            for i in range(cur_len):
                rev[i] = cfan_e[i]
            for i in range(t_cnt):
                rev[cur_len + i] = cpath[i]
            _k_shift(eu, ev, ec, missing, qp1, rev, cur_len + t_cnt)

            vgen[cur_pivot] = gen
            vstep[cur_pivot] = k
            for i in range(cur_len):
                v = cfan_l[i]
                vgen[v] = gen
                vstep[v] = k
            for i in range(t_cnt - 1):
                e = cpath[i]
                egen[e] = gen
                estep[e] = k
            live = np.int64(k + 1)
            nsteps = k + 1
            fan_base += cur_len

            uv = cpath[t_cnt - 1]
            v_end = cfan_l[cur_len - 1]
            for i in range(t_cnt):
                e = cpath[i]
                if eu[e] == v_end:
                    v_end = ev[e]
                else:
                    v_end = eu[e]
            if eu[uv] == v_end:
                u = ev[uv]
            else:
                u = eu[uv]

            # The committed fan/path buffers are saved in the pools, so they
            # double as scratch for the probe; its result lands in sc_*.
            nd_len, nd_cnt, nd_eta, nd_end, nd_a, nd_b = _k_random_chain(
                eu, ev, ec, missing, qp1, q, limit, uv, u, alpha_k, beta_k,
                k_max, cap, rng, stats, sc_fan_e, sc_fan_l, sc_walk,
                cfan_e, cfan_l, cpath, rev,
            )

            hit = _k_scan_candidate(
                eu, ev, vgen, vstep, egen, estep, gen, live,
                u, sc_fan_e, sc_fan_l, nd_len, sc_walk, nd_cnt,
            )
            if hit >= 0:
                # Backward: undo every step from the hit's owner onward.
                j = hit
                removed = nsteps - j
                stats[BACKWARD_ITERS] += 1
                stats[BACKWARD_STEPS] += removed
                base = fan_base
                for s in range(nsteps - 1, j - 1, -1):
                    base -= sfan_len[s]
                    _k_reverse_shift(
                        eu, ev, ec, missing, qp1,
                        fanpool[base : base + sfan_len[s]], sfan_len[s],
                        pathpool[s * stride : s * stride + strunc_cnt[s]],
                        strunc_cnt[s], rev,
                    )
                live = np.int64(j)
                nsteps = j
                fan_base = base
                # Resume with step j's fan and full path as the candidate.
                cur_pivot = spivot[j]
                cur_len = sfan_len[j]
                for i in range(cur_len):
                    e = fanpool[base + i]
                    cfan_e[i] = e
                    if eu[e] == cur_pivot:
                        cfan_l[i] = ev[e]
                    else:
                        cfan_l[i] = eu[e]
                cur_cnt = sfull_cnt[j]
                off = j * stride
                for i in range(cur_cnt):
                    cpath[i] = pathpool[off + i]
                cur_a = swa[j]
                cur_b = swb[j]
                last = cur_a if cur_cnt % 2 == 1 else cur_b
                cur_xi = cur_b if last == cur_a else cur_a
            elif nd_cnt >= 1 and 1 + nd_cnt < cap and nd_end == u:
                raise InternalError(
                    "short candidate path returned to its pivot"
                )
            else:
                stats[FORWARD_ITERS] += 1
                for i in range(nd_len):
                    cfan_e[i] = sc_fan_e[i]
                    cfan_l[i] = sc_fan_l[i]
                for i in range(nd_cnt):
                    cpath[i] = sc_walk[i]
                cur_pivot = u
                cur_len = nd_len
                cur_cnt = nd_cnt
                cur_xi = nd_eta
                cur_a = nd_a
                cur_b = nd_b

        # --- remove e0 from the uncolored set -----------------------------
        i = pos[e0]
        last_item = items[usize - 1]
        items[i] = last_item
        pos[last_item] = i
        usize -= 1
        pos[e0] = -1


def run_edge_color(g, params, seed):
    """Color every edge of `g` with the compiled driver loop.

    Twin of the reference driver: same uncolored-set policy, same chain
    search, same draw order, so for equal ``(g, params, seed)`` the coloring
    and counters are byte-identical to the reference path.

    Parameters:
        g: simple graph to color.
        params: derived parameters (``q``, ``k_max``, ``ell``).
        seed: random stream seed.

    Returns:
        Tuple ``(state, stats)``: the finished `ColoringState` and the raw
        counter array (see `vizing.stats`).
    """
    q = int(params.q)
    m = g.m
    n = g.n
    stats = make_stats_array()

    if g.max_degree <= 1:
        # Edges are pairwise disjoint; one color suffices (no draws).
        state = ColoringState(g, q)
        for e in range(m):
            state._recolor(e, 1)
        return state, stats

    delta = int(g.max_degree)
    # Clamps that provably never change behavior (fans have at most
    # max-degree edges and paths at most n - 1), but keep the buffers small
    # and the arithmetic inside int64 even for outlandish parameter values.
    ell = min(int(params.ell), n + 2)
    k_max = min(int(params.k_max), n + 2)
    stride = min(2 * ell, n + 1) + 1
    fan_cap = min(k_max, delta) + 2
    # Committed fans have pairwise disjoint vertex sets and committed path
    # interiors are pairwise disjoint edge sets, which bounds the number of
    # simultaneously committed steps.
    step_cap = min(n // 2, m // max(1, ell - 2)) + 2
    qp1 = q + 1

    ec = np.zeros(m, dtype=np.int64)
    missing = np.full(n * qp1, -1, dtype=np.int64)
    items = np.arange(m, dtype=np.int64)
    pos = np.arange(m, dtype=np.int64)
    vgen = np.zeros(n, dtype=np.int64)
    vstep = np.zeros(n, dtype=np.int64)
    egen = np.zeros(m, dtype=np.int64)
    estep = np.zeros(m, dtype=np.int64)
    spivot = np.zeros(step_cap, dtype=np.int64)
    sfan_len = np.zeros(step_cap, dtype=np.int64)
    strunc_cnt = np.zeros(step_cap, dtype=np.int64)
    sfull_cnt = np.zeros(step_cap, dtype=np.int64)
    swa = np.zeros(step_cap, dtype=np.int64)
    swb = np.zeros(step_cap, dtype=np.int64)
    fanpool = np.zeros(n + 2, dtype=np.int64)
    pathpool = np.zeros(step_cap * stride, dtype=np.int64)
    cfan_e = np.zeros(fan_cap, dtype=np.int64)
    cfan_l = np.zeros(fan_cap, dtype=np.int64)
    cpath = np.zeros(stride, dtype=np.int64)
    sc_fan_e = np.zeros(fan_cap, dtype=np.int64)
    sc_fan_l = np.zeros(fan_cap, dtype=np.int64)
    sc_walk = np.zeros(stride, dtype=np.int64)
    rev = np.zeros(fan_cap + stride, dtype=np.int64)
    rng = rng_from_seed(_U64(int(seed) & 0xFFFFFFFFFFFFFFFF))

    _k_drive(
        g.eu, g.ev, ec, missing, qp1, q, delta, k_max, ell, rng, stats,
        items, pos, vgen, vstep, egen, estep,
        spivot, sfan_len, strunc_cnt, sfull_cnt, swa, swb,
        fanpool, pathpool, stride,
        cfan_e, cfan_l, cpath, sc_fan_e, sc_fan_l, sc_walk, rev,
    )

    state = ColoringState.from_arrays(g, q, ec, missing)
    return state, stats
