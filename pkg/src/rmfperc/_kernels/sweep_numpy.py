"""Pure-numpy survival sweep kernels.

These are the fallback for the compiled extension and the reference the
extension is tested against.  Arithmetic is kept in the exact same order
as the C code so both backends produce bit-identical decisions.

A sweep advances a frontier of alive vertices level by level.  In RMF
mode a vertex stays alive when some alive predecessor has strictly
smaller fitness; in coupled-site mode a vertex stays alive when its label
falls in the coupling window and some predecessor is alive.  The returned
``reached`` value is the highest level with an alive vertex, capped at
the target height; ``-1`` means the source itself was closed (coupled
mode only).
"""

from __future__ import annotations

import numpy as np

from ..rng import finalize_vec, mix64_vec, unit_open_vec

BACKEND_NAME = "numpy"

LATTICE_SQUARE = 0
LATTICE_ALT = 1

MODE_RMF = 0
MODE_COUPLED = 1

DCODE_GENERIC = -1

_INF = np.inf


def _quantile(dcode, p0, p1, u, quantile_fn):
    if dcode == 0:
        return p0 + p1 * u
    if dcode == 1:
        return -np.log1p(-u) / p0
    if quantile_fn is None:
        raise ValueError("generic distribution requires a quantile callable")
    return np.asarray(quantile_fn(u), dtype=np.float64)


def lattice_sweep(
    kind: int,
    seeds,
    target_height: int,
    drift: float,
    mode: int = MODE_RMF,
    x_left: float = 0.0,
    dcode: int = 0,
    p0: float = 0.0,
    p1: float = 1.0,
    src_neg_inf: bool = False,
    quantile_fn=None,
):
    """Vectorized-over-runs frontier sweep on one of the two lattices."""
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    n = seeds.shape[0]
    reached = np.full(n, target_height, dtype=np.int32)

    states = mix64_vec(seeds)
    zero = np.uint64(0)
    h0 = finalize_vec(mix64_vec(mix64_vec(states ^ zero) ^ zero))
    eta0 = _quantile(dcode, p0, p1, unit_open_vec(h0), quantile_fn)

    if mode == MODE_COUPLED:
        open0 = (x_left < eta0) & (eta0 <= x_left + drift)
        reached[~open0] = -1
        active = np.nonzero(open0)[0]
        cur = np.zeros((active.shape[0], 1), dtype=np.float64)
    else:
        active = np.arange(n)
        if src_neg_inf:
            cur = np.full((n, 1), -_INF)
        else:
            cur = eta0.reshape(n, 1).copy()
    states = states[active]

    for lvl in range(1, target_height + 1):
        if active.shape[0] == 0:
            break
        if kind == LATTICE_SQUARE:
            xs = np.arange(lvl + 1, dtype=np.int64)
            ys = lvl - xs
        else:
            xs = np.arange(-lvl, lvl + 1, dtype=np.int64)
            ys = np.full_like(xs, lvl)
        xw = xs.astype(np.uint64)
        yw = ys.astype(np.uint64)
        s = mix64_vec(mix64_vec(states[:, None] ^ xw[None, :]) ^ yw[None, :])
        eta = _quantile(dcode, p0, p1, unit_open_vec(finalize_vec(s)), quantile_fn)

        na = cur.shape[0]
        pad = np.full((na, 1), _INF)
        if kind == LATTICE_SQUARE:
            minpred = np.minimum(
                np.concatenate((pad, cur), axis=1),
                np.concatenate((cur, pad), axis=1),
            )
        else:
            minpred = np.minimum(
                np.minimum(
                    np.concatenate((pad, pad, cur), axis=1),
                    np.concatenate((pad, cur, pad), axis=1),
                ),
                np.concatenate((cur, pad, pad), axis=1),
            )

        if mode == MODE_RMF:
            val = eta + drift * lvl
            nxt = np.where(val > minpred, val, _INF)
        else:
            open_v = (x_left < eta) & (eta <= x_left + drift)
            nxt = np.where(open_v & (minpred < _INF), 0.0, _INF)

        alive = (nxt < _INF).any(axis=1)
        if not alive.all():
            reached[active[~alive]] = lvl - 1
            active = active[alive]
            states = states[alive]
            nxt = nxt[alive]
        cur = nxt
    return reached


def tree_sweep(
    d: int,
    seeds,
    target_height: int,
    drift: float,
    mode: int = MODE_RMF,
    x_left: float = 0.0,
    dcode: int = 0,
    p0: float = 0.0,
    p1: float = 1.0,
    src_neg_inf: bool = False,
    guard: int = 10_000_000,
    quantile_fn=None,
):
    """Per-run frontier sweep on the d-regular tree.

    Returns (reached, censored).  A run is censored when the frontier
    would exceed ``guard`` alive vertices; the sweep stops there and the
    caller should treat the run as a survival.
    """
    seeds = np.ascontiguousarray(seeds, dtype=np.uint64)
    n = seeds.shape[0]
    reached = np.full(n, target_height, dtype=np.int32)
    censored = np.zeros(n, dtype=np.uint8)
    child_words = np.arange(d, dtype=np.uint64)

    for r in range(n):
        state0 = mix64_vec(seeds[r : r + 1])
        eta0 = _quantile(dcode, p0, p1, unit_open_vec(finalize_vec(state0)), quantile_fn)
        if mode == MODE_COUPLED:
            if not (x_left < eta0[0] <= x_left + drift):
                reached[r] = -1
                continue
            vals = np.zeros(1)
        else:
            vals = np.full(1, -_INF) if src_neg_inf else eta0.copy()
        states = state0

        for lvl in range(1, target_height + 1):
            cs = mix64_vec(np.repeat(states, d) ^ np.tile(child_words, states.shape[0]))
            eta = _quantile(dcode, p0, p1, unit_open_vec(finalize_vec(cs)), quantile_fn)
            if mode == MODE_RMF:
                w = eta + drift * lvl
                keep = w > np.repeat(vals, d)
                states = cs[keep]
                vals = w[keep]
            else:
                keep = (x_left < eta) & (eta <= x_left + drift)
                states = cs[keep]
            if states.shape[0] == 0:
                reached[r] = lvl - 1
                break
            if states.shape[0] > guard:
                reached[r] = lvl
                censored[r] = 1
                break
    return reached, censored
