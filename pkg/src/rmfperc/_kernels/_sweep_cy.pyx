# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled survival sweep kernels.

Same contract and bit-identical arithmetic as ``sweep_numpy``; see that
module for the semantics.  Only distributions with an inline quantile
(uniform, exponential) are supported here; the dispatcher falls back to
the numpy kernels otherwise.
"""

import numpy as np

from libc.math cimport log1p, HUGE_VAL
from libc.stdint cimport uint64_t, int32_t, uint8_t, int64_t

BACKEND_NAME = "cython"

LATTICE_SQUARE = 0
LATTICE_ALT = 1

MODE_RMF = 0
MODE_COUPLED = 1

cdef int _MODE_RMF = 0
cdef int _MODE_COUPLED = 1
cdef int _LATTICE_SQUARE = 0
cdef int _LATTICE_ALT = 1


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = z + <uint64_t>0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double unit_open(uint64_t h) nogil:
    return (<double>(h >> 11) + 0.5) * 1.1102230246251565e-16


cdef inline uint64_t finalize(uint64_t state) nogil:
    return mix64(state ^ <uint64_t>0x2545F4914F6CDD1D)


cdef inline double quant(int dcode, double p0, double p1, double u) nogil:
    if dcode == 0:
        return p0 + p1 * u
    return -log1p(-u) / p0


def lattice_sweep(int kind, seeds, int target_height, double drift,
                  int mode=MODE_RMF, double x_left=0.0,
                  int dcode=0, double p0=0.0, double p1=1.0,
                  bint src_neg_inf=False, quantile_fn=None):
    if dcode not in (0, 1):
        raise ValueError("compiled kernel supports only inline quantiles")
    seeds_arr = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef uint64_t[::1] sv = seeds_arr
    cdef Py_ssize_t n = sv.shape[0]
    reached_arr = np.full(n, target_height, dtype=np.int32)
    cdef int32_t[::1] reached = reached_arr

    cdef Py_ssize_t maxw = 2 * target_height + 1 if kind == _LATTICE_ALT else target_height + 1
    cur_arr = np.empty(maxw, dtype=np.float64)
    nxt_arr = np.empty(maxw, dtype=np.float64)
    cdef double[::1] cur_mv = cur_arr
    cdef double[::1] nxt_mv = nxt_arr
    cdef double* cur
    cdef double* nxt
    cdef double* tmp

    cdef Py_ssize_t r, i
    cdef int lvl, w, pw
    cdef uint64_t state, s
    cdef int64_t x, y
    cdef double eta, val, minpred, a, b
    cdef bint anyalive, ok

    with nogil:
        for r in range(n):
            cur = &cur_mv[0]
            nxt = &nxt_mv[0]
            state = mix64(sv[r])
            s = mix64(mix64(state ^ <uint64_t>0) ^ <uint64_t>0)
            eta = quant(dcode, p0, p1, unit_open(finalize(s)))
            if mode == _MODE_COUPLED:
                if not (x_left < eta and eta <= x_left + drift):
                    reached[r] = -1
                    continue
                cur[0] = 0.0
            else:
                cur[0] = -HUGE_VAL if src_neg_inf else eta
            pw = 1
            for lvl in range(1, target_height + 1):
                w = lvl + 1 if kind == _LATTICE_SQUARE else 2 * lvl + 1
                anyalive = False
                for i in range(w):
                    if kind == _LATTICE_SQUARE:
                        x = i
                        y = lvl - i
                        a = cur[i - 1] if i - 1 >= 0 else HUGE_VAL
                        b = cur[i] if i < pw else HUGE_VAL
                        minpred = a if a < b else b
                    else:
                        x = i - lvl
                        y = lvl
                        minpred = HUGE_VAL
                        if i - 2 >= 0 and i - 2 < pw and cur[i - 2] < minpred:
                            minpred = cur[i - 2]
                        if i - 1 >= 0 and i - 1 < pw and cur[i - 1] < minpred:
                            minpred = cur[i - 1]
                        if i < pw and cur[i] < minpred:
                            minpred = cur[i]
                    s = mix64(mix64(state ^ <uint64_t>x) ^ <uint64_t>y)
                    eta = quant(dcode, p0, p1, unit_open(finalize(s)))
                    if mode == _MODE_RMF:
                        val = eta + drift * lvl
                        ok = val > minpred
                    else:
                        val = 0.0
                        ok = (x_left < eta and eta <= x_left + drift
                              and minpred < HUGE_VAL)
                    if ok:
                        nxt[i] = val
                        anyalive = True
                    else:
                        nxt[i] = HUGE_VAL
                if not anyalive:
                    reached[r] = lvl - 1
                    break
                tmp = cur
                cur = nxt
                nxt = tmp
                pw = w
    return reached_arr


def tree_sweep(int d, seeds, int target_height, double drift,
               int mode=MODE_RMF, double x_left=0.0,
               int dcode=0, double p0=0.0, double p1=1.0,
               bint src_neg_inf=False, long guard=10_000_000,
               quantile_fn=None):
    if dcode not in (0, 1):
        raise ValueError("compiled kernel supports only inline quantiles")
    seeds_arr = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef uint64_t[::1] sv = seeds_arr
    cdef Py_ssize_t n = sv.shape[0]
    reached_arr = np.full(n, target_height, dtype=np.int32)
    censored_arr = np.zeros(n, dtype=np.uint8)
    cdef int32_t[::1] reached = reached_arr
    cdef uint8_t[::1] censored = censored_arr

    cdef Py_ssize_t cap = 1024
    cur_s_arr = np.empty(cap, dtype=np.uint64)
    cur_v_arr = np.empty(cap, dtype=np.float64)
    nxt_s_arr = np.empty(cap, dtype=np.uint64)
    nxt_v_arr = np.empty(cap, dtype=np.float64)
    cdef uint64_t[::1] cur_s = cur_s_arr
    cdef double[::1] cur_v = cur_v_arr
    cdef uint64_t[::1] nxt_s = nxt_s_arr
    cdef double[::1] nxt_v = nxt_v_arr

    cdef Py_ssize_t r, i, cnt, cur_n, need
    cdef int lvl, j
    cdef uint64_t cs
    cdef double eta, w, pv
    cdef bint ok, censor

    for r in range(n):
        cur_s[0] = mix64(sv[r])
        eta = quant(dcode, p0, p1, unit_open(finalize(cur_s[0])))
        if mode == _MODE_COUPLED:
            if not (x_left < eta and eta <= x_left + drift):
                reached[r] = -1
                continue
            cur_v[0] = 0.0
        else:
            cur_v[0] = -HUGE_VAL if src_neg_inf else eta
        cur_n = 1
        for lvl in range(1, target_height + 1):
            need = cur_n * d
            if need > guard + 1:
                need = guard + 1
            if need > cap:
                while cap < need:
                    cap *= 2
                nxt_s_arr = np.empty(cap, dtype=np.uint64)
                nxt_v_arr = np.empty(cap, dtype=np.float64)
                nxt_s = nxt_s_arr
                nxt_v = nxt_v_arr
                if cur_s_arr.shape[0] < cap:
                    new_cs = np.empty(cap, dtype=np.uint64)
                    new_cv = np.empty(cap, dtype=np.float64)
                    new_cs[:cur_n] = cur_s_arr[:cur_n]
                    new_cv[:cur_n] = cur_v_arr[:cur_n]
                    cur_s_arr = new_cs
                    cur_v_arr = new_cv
                    cur_s = cur_s_arr
                    cur_v = cur_v_arr
            cnt = 0
            censor = False
            with nogil:
                for i in range(cur_n):
                    pv = cur_v[i]
                    for j in range(d):
                        cs = mix64(cur_s[i] ^ <uint64_t>j)
                        eta = quant(dcode, p0, p1, unit_open(finalize(cs)))
                        if mode == _MODE_RMF:
                            w = eta + drift * lvl
                            ok = w > pv
                        else:
                            w = 0.0
                            ok = (x_left < eta and eta <= x_left + drift)
                        if ok:
                            nxt_s[cnt] = cs
                            nxt_v[cnt] = w
                            cnt += 1
                            if cnt > guard:
                                censor = True
                                break
                    if censor:
                        break
            if censor:
                reached[r] = lvl
                censored[r] = 1
                break
            if cnt == 0:
                reached[r] = lvl - 1
                break
            cur_s_arr, nxt_s_arr = nxt_s_arr, cur_s_arr
            cur_v_arr, nxt_v_arr = nxt_v_arr, cur_v_arr
            cur_s = cur_s_arr
            cur_v = cur_v_arr
            nxt_s = nxt_s_arr
            nxt_v = nxt_v_arr
            cur_n = cnt
    return reached_arr, censored_arr
