"""Compiled recurrence kernels.

Every kernel works in h-space (``h_0 = 1``) on a working array that is
kept near unit magnitude by shifting the trailing window by a power of two
whenever the newest entry leaves ``[2**-LIMIT, 2**LIMIT]``.  The value of
entry ``n`` is ``val[n] * 2**scale[n]`` where ``scale[n]`` is the shift in
force when it was produced.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

LIMIT_EXP = 600


@njit(cache=True, nogil=True)
def _rescale(work, lo, hi):
    top = 0.0
    for i in range(lo, hi + 1):
        a = abs(work[i])
        if a > top:
            top = a
    if top == 0.0:
        return 0
    _, e = math.frexp(top)
    for i in range(lo, hi + 1):
        work[i] = math.ldexp(work[i], -e)
    return e


@njit(cache=True, nogil=True)
def _out_of_range(v):
    a = abs(v)
    return a > 2.0 ** LIMIT_EXP or (a != 0.0 and a < 2.0 ** -LIMIT_EXP)


@njit(cache=True, nogil=True)
def adelson_kernel(k, lam, n_max):
    """R_n = (lam / n) * sum_{j=1..k} j R_{n-j}, zero for negative index."""
    work = np.zeros(n_max + 1)
    val = np.zeros(n_max + 1)
    scale = np.zeros(n_max + 1, dtype=np.int64)
    work[0] = 1.0
    val[0] = 1.0
    s = 0
    for n in range(1, n_max + 1):
        acc = 0.0
        for j in range(1, k + 1):
            if n - j < 0:
                break
            acc += j * work[n - j]
        v = (lam / n) * acc
        work[n] = v
        if _out_of_range(v):
            s += _rescale(work, max(0, n - k), n)
        val[n] = work[n]
        scale[n] = s
    return val, scale


@njit(cache=True, nogil=True)
def gps_kernel(k, lam, n_max):
    """n P_n = sum_{j=1..k} (j lam) P_{n-j}; accumulates the weighted terms first."""
    work = np.zeros(n_max + 1)
    val = np.zeros(n_max + 1)
    scale = np.zeros(n_max + 1, dtype=np.int64)
    weights = np.empty(k)
    for j in range(1, k + 1):
        weights[j - 1] = j * lam
    work[0] = 1.0
    val[0] = 1.0
    s = 0
    for n in range(1, n_max + 1):
        lo = n - k
        if lo < 0:
            lo = 0
        total = 0.0
        # oldest first: index m contributes with weight (n - m) * lam
        for m in range(lo, n):
            total += weights[n - m - 1] * work[m]
        v = total / n
        work[n] = v
        if _out_of_range(v):
            s += _rescale(work, max(0, n - k), n)
        val[n] = work[n]
        scale[n] = s
    return val, scale


@njit(cache=True, nogil=True)
def kwon_philippou_kernel(k, lam, n_max):
    """n h(n) = sum_{j=1..min(n,k)} j lam h(n-j), with the n <= k / n > k split explicit."""
    work = np.zeros(n_max + 1)
    val = np.zeros(n_max + 1)
    scale = np.zeros(n_max + 1, dtype=np.int64)
    work[0] = 1.0
    val[0] = 1.0
    s = 0
    for n in range(1, n_max + 1):
        acc = 0.0
        if n <= k:
            for j in range(1, n + 1):
                acc += j * lam * work[n - j]
        else:
            for j in range(1, k + 1):
                acc += j * lam * work[n - j]
        v = acc / n
        work[n] = v
        if _out_of_range(v):
            s += _rescale(work, max(0, n - k), n)
        val[n] = work[n]
        scale[n] = s
    return val, scale


# -- double-double variant ----------------------------------------------------
# Values carried as unevaluated sums hi + lo; used where a CDF near 1/2 must
# be accurate to ~1e-16 after tens of thousands of steps.

@njit(cache=True, nogil=True, inline="always")
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True, nogil=True, inline="always")
def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@njit(cache=True, nogil=True, inline="always")
def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


@njit(cache=True, nogil=True, inline="always")
def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit(cache=True, nogil=True)
def adelson_dd_kernel(k, lam, n_max):
    """Adelson recurrence in double-double arithmetic; returns (hi, lo, scale)."""
    hi = np.zeros(n_max + 1)
    lo = np.zeros(n_max + 1)
    out_hi = np.zeros(n_max + 1)
    out_lo = np.zeros(n_max + 1)
    scale = np.zeros(n_max + 1, dtype=np.int64)
    hi[0] = 1.0
    out_hi[0] = 1.0
    s = 0
    for n in range(1, n_max + 1):
        ah = 0.0
        al = 0.0
        for j in range(1, k + 1):
            if n - j < 0:
                break
            ph, pl = _two_prod(hi[n - j], float(j))
            pl += lo[n - j] * j
            sh, sl = _two_sum(ah, ph)
            sl += al + pl
            ah, al = _fast_two_sum(sh, sl)
        # times lam
        ph, pl = _two_prod(ah, lam)
        pl += al * lam
        ah, al = _fast_two_sum(ph, pl)
        # divided by n
        q1 = ah / n
        ph, pl = _two_prod(q1, float(n))
        rh, rl = _two_sum(ah, -ph)
        rl += al - pl
        q2 = (rh + rl) / n
        vh, vl = _fast_two_sum(q1, q2)
        hi[n] = vh
        lo[n] = vl
        if _out_of_range(vh):
            top = 0.0
            for i in range(max(0, n - k), n + 1):
                if abs(hi[i]) > top:
                    top = abs(hi[i])
            _, e = math.frexp(top)
            for i in range(max(0, n - k), n + 1):
                hi[i] = math.ldexp(hi[i], -e)
                lo[i] = math.ldexp(lo[i], -e)
            s += e
        out_hi[n] = hi[n]
        out_lo[n] = lo[n]
        scale[n] = s
    return out_hi, out_lo, scale
