# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend.

Mirrors _kernels_py operation for operation; see that module for the
draw contract. duel_win_prob, geom_loss_prob and simulate_win_count are
kept bit-identical to the pure backend (same operation order, integer
RNG); betainc_int is allowed to differ by a few ulp.
"""

from libc.math cimport exp, lgamma, log, log1p
from libc.stdint cimport int64_t, uint64_t

import numpy as np

POLICY_FIXED = 0
POLICY_BENCH = 1
POLICY_RANDOM = 2

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * (<uint64_t>0xBF58476D1CE4E5B9)
    z = (z ^ (z >> 27)) * (<uint64_t>0x94D049BB133111EB)
    return z ^ (z >> 31)


cdef inline double _draw_u01(uint64_t key, uint64_t index) noexcept nogil:
    return <double>(_mix64(key + (index + 1) * GOLDEN) >> 11) * INV_2_53


def duel_win_prob(p) -> float:
    """Probability that A clears all n opponents, given the single-fight
    win matrix p[i][j]."""
    cdef double[:, ::1] pm = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t m = pm.shape[0], n = pm.shape[1], i, j
    cdef double[:, ::1] w = np.zeros((2, n + 1), dtype=np.float64)
    cdef Py_ssize_t cur = 0, prev = 1, swap
    cdef double pij
    w[prev, n] = 1.0
    with nogil:
        for i in range(m - 1, -1, -1):
            for j in range(n):
                w[cur, j] = 0.0
            w[cur, n] = 1.0
            for j in range(n - 1, -1, -1):
                pij = pm[i, j]
                w[cur, j] = pij * w[cur, j + 1] + (1.0 - pij) * w[prev, j]
            swap = cur
            cur = prev
            prev = swap
    return w[prev, 0]


def geom_loss_prob(odds, n) -> tuple:
    """P(sum of Geom(1/(1+odds_i)) <= n-1); returns (loss, overflow)."""
    cdef double[::1] ws = np.ascontiguousarray(odds, dtype=np.float64)
    cdef Py_ssize_t nn = n, mm = ws.shape[0], idx, k, t
    cdef double[:, ::1] buf = np.zeros((2, nn), dtype=np.float64)
    cdef Py_ssize_t cur = 1, prev = 0, swap
    cdef double overflow = 0.0, p, q, w, d, qp, loss = 0.0
    buf[prev, 0] = 1.0
    with nogil:
        for idx in range(mm):
            w = ws[idx]
            p = 1.0 / (1.0 + w)
            q = 1.0 - p
            for k in range(nn):
                buf[cur, k] = 0.0
            for k in range(nn):
                d = buf[prev, k]
                if d == 0.0:
                    continue
                qp = 1.0
                for t in range(nn - k):
                    buf[cur, k + t] += d * qp * p
                    qp *= q
                overflow += d * qp
            swap = cur
            cur = prev
            prev = swap
        for k in range(nn):
            loss += buf[prev, k]
    return loss, overflow


def betainc_int(double x, long alpha, long beta) -> float:
    """Fast I_x(alpha, beta) for integer parameters (binomial upper tail)."""
    cdef long nn = alpha + beta - 1, j
    cdef double t, s, ratio
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if (nn + 1) * x > alpha:
        # the summand peaks above alpha, where seeding the recurrence at
        # alpha can underflow to zero; the flipped tail seeds at its peak
        return 1.0 - betainc_int(1.0 - x, beta, alpha)
    t = exp(
        lgamma(nn + 1.0)
        - lgamma(alpha + 1.0)
        - lgamma(nn - alpha + 1.0)
        + alpha * log(x)
        + (nn - alpha) * log1p(-x)
    )
    s = t
    ratio = x / (1.0 - x)
    for j in range(alpha, nn):
        t = t * ratio * (nn - j) / (j + 1.0)
        s += t
    if s > 1.0:
        return 1.0
    return s


cdef inline bint _battle_fixed(double[:, ::1] p, Py_ssize_t m, Py_ssize_t n,
                               uint64_t key) noexcept nogil:
    cdef Py_ssize_t i = 0, j = 0
    cdef uint64_t k = 0
    while i < m and j < n:
        if _draw_u01(key, k) < p[i, j]:
            j += 1
        else:
            i += 1
        k += 1
    return j == n


cdef inline bint _battle_bench(double[:, ::1] p, Py_ssize_t m, Py_ssize_t n,
                               uint64_t key, int64_t* qa, int64_t* qb) noexcept nogil:
    cdef Py_ssize_t ha = 0, hb = 0, ca = m, cb = n, c, ia, ib
    cdef uint64_t k = 0
    for c in range(m):
        qa[c] = c
    for c in range(n):
        qb[c] = c
    while ca > 0 and cb > 0:
        ia = qa[ha]
        ib = qb[hb]
        if _draw_u01(key, k) < p[ia, ib]:
            qa[(ha + ca) % m] = ia
            ha = (ha + 1) % m
            hb = (hb + 1) % n
            cb -= 1
        else:
            qb[(hb + cb) % n] = ib
            hb = (hb + 1) % n
            ha = (ha + 1) % m
            ca -= 1
        k += 1
    return cb == 0


cdef inline bint _battle_random(double[:, ::1] p, Py_ssize_t m, Py_ssize_t n,
                                uint64_t key, signed char* la, signed char* lb) noexcept nogil:
    cdef Py_ssize_t ca = m, cb = n, c, cnt, idx, ia = 0, ib = 0
    cdef uint64_t k = 0
    for c in range(m):
        la[c] = 1
    for c in range(n):
        lb[c] = 1
    while ca > 0 and cb > 0:
        # u*c can round up to c when c is a power of two and u is maximal
        idx = <Py_ssize_t>(_draw_u01(key, k) * ca)
        if idx >= ca:
            idx = ca - 1
        cnt = 0
        for c in range(m):
            if la[c]:
                if cnt == idx:
                    ia = c
                    break
                cnt += 1
        idx = <Py_ssize_t>(_draw_u01(key, k + 1) * cb)
        if idx >= cb:
            idx = cb - 1
        cnt = 0
        for c in range(n):
            if lb[c]:
                if cnt == idx:
                    ib = c
                    break
                cnt += 1
        if _draw_u01(key, k + 2) < p[ia, ib]:
            lb[ib] = 0
            cb -= 1
        else:
            la[ia] = 0
            ca -= 1
        k += 3
    return cb == 0


def simulate_win_count(p, int policy, long long trials, seed,
                       long long start_trial=0) -> int:
    cdef double[:, ::1] pm = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t m = pm.shape[0], n = pm.shape[1]
    cdef uint64_t s = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef long long wins = 0, t
    cdef uint64_t key
    qa_arr = np.empty(m, dtype=np.int64)
    qb_arr = np.empty(n, dtype=np.int64)
    la_arr = np.empty(m, dtype=np.int8)
    lb_arr = np.empty(n, dtype=np.int8)
    cdef int64_t[::1] qa = qa_arr
    cdef int64_t[::1] qb = qb_arr
    cdef signed char[::1] la = la_arr
    cdef signed char[::1] lb = lb_arr
    if policy not in (POLICY_FIXED, POLICY_BENCH, POLICY_RANDOM):
        raise ValueError(f"unknown policy code {policy}")
    with nogil:
        for t in range(trials):
            key = _mix64(s + (<uint64_t>(start_trial + t) + 1) * GOLDEN)
            if policy == 0:  # POLICY_FIXED
                wins += _battle_fixed(pm, m, n, key)
            elif policy == 1:  # POLICY_BENCH
                wins += _battle_bench(pm, m, n, key, &qa[0], &qb[0])
            else:
                wins += _battle_random(pm, m, n, key, &la[0], &lb[0])
    return wins
