"""Pure-Python kernel backend.

Reference implementations of the hot numeric loops. The compiled backend
(_kernels_c) mirrors these operation for operation; duel_win_prob,
geom_loss_prob and simulate_win_count are written so both backends
produce bit-identical doubles (same operation order, same integer RNG).
betainc_int may differ between backends by a few ulp (libm lgamma).

Simulation draw contract, per trial (see rng module for the stream):

    FixedOrder / WinnerToBench: fight f consumes draw f (outcome only).
    RandomDraw: fight f consumes draws 3f (A's pick), 3f+1 (B's pick),
                3f+2 (outcome).

A fighter pick with c living members is min(floor(u * c), c - 1),
mapped to the (idx+1)-th living index in ascending order.
"""

from __future__ import annotations

import math

import numpy as np

from . import rng

POLICY_FIXED = 0
POLICY_BENCH = 1
POLICY_RANDOM = 2

_CHUNK = 1 << 15


def duel_win_prob(p) -> float:
    """Probability that A clears all n opponents, given the single-fight
    win matrix p[i][j] (A's i-th gladiator beating B's j-th)."""
    pm = np.asarray(p, dtype=np.float64).tolist()
    m = len(pm)
    n = len(pm[0])
    row = [0.0] * n + [1.0]  # W at i = m: A already defeated unless j = n
    for i in range(m - 1, -1, -1):
        new = [0.0] * (n + 1)
        new[n] = 1.0
        for j in range(n - 1, -1, -1):
            pij = pm[i][j]
            new[j] = pij * new[j + 1] + (1.0 - pij) * row[j]
        row = new
    return row[0]


def geom_loss_prob(odds, n: int) -> tuple[float, float]:
    """P(sum of Geom(1/(1+odds_i)) <= n-1) by truncated convolution.

    Returns (loss, overflow): the retained mass at or below n-1 and the
    explicitly tracked mass pushed past it (loss + overflow ~ 1).
    """
    ws = np.asarray(odds, dtype=np.float64).tolist()
    dist = [0.0] * n
    dist[0] = 1.0
    overflow = 0.0
    for w in ws:
        p = 1.0 / (1.0 + w)
        q = 1.0 - p
        new = [0.0] * n
        for k in range(n):
            d = dist[k]
            if d == 0.0:
                continue
            qp = 1.0
            for t in range(n - k):
                new[k + t] += d * qp * p
                qp *= q
            overflow += d * qp
        dist = new
    loss = 0.0
    for k in range(n):
        loss += dist[k]
    return loss, overflow


def betainc_int(x: float, alpha: int, beta: int) -> float:
    """Fast I_x(alpha, beta) for integer parameters: upper binomial tail
    P(Bin(alpha+beta-1, x) >= alpha) via an lgamma-seeded term recurrence.

    Sweep-grade accuracy (~1e-13); the exact dyadic-friendly evaluation
    lives in special.reg_inc_beta.
    """
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    nn = alpha + beta - 1
    if (nn + 1) * x > alpha:
        # the summand peaks above alpha, where seeding the recurrence at
        # alpha can underflow to zero; the flipped tail seeds at its peak
        return 1.0 - betainc_int(1.0 - x, beta, alpha)
    t = math.exp(
        math.lgamma(nn + 1.0)
        - math.lgamma(alpha + 1.0)
        - math.lgamma(nn - alpha + 1.0)
        + alpha * math.log(x)
        + (nn - alpha) * math.log1p(-x)
    )
    s = t
    ratio = x / (1.0 - x)
    for j in range(alpha, nn):
        t = t * ratio * (nn - j) / (j + 1.0)
        s += t
    if s > 1.0:
        return 1.0
    return s


# ---------------------------------------------------------------------------
# Batched battle simulation, numpy-vectorized over trials.
# ---------------------------------------------------------------------------

def simulate_win_count(p, policy: int, trials: int, seed: int,
                       start_trial: int = 0) -> int:
    pm = np.ascontiguousarray(p, dtype=np.float64)
    wins = 0
    for lo in range(0, trials, _CHUNK):
        hi = min(trials, lo + _CHUNK)
        t0 = lo + start_trial
        keys = rng.trial_keys_vec(seed, np.arange(t0, t0 + (hi - lo)))
        if policy == POLICY_FIXED:
            wins += _chunk_fixed(pm, keys)
        elif policy == POLICY_BENCH:
            wins += _chunk_bench(pm, keys)
        elif policy == POLICY_RANDOM:
            wins += _chunk_random(pm, keys)
        else:
            raise ValueError(f"unknown policy code {policy}")
    return wins


def _chunk_fixed(p: np.ndarray, keys: np.ndarray) -> int:
    m, n = p.shape
    c = keys.shape[0]
    i = np.zeros(c, dtype=np.int64)
    j = np.zeros(c, dtype=np.int64)
    live = np.arange(c)
    for step in range(m + n - 1):
        if live.size == 0:
            break
        u = rng.draw_u01_vec(keys[live], step)
        aw = u < p[i[live], j[live]]
        j[live[aw]] += 1
        i[live[~aw]] += 1
        live = live[(i[live] < m) & (j[live] < n)]
    return int(np.count_nonzero(j == n))


def _chunk_bench(p: np.ndarray, keys: np.ndarray) -> int:
    m, n = p.shape
    c = keys.shape[0]
    qa = np.tile(np.arange(m, dtype=np.int64), (c, 1))
    qb = np.tile(np.arange(n, dtype=np.int64), (c, 1))
    ha = np.zeros(c, dtype=np.int64)
    hb = np.zeros(c, dtype=np.int64)
    ca = np.full(c, m, dtype=np.int64)
    cb = np.full(c, n, dtype=np.int64)
    live = np.arange(c)
    for step in range(m + n - 1):
        if live.size == 0:
            break
        ia = qa[live, ha[live]]
        ib = qb[live, hb[live]]
        u = rng.draw_u01_vec(keys[live], step)
        aw = u < p[ia, ib]
        la = live[aw]
        lb = live[~aw]
        # A won: its front fighter goes to the back, B's front dies.
        qa[la, (ha[la] + ca[la]) % m] = ia[aw]
        ha[la] = (ha[la] + 1) % m
        hb[la] = (hb[la] + 1) % n
        cb[la] -= 1
        # B won: mirror image.
        qb[lb, (hb[lb] + cb[lb]) % n] = ib[~aw]
        hb[lb] = (hb[lb] + 1) % n
        ha[lb] = (ha[lb] + 1) % m
        ca[lb] -= 1
        live = live[(ca[live] > 0) & (cb[live] > 0)]
    return int(np.count_nonzero(cb == 0))


def _chunk_random(p: np.ndarray, keys: np.ndarray) -> int:
    m, n = p.shape
    c = keys.shape[0]
    alive_a = np.ones((c, m), dtype=bool)
    alive_b = np.ones((c, n), dtype=bool)
    ca = np.full(c, m, dtype=np.int64)
    cb = np.full(c, n, dtype=np.int64)
    live = np.arange(c)
    for step in range(m + n - 1):
        if live.size == 0:
            break
        kk = keys[live]
        ua = rng.draw_u01_vec(kk, 3 * step)
        ub = rng.draw_u01_vec(kk, 3 * step + 1)
        u = rng.draw_u01_vec(kk, 3 * step + 2)
        # u*c can round up to c when c is a power of two and u is maximal
        idxa = np.minimum((ua * ca[live]).astype(np.int64), ca[live] - 1)
        idxb = np.minimum((ub * cb[live]).astype(np.int64), cb[live] - 1)
        cuma = np.cumsum(alive_a[live], axis=1)
        cumb = np.cumsum(alive_b[live], axis=1)
        ia = np.argmax(cuma > idxa[:, None], axis=1)
        ib = np.argmax(cumb > idxb[:, None], axis=1)
        aw = u < p[ia, ib]
        la = live[aw]
        lb = live[~aw]
        alive_b[la, ib[aw]] = False
        cb[la] -= 1
        alive_a[lb, ia[~aw]] = False
        ca[lb] -= 1
        live = live[(ca[live] > 0) & (cb[live] > 0)]
    return int(np.count_nonzero(cb == 0))
