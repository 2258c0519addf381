"""Win-probability engines.

G(a, b; h) is the probability that team A, fighting in fixed order with
strength carryover, eliminates all of team B. Four engines compute it:

    duel DP         exact for every contest rule; O(m n) backward
                    recursion on the state (i, j) = next fighter indices:
                    W(i, j) = p_ij W(i, j+1) + (1 - p_ij) W(i+1, j).
    geometric DP    exact, gamma = 1, uniform-strength team B. A's i-th
                    gladiator eliminates Geom(1/(1+a_i/b)) opponents
                    before dying, so A loses iff the independent sum
                    stays at or below n-1; evaluated by truncated
                    convolution with explicitly tracked overflow mass.
    beta closed form  exact, gamma = 1, equal splits on both teams:
                    G = 1 - I(r c_B / (r c_B + n c_A), r, n).
    Monte Carlo     gamma = 1, any allocations, via the memoryless
                    representation G = P(sum a_i X_i > sum b_j Y_j) with
                    i.i.d. unit exponentials; counter-based streams.

All engines accept or produce plain probabilities wrapped in
WinProbability; stderr is populated only by the Monte Carlo method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import kernels, rng
from .core import Allocation, ContestRule, PROPORTIONAL, allocation, contest_matrix
from .special import reg_inc_beta

_MC_CHUNK = 1 << 16


class Method(str, Enum):
    DUEL_DP = "duel_dp"
    GEOMETRIC_DP = "geometric_dp"
    BETA_CLOSED_FORM = "beta_closed_form"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class WinProbability:
    """A win probability together with how it was computed."""

    value: float
    method: Method
    stderr: float | None = None
    trials: int | None = None

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"probability out of range: {self.value}")
        is_mc = self.method is Method.MONTE_CARLO
        if is_mc != (self.stderr is not None) or is_mc != (self.trials is not None):
            raise ValueError("stderr and trials are present iff method is monte_carlo")


@dataclass(frozen=True)
class DuelState:
    """Fixed-order battle state: the next fighter index on each side."""

    i: int
    j: int
    m: int
    n: int

    @property
    def a_defeated(self) -> bool:
        return self.i >= self.m

    @property
    def b_defeated(self) -> bool:
        return self.j >= self.n

    @property
    def terminal(self) -> bool:
        return self.a_defeated or self.b_defeated


def _as_strengths(team) -> tuple[float, ...]:
    if isinstance(team, Allocation):
        return team.strengths
    return allocation(team).strengths


def winprob_duel_dp(a, b, rule: ContestRule = PROPORTIONAL) -> WinProbability:
    """Exact G(a, b) for any rule via the duel recursion."""
    av = _as_strengths(a)
    bv = _as_strengths(b)
    p = contest_matrix(rule, av, bv)
    return WinProbability(kernels.duel_win_prob(p), Method.DUEL_DP)


def duel_dp_reference(a, b, rule: ContestRule = PROPORTIONAL) -> float:
    """Memoized top-down mirror of the DP kernel, for cross-checking."""
    av = _as_strengths(a)
    bv = _as_strengths(b)
    m, n = len(av), len(bv)
    p = contest_matrix(rule, av, bv)
    memo: dict[tuple[int, int], float] = {}

    def w(s: DuelState) -> float:
        if s.b_defeated:
            return 1.0
        if s.a_defeated:
            return 0.0
        key = (s.i, s.j)
        if key not in memo:
            pij = p[s.i, s.j]
            memo[key] = pij * w(DuelState(s.i, s.j + 1, m, n)) + (1.0 - pij) * w(
                DuelState(s.i + 1, s.j, m, n)
            )
        return memo[key]

    return w(DuelState(0, 0, m, n))


def winprob_geometric_dp(a, n: int, b_each: float) -> WinProbability:
    """Exact G(a, (b_each,)*n) at gamma = 1 via the geometric-sum DP."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"opponent count n must be an integer >= 1, got {n}")
    if not (math.isfinite(b_each) and b_each > 0):
        raise ValueError(f"b_each must be finite and > 0, got {b_each}")
    av = _as_strengths(a)
    odds = np.array([ai / b_each for ai in av], dtype=np.float64)
    loss, _overflow = kernels.geom_loss_prob(odds, n)
    return WinProbability(1.0 - loss, Method.GEOMETRIC_DP)


def winprob_beta_closed_form(r: int, n: int, c_a: float, c_b: float) -> WinProbability:
    """Exact G at gamma = 1 for equal splits: A fields r gladiators of
    strength c_a/r, B fields n of strength c_b/n."""
    if not (isinstance(r, int) and isinstance(n, int)) or r < 1 or n < 1:
        raise ValueError(f"r and n must be integers >= 1, got ({r}, {n})")
    for name, c in (("c_a", c_a), ("c_b", c_b)):
        if not (math.isfinite(c) and c > 0):
            raise ValueError(f"{name} must be finite and > 0, got {c}")
    x = (r * c_b) / (r * c_b + n * c_a)
    return WinProbability(1.0 - reg_inc_beta(x, r, n), Method.BETA_CLOSED_FORM)


def winprob_exp_sum_mc(a, b, trials: int, seed: int) -> WinProbability:
    """Monte Carlo G at gamma = 1 from the exponential representation."""
    if not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be an integer >= 1, got {trials}")
    av = _as_strengths(a)
    bv = _as_strengths(b)
    m, n = len(av), len(bv)
    wins = 0
    for lo in range(0, trials, _MC_CHUNK):
        hi = min(trials, lo + _MC_CHUNK)
        keys = rng.trial_keys_vec(seed, np.arange(lo, hi))
        sa = np.zeros(hi - lo)
        sb = np.zeros(hi - lo)
        for i in range(m):
            sa += av[i] * (-np.log1p(-rng.draw_u01_vec(keys, i)))
        for j in range(n):
            sb += bv[j] * (-np.log1p(-rng.draw_u01_vec(keys, m + j)))
        wins += int(np.count_nonzero(sa > sb))
    phat = wins / trials
    stderr = math.sqrt(phat * (1.0 - phat) / trials)
    return WinProbability(phat, Method.MONTE_CARLO, stderr=stderr, trials=trials)


def winprob_gamma0_closed_form(m: int, n: int) -> float:
    """G for equal positive strengths under the zero-limit rule: every
    fight is a fair coin, so A wins iff it takes n heads before m tails:
    sum_{j<m} C(n+j-1, j) / 2^(n+j)."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise ValueError(f"m and n must be integers >= 1, got ({m}, {n})")
    if n + m - 2 <= 900:
        acc = 0.0
        for j in range(m):
            acc += math.ldexp(float(math.comb(n + j - 1, j)), -(n + j))
        return acc
    ln2 = math.log(2.0)
    terms = [
        math.exp(math.lgamma(n + j) - math.lgamma(j + 1.0) - math.lgamma(n)
                 - (n + j) * ln2)
        for j in range(m)
    ]
    return math.fsum(terms)
