"""Equilibrium structure of the team contest at gamma = 1.

With budgets c_A <= c_B, every pure equilibrium has the weaker team A
split its budget equally over some r of its m gladiators and the
stronger team B split equally over all n. The equilibrium value to A is

    v(r*) = max_{1 <= r <= m} 1/2 - I(r c_B / (r c_B + n c_A), r, n),

and three regimes describe r*:

    full spread    c_B <= (n/(n-1)) c_A  (always, when n = 1): r* = m
    concentrated   c_B >= (3n/(2(n-1))) c_A: r* = 1
    interior       in between: r* in {1, ..., m}, located by the sweep

For c_A > c_B the game is solved with the roles mirrored and the value
negated; r_star then counts the weaker team B's positive entries.

The r-sweep evaluates the whole profile v(1..m) in one vectorized
log-space binomial sum, then re-evaluates near-tied leaders with the
exact integer-binomial path, so reported values match
winprob_beta_closed_form bit for bit and ties break to the smallest r
on exact arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Sequence

import numpy as np
from scipy.special import gammaln

from . import kernels
from .core import Allocation, GameSpec, PROPORTIONAL, contest_matrix
from .special import gamma_tail
from .winprob import winprob_beta_closed_form

# Profile values within this slack of the sweep maximum get re-evaluated
# exactly; must exceed the log-space evaluation error by a wide margin.
_REFINE_SLACK = 1e-10
_TIE_SLACK = 1e-15


class Regime(str, Enum):
    FULL_SPREAD = "full_spread"
    CONCENTRATED = "concentrated"
    INTERIOR = "interior"


@dataclass(frozen=True)
class EquilibriumSolution:
    """Equilibrium of G(m, n, c_A, c_B); value is team A's payoff.

    r_star counts the weaker team's positive entries (the weaker team
    concentrates; the stronger spreads over its whole roster), and
    support holds those indices. maximizers lists every r tied at the
    optimum of the weaker team's value profile, smallest first.
    """

    spec: GameSpec
    r_star: int
    support: tuple[int, ...]
    a_star: Allocation
    b_star: Allocation
    value: float
    regime: Regime
    maximizers: tuple[int, ...]
    weak_team: str


def _regime_weak_frame(n: int, c_weak: float, c_strong: float) -> Regime:
    if n == 1:
        return Regime.FULL_SPREAD
    if c_strong <= (n / (n - 1)) * c_weak:
        return Regime.FULL_SPREAD
    if c_strong >= (3 * n / (2 * (n - 1))) * c_weak:
        return Regime.CONCENTRATED
    return Regime.INTERIOR


def threshold_regime(spec: GameSpec) -> Regime:
    """Regime classification; requires c_a <= c_b (mirror first otherwise)."""
    if spec.c_a > spec.c_b:
        raise ValueError("threshold_regime needs c_a <= c_b; swap roles first")
    return _regime_weak_frame(spec.n, spec.c_a, spec.c_b)


def value_profile(m: int, n: int, c_weak: float, c_strong: float) -> np.ndarray:
    """v(r) for r = 1..m, vectorized (log-space binomial sums).

    Sweep-grade accuracy (~1e-13 absolute); exact evaluations go through
    winprob_beta_closed_form.
    """
    r = np.arange(1, m + 1, dtype=np.float64)
    x = (r * c_strong) / (r * c_strong + n * c_weak)
    rr = np.repeat(r, n)
    jj = rr + np.tile(np.arange(n, dtype=np.float64), m)
    nn = rr + n - 1.0
    xx = np.repeat(x, n)
    log_terms = (
        gammaln(nn + 1.0) - gammaln(jj + 1.0) - gammaln(nn - jj + 1.0)
        + jj * np.log(xx) + (nn - jj) * np.log1p(-xx)
    )
    tail = np.add.reduceat(np.exp(log_terms), np.arange(0, m * n, n))
    return 0.5 - tail


def _value_exact(r: int, n: int, c_weak: float, c_strong: float) -> float:
    return winprob_beta_closed_form(r, n, c_weak, c_strong).value - 0.5


def _solve_weak_frame(m: int, n: int, c_weak: float, c_strong: float):
    prof = value_profile(m, n, c_weak, c_strong)
    vmax = float(prof.max())
    candidates = [r for r in range(1, m + 1) if prof[r - 1] >= vmax - _REFINE_SLACK]
    exact = {r: _value_exact(r, n, c_weak, c_strong) for r in candidates}
    vbest = max(exact.values())
    maximizers = tuple(r for r in candidates if exact[r] >= vbest - _TIE_SLACK)
    regime = _regime_weak_frame(n, c_weak, c_strong)
    # ties: full spread prefers the whole roster (the closed form names
    # r = m there, and the boundary can tie exactly); otherwise smallest
    r_star = maximizers[-1] if regime is Regime.FULL_SPREAD else maximizers[0]
    return r_star, exact[r_star], regime, maximizers


def _split(budget: float, support_size: int, team_size: int) -> Allocation:
    share = budget / support_size
    v = (share,) * support_size + (0.0,) * (team_size - support_size)
    return Allocation(v, budget)


def solve_equilibrium(spec, n=None, c_a=None, c_b=None) -> EquilibriumSolution:
    """Equilibrium allocations, value, regime and tied maximizers.

    Accepts a GameSpec or the bare quadruple (m, n, c_a, c_b).
    """
    if not isinstance(spec, GameSpec):
        if n is None or c_a is None or c_b is None:
            raise TypeError("pass a GameSpec or all of (m, n, c_a, c_b)")
        spec = GameSpec(int(spec), int(n), float(c_a), float(c_b))
    elif n is not None or c_a is not None or c_b is not None:
        raise TypeError("extra arguments alongside a GameSpec")
    if spec.c_a <= spec.c_b:
        r_star, value, regime, maximizers = _solve_weak_frame(
            spec.m, spec.n, spec.c_a, spec.c_b
        )
        a_star = _split(spec.c_a, r_star, spec.m)
        b_star = _split(spec.c_b, spec.n, spec.n)
        weak = "A"
    else:
        r_star, value_b, regime, maximizers = _solve_weak_frame(
            spec.n, spec.m, spec.c_b, spec.c_a
        )
        value = -value_b
        a_star = _split(spec.c_a, spec.m, spec.m)
        b_star = _split(spec.c_b, r_star, spec.n)
        weak = "B"
    return EquilibriumSolution(
        spec=spec,
        r_star=r_star,
        support=tuple(range(r_star)),
        a_star=a_star,
        b_star=b_star,
        value=value,
        regime=regime,
        maximizers=maximizers,
        weak_team=weak,
    )


def asymptotic_r_star(m: int, beta: float) -> int:
    """argmax over r <= m of P(Gamma(r) > r beta), the large-n surrogate
    for the concentration count at budget ratio beta = c_B/c_A.

    Requires beta >= 1. Once the profile strictly decreases it stays
    decreasing, so the scan stops at the first drop; ties keep the
    smallest r. For beta > t0 (t0_root) the answer is 1.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be an integer >= 1, got {m}")
    if not (math.isfinite(beta) and beta >= 1.0):
        raise ValueError(f"beta must be >= 1, got {beta}")
    best_r = 1
    best_f = gamma_tail(1, beta)
    prev = best_f
    for r in range(2, m + 1):
        cur = gamma_tail(r, r * beta)
        if cur > best_f:
            best_r, best_f = r, cur
        if cur < prev:
            break
        prev = cur
    return best_r


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All nonnegative integer vectors of length `parts` summing to
    `total`, in ascending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def best_response_bruteforce(
    spec: GameSpec,
    b: Allocation,
    grid_k: int,
    max_compositions: int = 10_000_000,
) -> Allocation:
    """Exhaustive gamma = 1 best response for A on the grid of budget
    multiples of c_a/grid_k; lexicographically smallest maximizer."""
    if not isinstance(grid_k, int) or grid_k < 1:
        raise ValueError(f"grid_k must be an integer >= 1, got {grid_k}")
    count = math.comb(grid_k + spec.m - 1, spec.m - 1)
    if count > max_compositions:
        raise ValueError(
            f"{count} grid points exceed the cap {max_compositions}"
        )
    bv = b.strengths
    quantum = spec.c_a / grid_k
    best_comp = None
    best_val = -1.0
    for comp in compositions(grid_k, spec.m):
        av = [k * quantum for k in comp]
        val = kernels.duel_win_prob(contest_matrix(PROPORTIONAL, av, bv))
        if val > best_val:
            best_val = val
            best_comp = comp
    return Allocation(tuple(k * quantum for k in best_comp), spec.c_a)


def equilibrium_supports(team_size: int, r_star: int) -> Iterator[tuple[int, ...]]:
    """All index sets the concentrating team may use; the solver reports
    the canonical first one, this enumerates the rest."""
    return itertools.combinations(range(team_size), r_star)


@dataclass(frozen=True)
class Sweep:
    """One-parameter family: vary `parameter` over `values`."""

    parameter: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.parameter not in ("m", "n", "c_a", "c_b"):
            raise ValueError(f"unknown sweep parameter {self.parameter!r}")


@dataclass(frozen=True)
class SweepPoint:
    parameter: str
    param_value: float
    r_star: int
    value: float
    regime: Regime


def value_curve(base: GameSpec, sweep: Sweep) -> list[SweepPoint]:
    """Solve the game along a parameter sweep."""
    points = []
    for v in sweep.values:
        val = int(v) if sweep.parameter in ("m", "n") else float(v)
        sol = solve_equilibrium(replace(base, **{sweep.parameter: val}))
        points.append(SweepPoint(sweep.parameter, val, sol.r_star, sol.value, sol.regime))
    return points
