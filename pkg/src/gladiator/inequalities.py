"""Machine checks of the probability facts behind the solver.

Each check evaluates an exact engine over a parameter grid and counts
violations of the claimed structure:

    minimizer structure   the allocation minimizing A's win probability
                          against n uniform opponents puts equal strength
                          on its support; threshold rules locate the
                          support size argmin_k h(k);
    perturbation          along a one-parameter family bridging the
                          equal splits on k and k+1 gladiators, the loss
                          probability is monotone in the outer regimes
                          and has no interior minimum in the middle one;
    value monotonicity    at equal budgets the game value is positive
                          iff m > n, increasing in m, decreasing in n;
    beta/binomial family  four equivalent tail quantities are monotone
                          in m and n;
    statistician's bet    mean-median inequalities for Beta and for the
                          geometric duel count.

All checks return CheckReport, which serializes to JSON for the CLI.
Monotonicity comparisons allow 1e-13 slack against rounding at
equality-adjacent grid points; other tolerances are per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .special import gamma_tail, reg_inc_beta
from .winprob import (
    winprob_beta_closed_form,
    winprob_duel_dp,
    winprob_geometric_dp,
)

_MONO_SLACK = 1e-13
_COMPOSITION_CAP = 10_000_000


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification grid."""

    name: str
    instances: int
    failures: int
    worst_violation: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": self.failures,
            "worst_violation": self.worst_violation,
            "passed": self.passed,
        }


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.instances = 0
        self.failures = 0
        self.worst = 0.0

    def check(self, ok: bool, violation: float = 0.0):
        self.instances += 1
        if not ok:
            self.failures += 1
            if violation > self.worst:
                self.worst = violation

    def report(self) -> CheckReport:
        return CheckReport(self.name, self.instances, self.failures, self.worst)


def _loss_prob(strengths, n: int, b: float) -> float:
    """P(A loses) = P(sum a_i X_i <= b sum_{j<=n} Y_j), exactly."""
    odds = np.asarray(strengths, dtype=np.float64) / b
    return kernels.geom_loss_prob(odds, n)[0]


def equal_split_loss(k: int, m: int, n: int, b: float) -> float:
    """h(k): loss probability when total strength m rides on k equal
    entries, against n opponents of strength b."""
    return _loss_prob([m / k] * k, n, b)


def _ceil_with_tol(q: float, tol: float = 1e-12) -> int:
    snapped = round(q)
    if abs(q - snapped) <= tol:
        return int(snapped)
    return int(math.ceil(q))


def check_minimizer_structure(m: int, n: int, b: float, grid_k: int = 12) -> CheckReport:
    """Equal-on-support structure and support-size thresholds of the
    loss-minimizing allocation with total strength m vs n opponents of
    strength b."""
    if m < 1 or n < 1 or not (math.isfinite(b) and b > 0):
        raise ValueError(f"bad parameters m={m}, n={n}, b={b}")
    tally = _Tally(f"minimizer_structure(m={m},n={n},b={b},grid_k={grid_k})")

    h = {k: equal_split_loss(k, m, n, b) for k in range(1, m + 1)}
    argmin_k = min(h, key=lambda k: (h[k], k))

    if m >= (n - 1) * b:
        tally.check(argmin_k == m, abs(argmin_k - m))
    if m <= 2.0 * (n - 1) * b / 3.0:
        tally.check(argmin_k == 1, abs(argmin_k - 1))
    if m < b * (n - 1):
        bound = max(1, _ceil_with_tol(m / (b * (n - 1) - m) - 1.0))
        tally.check(argmin_k <= bound, float(argmin_k - bound))

    if m <= 4:
        count = math.comb(grid_k + m - 1, m - 1)
        if count > _COMPOSITION_CAP:
            raise ValueError(f"{count} grid points exceed the cap {_COMPOSITION_CAP}")
        quantum = m / grid_k
        best_val = math.inf
        best_comps: list[tuple[int, ...]] = []
        from .equilibrium import compositions

        for comp in compositions(grid_k, m):
            val = _loss_prob([c * quantum for c in comp], n, b)
            if val < best_val:
                best_val = val
                best_comps = [comp]
            elif val == best_val:
                best_comps.append(comp)
        for comp in best_comps:
            nz = [c for c in comp if c > 0]
            spread = max(nz) - min(nz)
            tally.check(spread <= 1, float(spread - 1))
        # grid contains the exact k-splits for every k dividing grid_k,
        # so its minimum cannot sit above the best representable split
        representable = [h[k] for k in range(1, m + 1) if grid_k % k == 0]
        gap = best_val - min(representable)
        tally.check(gap <= 1e-15, gap)

    return tally.report()


def _perturbation_curve(k: int, m: int, n: int, b: float, steps: int) -> np.ndarray:
    """P(A loses) along a_1 = (1-s) m/(k+1), a_2..a_{k+1} = (1+s/k) m/(k+1)
    for s on a uniform grid over [0, 1]; s = k*delta, so this is the
    delta-family over [0, 1/k] with exact endpoints."""
    if steps < 2:
        raise ValueError("need at least 2 grid points")
    if m < k + 1:
        raise ValueError(f"family needs m >= k+1, got k={k}, m={m}")
    scale = m / (k + 1)
    out = np.empty(steps)
    for idx, s in enumerate(np.linspace(0.0, 1.0, steps)):
        a1 = (1.0 - s) * scale
        rest = (1.0 + s / k) * scale
        out[idx] = _loss_prob([a1] + [rest] * k, n, b)
    return out


def perturbation_regime(k: int, m: int, n: int, b: float) -> str:
    lam = b * (k + 1) / m
    ln1 = lam * (n - 1)
    if ln1 >= k + 2:
        return "nonincreasing"
    if ln1 <= k + 1:
        return "nondecreasing"
    return "middle"


def check_perturbation_monotonicity(
    k: int, m: int, n: int, b: float, steps: int = 41
) -> CheckReport:
    """Monotonicity of the loss probability along the delta-family, in
    the two outer regimes of lambda (n-1); rejects the middle regime,
    where only no-interior-minimum is claimed (see
    check_perturbation_endpoint_min)."""
    regime = perturbation_regime(k, m, n, b)
    if regime == "middle":
        raise ValueError(
            f"k+1 < lambda(n-1) < k+2 for k={k}, m={m}, n={n}, b={b}: "
            "only endpoint minimality is claimed there"
        )
    curve = _perturbation_curve(k, m, n, b, steps)
    tally = _Tally(
        f"perturbation_monotonicity(k={k},m={m},n={n},b={b},steps={steps})"
    )
    for t in range(steps - 1):
        step = curve[t + 1] - curve[t]
        if regime == "nonincreasing":
            tally.check(step <= 1e-12, step)
        else:
            tally.check(step >= -1e-12, -step)
    return tally.report()


def check_perturbation_endpoint_min(
    k: int, m: int, n: int, b: float, steps: int = 41
) -> CheckReport:
    """No interior minimum along the delta-family (the middle-regime
    claim; trivially true in the monotone regimes as well)."""
    curve = _perturbation_curve(k, m, n, b, steps)
    tally = _Tally(
        f"perturbation_endpoint_min(k={k},m={m},n={n},b={b},steps={steps})"
    )
    endpoint_min = min(curve[0], curve[-1])
    interior_min = float(curve[1:-1].min()) if steps > 2 else endpoint_min
    gap = endpoint_min - interior_min
    tally.check(gap <= 1e-12, gap)
    return tally.report()


def _equal_budget_value(m: int, n: int) -> float:
    return 0.5 - reg_inc_beta(m / (m + n), m, n)


def check_value_monotonicity(m_max: int, n_max: int) -> CheckReport:
    """At c_A = c_B: value > 0 iff m > n, zero on the diagonal,
    increasing in m, decreasing in n."""
    tally = _Tally(f"value_monotonicity(m_max={m_max},n_max={n_max})")
    v = {}
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            v[m, n] = _equal_budget_value(m, n)
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            val = v[m, n]
            if m > n:
                tally.check(val > 0.0, -val)
            elif m == n:
                tally.check(abs(val) <= 1e-13, abs(val))
            else:
                tally.check(val < 0.0, val)
            if m < m_max:
                tally.check(v[m + 1, n] > val - _MONO_SLACK, val - v[m + 1, n])
            if n < n_max:
                tally.check(v[m, n + 1] < val + _MONO_SLACK, v[m, n + 1] - val)
    return tally.report()


def _binom_upper_tail(nn: int, x: float, k0: int) -> float:
    """P(Bin(nn, x) >= k0) by pmf recurrence (independent of reg_inc_beta)."""
    if k0 > nn:
        return 0.0
    q = 1.0 - x
    t = math.comb(nn, k0) * x**k0 * q ** (nn - k0)
    s = t
    for j in range(k0, nn):
        t *= (x / q) * (nn - j) / (j + 1.0)
        s += t
    return s


def _poisson_upper_tail_at_mean(m: int) -> float:
    """P(S >= m) for S ~ Poisson(m), via the lower pmf sum."""
    term = 1.0
    s = 1.0
    for k in range(1, m):
        term *= m / k
        s += term
    return 1.0 - math.exp(-m) * s


def check_betabin_family(m_max: int, n_max: int) -> CheckReport:
    """Monotonicity of the four equivalent tail families: the beta point
    I(m/(m+n), m, n); the Binom(m+n-1, m/(m+n)) upper tail at m (both
    decreasing in m, increasing in n); the Poisson(m) upper tail at m and
    the Gamma(m, 1) CDF at m (both decreasing in m)."""
    tally = _Tally(f"betabin_family(m_max={m_max},n_max={n_max})")
    beta_pt = {}
    binom_tail = {}
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            x = m / (m + n)
            beta_pt[m, n] = reg_inc_beta(x, m, n)
            binom_tail[m, n] = _binom_upper_tail(m + n - 1, x, m)
    for table in (beta_pt, binom_tail):
        for m in range(1, m_max + 1):
            for n in range(1, n_max + 1):
                if m < m_max:
                    tally.check(
                        table[m + 1, n] < table[m, n] + _MONO_SLACK,
                        table[m + 1, n] - table[m, n],
                    )
                if n < n_max:
                    tally.check(
                        table[m, n + 1] > table[m, n] - _MONO_SLACK,
                        table[m, n] - table[m, n + 1],
                    )
    poisson = [_poisson_upper_tail_at_mean(m) for m in range(1, m_max + 1)]
    gamma_cdf = [1.0 - gamma_tail(m, float(m)) for m in range(1, m_max + 1)]
    for series in (poisson, gamma_cdf):
        for m in range(m_max - 1):
            tally.check(series[m + 1] < series[m] + _MONO_SLACK,
                        series[m + 1] - series[m])
    return tally.report()


def statistician_bet(m: int, n: int, shared: bool) -> float:
    """P that the mean of the larger exponential sample is the smaller.

    Unshared: two independent samples of sizes m and n; the probability
    is I(m/(m+n), m, n). Shared: the n-sample is a subsample of the
    m-sample (requires m > n); comparing disjoint parts reduces it to
    I((m-n)/m, m-n, n).
    """
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise ValueError(f"m and n must be integers >= 1, got ({m}, {n})")
    if shared:
        if m <= n:
            raise ValueError(f"shared bet needs m > n, got m={m}, n={n}")
        return reg_inc_beta((m - n) / m, m - n, n)
    return reg_inc_beta(m / (m + n), m, n)


def check_bet_trichotomy(n_max: int = 15, m_max: int = 45) -> CheckReport:
    """Shared bet is <, =, > 1/2 according as m >, =, < 2n."""
    tally = _Tally(f"bet_trichotomy(n_max={n_max},m_max={m_max})")
    for n in range(1, n_max + 1):
        for m in range(n + 1, m_max + 1):
            s = statistician_bet(m, n, shared=True)
            if m > 2 * n:
                tally.check(s < 0.5, s - 0.5)
            elif m == 2 * n:
                tally.check(abs(s - 0.5) <= 1e-15, abs(s - 0.5))
            else:
                tally.check(s > 0.5, 0.5 - s)
    return tally.report()


def check_mean_median(m_max: int = 30, n_max: int = 30) -> CheckReport:
    """Mean-median inequalities: I(m/(m+n), m, n) < 1/2 for m > n (the
    Beta(m, n) mean falls below its median), and the geometric duel count
    at m = n has P(Q <= n-1) = 1/2, putting its median below its mean."""
    tally = _Tally(f"mean_median(m_max={m_max},n_max={n_max})")
    for n in range(1, n_max + 1):
        for m in range(n + 1, m_max + 1):
            s = statistician_bet(m, n, shared=False)
            tally.check(s < 0.5, s - 0.5)
    for m in range(1, m_max + 1):
        half = _loss_prob([1.0] * m, m, 1.0)
        tally.check(abs(half - 0.5) <= 1e-12, abs(half - 0.5))
    return tally.report()


def check_engine_agreement(
    r_max: int = 10,
    n_max: int = 10,
    budgets: tuple = ((1.0, 1.0), (1.0, 2.0), (2.0, 3.0)),
    tol: float = 1e-10,
) -> CheckReport:
    """Duel DP vs beta closed form vs geometric DP on equal splits."""
    tally = _Tally(f"engine_agreement(r_max={r_max},n_max={n_max})")
    for c_a, c_b in budgets:
        for r in range(1, r_max + 1):
            for n in range(1, n_max + 1):
                a = [c_a / r] * r
                b_each = c_b / n
                dp = winprob_duel_dp(a, [b_each] * n).value
                beta = winprob_beta_closed_form(r, n, c_a, c_b).value
                geo = winprob_geometric_dp(a, n, b_each).value
                tally.check(abs(dp - beta) <= tol, abs(dp - beta))
                tally.check(abs(dp - geo) <= tol, abs(dp - geo))
    return tally.report()
