"""Domain types for sequential-duel team contests.

A game G(m, n, c_A, c_B) pits team A (m gladiators, total strength
budget c_A) against team B (n gladiators, budget c_B). Gladiators fight
one-on-one; a fight between strengths a and b is won by the first with
probability h(a, b), the loser is eliminated, the winner keeps fighting
with strength unchanged, and the team left standing wins the game.

The contest rule h is one of a one-parameter family plus its two limits:

    power(gamma):  h(a, b) = a^gamma / (a^gamma + b^gamma),  gamma > 0
    infinity_limit: deterministic, the larger strength wins
    zero_limit:     any positive strength is a fair coin against any
                    other positive strength

Boundary conventions shared by every rule: h(a, 0) = 1 for a > 0 and
h(0, 0) = 1/2. Complements are exact by construction: contest_prob
computes the stronger side's probability once and returns it or its
float complement, so h(a, b) + h(b, a) == 1.0 holds in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

BUDGET_RTOL = 1e-12


class AllocationError(ValueError):
    """Invalid strength allocation."""


class NegativeEntryError(AllocationError):
    pass


class BudgetMismatchError(AllocationError):
    pass


class AllZeroError(AllocationError):
    pass


@dataclass(frozen=True)
class GameSpec:
    """Game shape: team sizes and strength budgets."""

    m: int
    n: int
    c_a: float
    c_b: float

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise ValueError("team sizes m, n must be integers")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"team sizes must be >= 1, got m={self.m}, n={self.n}")
        for name, c in (("c_a", self.c_a), ("c_b", self.c_b)):
            if not (math.isfinite(c) and c > 0):
                raise ValueError(f"budget {name} must be finite and > 0, got {c}")


@dataclass(frozen=True)
class Allocation:
    """A team's strength vector together with the budget it must spend.

    Entries are nonnegative, at least one is positive, and they sum to
    the budget within 1e-12 relative tolerance. Stored exactly as given
    (no normalization); all downstream computations are scale-invariant.
    """

    strengths: tuple[float, ...]
    budget: float

    def __post_init__(self):
        if len(self.strengths) == 0:
            raise AllocationError("allocation needs at least one entry")
        if not (math.isfinite(self.budget) and self.budget > 0):
            raise AllocationError(f"budget must be finite and > 0, got {self.budget}")
        total = 0.0
        any_positive = False
        for v in self.strengths:
            if not math.isfinite(v):
                raise AllocationError(f"entries must be finite, got {v}")
            if v < 0:
                raise NegativeEntryError(f"negative strength {v}")
            if v > 0:
                any_positive = True
            total += v
        if not any_positive:
            raise AllZeroError("allocation must have at least one positive entry")
        if abs(total - self.budget) > BUDGET_RTOL * abs(self.budget):
            raise BudgetMismatchError(
                f"entries sum to {total!r}, budget is {self.budget!r}"
            )

    def __len__(self) -> int:
        return len(self.strengths)


def validate_allocation(strengths: Sequence[float], budget: float) -> Allocation:
    """Check a raw strength vector against a budget and wrap it."""
    return Allocation(tuple(float(v) for v in strengths), float(budget))


def allocation(strengths: Sequence[float]) -> Allocation:
    """Wrap a raw vector, taking its own sum as the budget."""
    vs = tuple(float(v) for v in strengths)
    return Allocation(vs, math.fsum(vs))


class RuleKind(str, Enum):
    POWER = "power"
    LIMIT_ZERO = "zero"
    LIMIT_INFINITY = "inf"


@dataclass(frozen=True)
class ContestRule:
    """Single-fight win rule. Build via the class methods."""

    kind: RuleKind
    gamma: float | None = None

    def __post_init__(self):
        if self.kind is RuleKind.POWER:
            g = self.gamma
            if g is None or not math.isfinite(g) or g <= 0:
                raise ValueError(f"power rule needs finite gamma > 0, got {g}")
        elif self.gamma is not None:
            raise ValueError("gamma applies to the power rule only")

    @classmethod
    def power(cls, gamma: float) -> "ContestRule":
        return cls(RuleKind.POWER, float(gamma))

    @classmethod
    def zero_limit(cls) -> "ContestRule":
        return cls(RuleKind.LIMIT_ZERO)

    @classmethod
    def infinity_limit(cls) -> "ContestRule":
        return cls(RuleKind.LIMIT_INFINITY)

    def describe(self) -> str:
        if self.kind is RuleKind.POWER:
            return f"power(gamma={self.gamma!r})"
        return "zero-limit" if self.kind is RuleKind.LIMIT_ZERO else "infinity-limit"


PROPORTIONAL = ContestRule.power(1.0)


def contest_prob(rule: ContestRule, a: float, b: float) -> float:
    """P(strength a beats strength b in one fight) under the rule."""
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"strengths must be finite, got ({a}, {b})")
    if a < 0 or b < 0:
        raise ValueError(f"strengths must be >= 0, got ({a}, {b})")
    if a == b:
        return 0.5
    if rule.kind is RuleKind.LIMIT_INFINITY:
        return 1.0 if a > b else 0.0
    if rule.kind is RuleKind.LIMIT_ZERO:
        if b == 0.0:
            return 1.0
        if a == 0.0:
            return 0.0
        return 0.5
    # power rule, a != b
    if b == 0.0:
        return 1.0
    if a == 0.0:
        return 0.0
    hi, lo = (a, b) if a > b else (b, a)
    g = rule.gamma
    if g == 1.0:
        p_hi = hi / (hi + lo)
    else:
        p_hi = 1.0 / (1.0 + (lo / hi) ** g)
    return p_hi if a > b else 1.0 - p_hi


def contest_matrix(rule: ContestRule, a: Sequence[float], b: Sequence[float]) -> np.ndarray:
    """Fight-win matrix p[i, j] = contest_prob(rule, a[i], b[j])."""
    m, n = len(a), len(b)
    p = np.empty((m, n), dtype=np.float64)
    for i in range(m):
        ai = a[i]
        for j in range(n):
            p[i, j] = contest_prob(rule, ai, b[j])
    return p
