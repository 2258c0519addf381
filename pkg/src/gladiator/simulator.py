"""Battle simulation: single logged battles and batched win counts.

A battle runs one fight at a time until a team is wiped out; the winner
of each fight keeps its full strength. Three engagement policies decide
who fights next:

    fixed    both teams field fighters in input order;
    bench    the winner goes to the back of its team's queue and the
             next queued fighter steps up;
    random   both fighters are drawn uniformly from the living members.

Outcomes are a pure function of (seed, trial): trial t uses the draw
stream keyed by trial_key(seed, t), consuming draws per the contract in
_kernels_py. simulate_battle replays one battle in plain Python and logs
every fight; estimate_winprob counts wins over many trials through the
kernel backend. Both walk identical draw sequences, so the logged
battles are exactly the ones the estimator counted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from . import kernels, rng
from .core import PROPORTIONAL, ContestRule, contest_matrix
from .winprob import Method, WinProbability, _as_strengths


class EngagementPolicy(str, Enum):
    """Who fights next; values are the CLI spellings."""

    FIXED_ORDER = "fixed"
    WINNER_TO_BENCH = "bench"
    RANDOM_DRAW = "random"

    @property
    def code(self) -> int:
        return _POLICY_CODE[self]


_POLICY_CODE = {
    EngagementPolicy.FIXED_ORDER: kernels.POLICY_FIXED,
    EngagementPolicy.WINNER_TO_BENCH: kernels.POLICY_BENCH,
    EngagementPolicy.RANDOM_DRAW: kernels.POLICY_RANDOM,
}


@dataclass(frozen=True)
class BattleLog:
    """One battle, fight by fight.

    fights holds (a_index, b_index, winner_side) triples in order, with
    indices into the original strength vectors and winner_side "A"|"B".
    """

    fights: tuple[tuple[int, int, str], ...]
    winner: str
    seed: int
    trial: int

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "winner": self.winner,
            "fights": [list(f) for f in self.fights],
        }


def _pick(u: float, living: list[int]) -> int:
    c = len(living)
    return living[min(int(u * c), c - 1)]


def _run_battle(pm: np.ndarray, policy: EngagementPolicy,
                key: int) -> tuple[list[tuple[int, int, str]], str]:
    m, n = pm.shape
    fights: list[tuple[int, int, str]] = []
    if policy is EngagementPolicy.FIXED_ORDER:
        i = j = 0
        f = 0
        while i < m and j < n:
            if rng.draw_u01(key, f) < pm[i, j]:
                fights.append((i, j, "A"))
                j += 1
            else:
                fights.append((i, j, "B"))
                i += 1
            f += 1
        return fights, ("A" if j == n else "B")
    if policy is EngagementPolicy.WINNER_TO_BENCH:
        qa = deque(range(m))
        qb = deque(range(n))
        f = 0
        while qa and qb:
            ia, ib = qa[0], qb[0]
            if rng.draw_u01(key, f) < pm[ia, ib]:
                fights.append((ia, ib, "A"))
                qa.append(qa.popleft())
                qb.popleft()
            else:
                fights.append((ia, ib, "B"))
                qb.append(qb.popleft())
                qa.popleft()
            f += 1
        return fights, ("A" if not qb else "B")
    la = list(range(m))
    lb = list(range(n))
    f = 0
    while la and lb:
        ia = _pick(rng.draw_u01(key, 3 * f), la)
        ib = _pick(rng.draw_u01(key, 3 * f + 1), lb)
        if rng.draw_u01(key, 3 * f + 2) < pm[ia, ib]:
            fights.append((ia, ib, "A"))
            lb.remove(ib)
        else:
            fights.append((ia, ib, "B"))
            la.remove(ia)
        f += 1
    return fights, ("A" if not lb else "B")


def simulate_battle(a, b, rule: ContestRule = PROPORTIONAL,
                    policy: EngagementPolicy = EngagementPolicy.FIXED_ORDER,
                    seed: int = 0, trial: int = 0) -> BattleLog:
    """Replay one battle and log every fight."""
    av = _as_strengths(a)
    bv = _as_strengths(b)
    pm = contest_matrix(rule, av, bv)
    seed = rng.normalize_seed(seed)
    fights, winner = _run_battle(pm, policy, rng.trial_key(seed, trial))
    return BattleLog(tuple(fights), winner, seed, trial)


def iter_battles(a, b, rule: ContestRule = PROPORTIONAL,
                 policy: EngagementPolicy = EngagementPolicy.FIXED_ORDER,
                 trials: int = 1, seed: int = 0) -> Iterator[BattleLog]:
    """Logged battles for trials 0..trials-1, sharing one draw stream
    with estimate_winprob."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    av = _as_strengths(a)
    bv = _as_strengths(b)
    pm = contest_matrix(rule, av, bv)
    seed = rng.normalize_seed(seed)
    for t in range(trials):
        fights, winner = _run_battle(pm, policy, rng.trial_key(seed, t))
        yield BattleLog(tuple(fights), winner, seed, t)


def estimate_winprob(a, b, rule: ContestRule = PROPORTIONAL,
                     policy: EngagementPolicy = EngagementPolicy.FIXED_ORDER,
                     trials: int = 100_000, seed: int = 0) -> WinProbability:
    """Monte Carlo estimate of P(team A wins the battle)."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    av = _as_strengths(a)
    bv = _as_strengths(b)
    pm = contest_matrix(rule, av, bv)
    wins = kernels.simulate_win_count(pm, policy.code, trials,
                                      rng.normalize_seed(seed))
    phat = wins / trials
    stderr = (phat * (1.0 - phat) / trials) ** 0.5
    return WinProbability(phat, Method.MONTE_CARLO, stderr=stderr,
                          trials=trials)
