"""Battle simulation: logged replays, kernel agreement, and the policy
invariance of the win probability under the proportional rule."""

import json
import math

import pytest

from gladiator import kernels
from gladiator.core import PROPORTIONAL, ContestRule
from gladiator.simulator import (
    BattleLog,
    EngagementPolicy,
    estimate_winprob,
    iter_battles,
    simulate_battle,
)
from gladiator.winprob import Method, winprob_duel_dp, winprob_exp_sum_mc

POLICIES = (
    EngagementPolicy.FIXED_ORDER,
    EngagementPolicy.WINNER_TO_BENCH,
    EngagementPolicy.RANDOM_DRAW,
)
INFINITY_LIMIT = ContestRule.infinity_limit()


class TestEngagementPolicy:
    def test_cli_spellings(self):
        assert EngagementPolicy.FIXED_ORDER.value == "fixed"
        assert EngagementPolicy.WINNER_TO_BENCH.value == "bench"
        assert EngagementPolicy.RANDOM_DRAW.value == "random"

    def test_kernel_codes(self):
        assert EngagementPolicy.FIXED_ORDER.code == kernels.POLICY_FIXED
        assert EngagementPolicy.WINNER_TO_BENCH.code == kernels.POLICY_BENCH
        assert EngagementPolicy.RANDOM_DRAW.code == kernels.POLICY_RANDOM
        assert len({p.code for p in POLICIES}) == 3


class TestBattleLog:
    def test_json_roundtrip(self):
        log = simulate_battle((1.0, 2.0), (1.5,), seed=3, trial=7)
        back = json.loads(json.dumps(log.to_dict()))
        assert back["trial"] == 7 and back["seed"] == 3
        assert back["winner"] == log.winner
        assert [tuple(f) for f in back["fights"]] == list(log.fights)

    def test_deterministic(self):
        kwargs = dict(policy=EngagementPolicy.RANDOM_DRAW, seed=11, trial=4)
        one = simulate_battle((1.0, 1.0, 2.0), (0.5, 3.5), **kwargs)
        two = simulate_battle((1.0, 1.0, 2.0), (0.5, 3.5), **kwargs)
        assert json.dumps(one.to_dict()) == json.dumps(two.to_dict())


class TestBattleShape:
    @pytest.mark.parametrize("policy", POLICIES)
    def test_fight_count_and_winner(self, policy):
        m, n = 4, 3
        for trial in range(50):
            log = simulate_battle(
                (1.0, 0.5, 2.0, 1.5), (1.0, 1.0, 3.0),
                policy=policy, seed=9, trial=trial,
            )
            a_deaths = sum(1 for f in log.fights if f[2] == "B")
            b_deaths = sum(1 for f in log.fights if f[2] == "A")
            # every fight kills exactly one fighter, so the loser's roster
            # is exactly exhausted and the winner's is not
            assert len(log.fights) == a_deaths + b_deaths
            assert len(log.fights) <= m + n - 1
            if log.winner == "A":
                assert b_deaths == n and a_deaths < m
            else:
                assert a_deaths == m and b_deaths < n

    @pytest.mark.parametrize("policy", POLICIES)
    def test_dead_fighters_stay_dead(self, policy):
        for trial in range(30):
            log = simulate_battle(
                (1.0, 0.5, 2.0), (1.0, 1.0, 3.0, 0.5),
                policy=policy, seed=5, trial=trial,
            )
            dead_a: set[int] = set()
            dead_b: set[int] = set()
            for ia, ib, side in log.fights:
                assert ia not in dead_a and ib not in dead_b
                if side == "A":
                    dead_b.add(ib)
                else:
                    dead_a.add(ia)

    def test_one_on_one(self):
        log = simulate_battle((1.0,), (1.0,))
        assert len(log.fights) == 1

    def test_zero_strength_fighter_dies_first(self):
        log = simulate_battle((0.0, 1.0), (1.0,))
        assert log.fights[0] == (0, 0, "B")

    def test_sure_winner_under_infinity_rule(self):
        log = simulate_battle((2.0,), (1.0,), rule=INFINITY_LIMIT)
        assert log.fights == ((0, 0, "A"),) and log.winner == "A"

    def test_bench_rotation_order(self):
        # infinity rule makes every outcome deterministic: A's larger
        # strengths win every fight while the queues rotate
        log = simulate_battle((5.0, 4.0), (3.0, 2.0, 1.0),
                              rule=INFINITY_LIMIT,
                              policy=EngagementPolicy.WINNER_TO_BENCH)
        assert log.fights == ((0, 0, "A"), (1, 1, "A"), (0, 2, "A"))
        assert log.winner == "A"

    def test_fixed_order_under_infinity_rule(self):
        log = simulate_battle((5.0, 4.0), (3.0, 2.0, 1.0), rule=INFINITY_LIMIT)
        assert log.fights == ((0, 0, "A"), (0, 1, "A"), (0, 2, "A"))


class TestIterBattles:
    def test_trials_and_trial_numbers(self):
        logs = list(iter_battles((1.0, 2.0), (1.5, 1.5), trials=20, seed=2))
        assert [log.trial for log in logs] == list(range(20))
        assert all(log.seed == 2 for log in logs)

    def test_matches_single_replay(self):
        logs = list(iter_battles((1.0, 2.0), (1.5, 1.5), trials=5, seed=8))
        for t, log in enumerate(logs):
            assert log == simulate_battle((1.0, 2.0), (1.5, 1.5), seed=8, trial=t)

    def test_validation(self):
        with pytest.raises(ValueError):
            list(iter_battles((1.0,), (1.0,), trials=0))


class TestKernelAgreement:
    """The batched kernel counts exactly the battles the logger replays."""

    SHAPES = (
        ((1.0,), (1.0,)),
        ((1.0, 0.5, 2.0, 1.5), (1.0, 1.0, 3.0)),
        ((2.0, 2.0), (0.5, 1.0, 1.5, 2.0, 2.5)),
    )

    @pytest.mark.parametrize("policy", POLICIES)
    def test_win_counts_match(self, policy):
        for a, b in self.SHAPES:
            trials = 2000
            logged = sum(
                log.winner == "A"
                for log in iter_battles(a, b, policy=policy, trials=trials,
                                        seed=31)
            )
            est = estimate_winprob(a, b, policy=policy, trials=trials, seed=31)
            assert est.value * trials == pytest.approx(logged, abs=1e-9)


class TestEstimateWinprob:
    def test_fields(self):
        est = estimate_winprob((1.0,), (1.0,), trials=1000, seed=0)
        assert est.method is Method.MONTE_CARLO
        assert est.trials == 1000
        assert est.stderr == pytest.approx(
            math.sqrt(est.value * (1 - est.value) / 1000), abs=1e-15
        )

    def test_sure_win(self):
        est = estimate_winprob((2.0,), (1.0,), rule=INFINITY_LIMIT, trials=500)
        assert est.value == 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            estimate_winprob((1.0,), (1.0,), trials=0)

    @pytest.mark.parametrize("policy", POLICIES)
    def test_policy_invariance_at_gamma_one(self, policy):
        # with proportional contests the win probability does not depend
        # on the engagement policy; compare against the exact chain DP
        for a, b in (((1.0, 2.0, 0.5), (1.5, 1.5)), ((3.0,), (1.0,) * 3)):
            exact = winprob_duel_dp(a, b).value
            est = estimate_winprob(a, b, policy=policy, trials=100_000, seed=17)
            assert abs(est.value - exact) <= 4.0 * est.stderr, (a, b, policy)

    def test_agrees_with_exponential_sampler(self):
        a, b = (1.0, 2.0), (1.5, 1.5)
        battle = estimate_winprob(a, b, trials=150_000, seed=23)
        expsum = winprob_exp_sum_mc(a, b, trials=150_000, seed=29)
        gap = abs(battle.value - expsum.value)
        assert gap <= 4.0 * math.hypot(battle.stderr, expsum.stderr)
