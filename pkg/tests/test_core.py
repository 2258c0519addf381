"""Contest rules and allocation validation."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gladiator.core import (
    PROPORTIONAL,
    Allocation,
    AllocationError,
    AllZeroError,
    BudgetMismatchError,
    ContestRule,
    GameSpec,
    NegativeEntryError,
    RuleKind,
    allocation,
    contest_matrix,
    contest_prob,
    validate_allocation,
)

ZERO = ContestRule.zero_limit()
INF = ContestRule.infinity_limit()

pos = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)
gammas = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)


class TestContestProb:
    def test_proportional_examples(self):
        assert contest_prob(PROPORTIONAL, 3.0, 1.0) == 0.75
        assert contest_prob(PROPORTIONAL, 1.0, 3.0) == 0.25
        assert contest_prob(PROPORTIONAL, 5.0, 5.0) == 0.5
        assert contest_prob(PROPORTIONAL, 2.0, 0.0) == 1.0
        assert contest_prob(PROPORTIONAL, 0.0, 2.0) == 0.0

    def test_zero_zero_is_fair_for_every_rule(self):
        for rule in (PROPORTIONAL, ZERO, INF, ContestRule.power(2.5)):
            assert contest_prob(rule, 0.0, 0.0) == 0.5

    def test_power_two(self):
        # 1^2 / (1^2 + 2^2)
        assert contest_prob(ContestRule.power(2.0), 1.0, 2.0) == pytest.approx(
            0.2, abs=1e-15
        )

    def test_zero_limit(self):
        assert contest_prob(ZERO, 9.0, 0.001) == 0.5
        assert contest_prob(ZERO, 3.0, 0.0) == 1.0
        assert contest_prob(ZERO, 0.0, 3.0) == 0.0

    def test_infinity_limit(self):
        assert contest_prob(INF, 2.0, 1.0) == 1.0
        assert contest_prob(INF, 1.0, 2.0) == 0.0
        assert contest_prob(INF, 2.0, 2.0) == 0.5

    @given(a=pos, b=pos, g=gammas)
    @settings(max_examples=200, deadline=None)
    def test_complement_is_exact(self, a, b, g):
        rule = ContestRule.power(g)
        assert contest_prob(rule, a, b) + contest_prob(rule, b, a) == 1.0

    @given(a=pos, b=pos, g=gammas)
    @settings(max_examples=200, deadline=None)
    def test_range(self, a, b, g):
        p = contest_prob(ContestRule.power(g), a, b)
        assert 0.0 <= p <= 1.0

    @given(a=pos, b=pos)
    @settings(max_examples=200, deadline=None)
    def test_proportional_matches_ratio(self, a, b):
        assert contest_prob(PROPORTIONAL, a, b) == pytest.approx(
            a / (a + b), abs=1e-15
        )

    @given(a=pos, b=pos, g=gammas, k=st.integers(min_value=-60, max_value=60))
    @settings(max_examples=200, deadline=None)
    def test_scale_invariance_powers_of_two(self, a, b, g, k):
        # exact: scaling by 2**k only shifts exponents
        rule = ContestRule.power(g)
        s = math.ldexp(1.0, k)
        assert contest_prob(rule, s * a, s * b) == contest_prob(rule, a, b)

    @given(a1=pos, a2=pos, b=pos, g=gammas)
    @settings(max_examples=200, deadline=None)
    def test_monotone_in_strength(self, a1, a2, b, g):
        lo, hi = sorted((a1, a2))
        rule = ContestRule.power(g)
        assert contest_prob(rule, lo, b) <= contest_prob(rule, hi, b) + 1e-15

    def test_gamma_validation(self):
        with pytest.raises(ValueError):
            ContestRule.power(0.0)
        with pytest.raises(ValueError):
            ContestRule.power(-1.0)
        with pytest.raises(ValueError):
            ContestRule.power(float("nan"))

    def test_describe(self):
        assert "1" in PROPORTIONAL.describe()
        assert ZERO.describe() != INF.describe()

    def test_rule_equality(self):
        assert PROPORTIONAL == ContestRule.power(1.0)
        assert PROPORTIONAL.kind is RuleKind.POWER

    def test_negative_strength_rejected(self):
        with pytest.raises(ValueError):
            contest_prob(PROPORTIONAL, -1.0, 2.0)


class TestContestMatrix:
    def test_shape_and_values(self):
        m = contest_matrix(PROPORTIONAL, (3.0, 1.0), (1.0,))
        assert m.shape == (2, 1)
        assert m[0, 0] == 0.75
        assert m[1, 0] == 0.5

    def test_matches_scalar(self):
        a = (0.2, 0.0, 1.7)
        b = (0.4, 0.9)
        m = contest_matrix(ContestRule.power(2.0), a, b)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                assert m[i, j] == contest_prob(ContestRule.power(2.0), ai, bj)


class TestAllocation:
    def test_allocation_sums(self):
        al = allocation((0.5, 0.25, 0.25))
        assert al.budget == 1.0
        assert al.strengths == (0.5, 0.25, 0.25)

    def test_thirds_pass_validation(self):
        validate_allocation((1 / 3, 1 / 3, 1 / 3), 1.0)

    def test_zero_entries_allowed(self):
        al = validate_allocation((0.0, 2.0), 2.0)
        assert al.strengths[0] == 0.0

    def test_negative_rejected(self):
        with pytest.raises(NegativeEntryError):
            validate_allocation((-0.1, 1.1), 1.0)

    def test_all_zero_rejected(self):
        # budget must be valid so the all-zero check is the one that fires
        with pytest.raises(AllZeroError):
            validate_allocation((0.0, 0.0), 1.0)

    def test_zero_budget_rejected(self):
        with pytest.raises(AllocationError):
            validate_allocation((0.0, 0.0), 0.0)

    def test_budget_mismatch_rejected(self):
        with pytest.raises(BudgetMismatchError):
            validate_allocation((0.5, 0.5), 1.1)

    def test_error_hierarchy(self):
        for exc in (NegativeEntryError, BudgetMismatchError, AllZeroError):
            assert issubclass(exc, AllocationError)
            assert issubclass(exc, ValueError)

    def test_non_finite_rejected(self):
        with pytest.raises(AllocationError):
            allocation((float("nan"), 1.0))
        with pytest.raises(AllocationError):
            allocation((float("inf"),))

    def test_empty_rejected(self):
        with pytest.raises(AllocationError):
            allocation(())

    @given(st.lists(pos, min_size=1, max_size=8))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip(self, vals):
        al = allocation(tuple(vals))
        again = validate_allocation(al.strengths, al.budget)
        assert again == al


class TestGameSpec:
    def test_fields(self):
        gs = GameSpec(2, 1, 1.0, 1.0)
        assert (gs.m, gs.n, gs.c_a, gs.c_b) == (2, 1, 1.0, 1.0)

    @pytest.mark.parametrize(
        "args",
        [(0, 1, 1.0, 1.0), (1, 0, 1.0, 1.0), (1, 1, 0.0, 1.0),
         (1, 1, 1.0, -2.0), (1.5, 1, 1.0, 1.0), (1, 1, float("nan"), 1.0)],
    )
    def test_validation(self, args):
        with pytest.raises((ValueError, TypeError)):
            GameSpec(*args)
