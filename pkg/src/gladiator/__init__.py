"""Exact solver and verification suite for team duel games.

Two teams split strength budgets across their members and fight a
sequence of one-on-one duels; each duel is won with probability
proportional to a power of strength, the winner keeps full strength,
and a team loses when its roster is exhausted. The package computes win
probabilities for arbitrary allocations (several independent exact
engines plus Monte Carlo), equilibrium allocations and the game value
in closed form, and machine-checks the probability inequalities the
closed forms rest on.

Numeric kernels run on a compiled backend when available, with a pure
Python fallback (see gladiator.kernels.BACKEND); results are identical
either way.
"""

from .core import (
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
from .equilibrium import (
    EquilibriumSolution,
    Regime,
    Sweep,
    SweepPoint,
    asymptotic_r_star,
    best_response_bruteforce,
    compositions,
    equilibrium_supports,
    solve_equilibrium,
    threshold_regime,
    value_curve,
    value_profile,
)
from .inequalities import (
    CheckReport,
    check_bet_trichotomy,
    check_betabin_family,
    check_engine_agreement,
    check_mean_median,
    check_minimizer_structure,
    check_perturbation_endpoint_min,
    check_perturbation_monotonicity,
    check_value_monotonicity,
    equal_split_loss,
    statistician_bet,
)
from .kernels import BACKEND
from .simulator import (
    BattleLog,
    EngagementPolicy,
    estimate_winprob,
    iter_battles,
    simulate_battle,
)
from .special import BetaParams, gamma_tail, reg_inc_beta, t0_root
from .winprob import (
    Method,
    WinProbability,
    duel_dp_reference,
    winprob_beta_closed_form,
    winprob_duel_dp,
    winprob_exp_sum_mc,
    winprob_gamma0_closed_form,
    winprob_geometric_dp,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Allocation",
    "AllocationError",
    "AllZeroError",
    "BattleLog",
    "BetaParams",
    "BudgetMismatchError",
    "CheckReport",
    "ContestRule",
    "EngagementPolicy",
    "EquilibriumSolution",
    "GameSpec",
    "Method",
    "NegativeEntryError",
    "PROPORTIONAL",
    "Regime",
    "RuleKind",
    "Sweep",
    "SweepPoint",
    "WinProbability",
    "allocation",
    "asymptotic_r_star",
    "best_response_bruteforce",
    "check_bet_trichotomy",
    "check_betabin_family",
    "check_engine_agreement",
    "check_mean_median",
    "check_minimizer_structure",
    "check_perturbation_endpoint_min",
    "check_perturbation_monotonicity",
    "check_value_monotonicity",
    "compositions",
    "contest_matrix",
    "contest_prob",
    "duel_dp_reference",
    "equal_split_loss",
    "equilibrium_supports",
    "estimate_winprob",
    "gamma_tail",
    "iter_battles",
    "reg_inc_beta",
    "simulate_battle",
    "solve_equilibrium",
    "statistician_bet",
    "t0_root",
    "threshold_regime",
    "validate_allocation",
    "value_curve",
    "value_profile",
    "winprob_beta_closed_form",
    "winprob_duel_dp",
    "winprob_exp_sum_mc",
    "winprob_gamma0_closed_form",
    "winprob_geometric_dp",
    "__version__",
]
