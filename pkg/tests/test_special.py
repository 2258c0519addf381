"""Regularized incomplete beta, gamma tail, and the spread/concentrate
crossover constant, checked against scipy and exact rational oracles."""

import math
from fractions import Fraction

import pytest
import scipy.integrate
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from gladiator.special import BetaParams, gamma_tail, reg_inc_beta, t0_root
from oracles import frac_betainc


class TestRegIncBeta:
    def test_endpoints(self):
        assert reg_inc_beta(0.0, 3, 5) == 0.0
        assert reg_inc_beta(1.0, 3, 5) == 1.0

    def test_two_thirds_two_one(self):
        # I(x, 2, 1) = x^2; exact rational oracle agrees
        assert frac_betainc(Fraction(2, 3), 2, 1) == Fraction(4, 9)
        assert reg_inc_beta(2 / 3, 2, 1) == pytest.approx(4 / 9, abs=1e-15)

    def test_half_symmetric_is_exact(self):
        for k in range(1, 11):
            assert reg_inc_beta(0.5, k, k) == 0.5

    def test_against_rational_oracle(self):
        for alpha in range(1, 7):
            for beta in range(1, 7):
                for num, den in ((1, 4), (1, 3), (1, 2), (2, 3), (7, 9)):
                    want = frac_betainc(Fraction(num, den), alpha, beta)
                    got = reg_inc_beta(num / den, alpha, beta)
                    assert got == pytest.approx(float(want), abs=5e-15)

    def test_against_quadrature(self):
        for alpha, beta in ((1, 1), (2, 5), (7, 3), (10, 10), (25, 4)):
            for x in (0.1, 0.37, 0.5, 0.84):
                dens = lambda t: (
                    t ** (alpha - 1) * (1 - t) ** (beta - 1)
                    / scipy.special.beta(alpha, beta)
                )
                want, err = scipy.integrate.quad(dens, 0.0, x)
                assert err < 1e-10
                assert reg_inc_beta(x, alpha, beta) == pytest.approx(want, abs=1e-9)

    @given(
        x=st.floats(min_value=0.001, max_value=0.999),
        alpha=st.integers(min_value=1, max_value=40),
        beta=st.integers(min_value=1, max_value=40),
    )
    @settings(max_examples=200, deadline=None)
    def test_against_scipy(self, x, alpha, beta):
        assert reg_inc_beta(x, alpha, beta) == pytest.approx(
            float(scipy.special.betainc(alpha, beta, x)), abs=1e-13
        )

    @given(
        x=st.floats(min_value=0.001, max_value=0.999),
        alpha=st.integers(min_value=1, max_value=30),
        beta=st.integers(min_value=1, max_value=30),
    )
    @settings(max_examples=200, deadline=None)
    def test_symmetry(self, x, alpha, beta):
        total = reg_inc_beta(x, alpha, beta) + reg_inc_beta(1.0 - x, beta, alpha)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_large_parameters_log_path(self):
        # alpha+beta-1 > 500 leaves the exact-comb path
        for alpha, beta, x in ((300, 400, 0.3), (600, 2, 0.995), (2, 600, 0.02)):
            assert reg_inc_beta(x, alpha, beta) == pytest.approx(
                float(scipy.special.betainc(alpha, beta, x)), rel=1e-10, abs=1e-12
            )

    def test_monotone_in_x(self):
        vals = [reg_inc_beta(x / 20, 4, 7) for x in range(1, 20)]
        assert all(u < v for u, v in zip(vals, vals[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            reg_inc_beta(-0.1, 2, 2)
        with pytest.raises(ValueError):
            reg_inc_beta(1.1, 2, 2)
        with pytest.raises(ValueError):
            reg_inc_beta(0.5, 0, 2)

    def test_beta_params(self):
        bp = BetaParams(0.25, 3, 4)
        assert (bp.x, bp.alpha, bp.beta) == (0.25, 3, 4)
        with pytest.raises(ValueError):
            BetaParams(2.0, 3, 4)
        with pytest.raises(ValueError):
            BetaParams(0.5, 3, 0)


class TestGammaTail:
    def test_closed_forms(self):
        assert gamma_tail(1, 1.5) == pytest.approx(math.exp(-1.5), abs=1e-16)
        assert gamma_tail(2, 3.0) == pytest.approx(4 * math.exp(-3.0), abs=1e-15)
        assert gamma_tail(3, 0.0) == 1.0

    def test_against_scipy(self):
        for r in (1, 2, 5, 17, 60):
            for x in (0.1, 1.0, float(r), 3.0 * r, 100.0):
                assert gamma_tail(r, x) == pytest.approx(
                    float(scipy.special.gammaincc(r, x)), rel=1e-10, abs=1e-12
                )

    def test_large_x_log_path(self):
        for r, x in ((3, 600.0), (40, 800.0)):
            assert gamma_tail(r, x) == pytest.approx(
                float(scipy.special.gammaincc(r, x)), rel=1e-9, abs=1e-300
            )

    def test_monotone(self):
        xs = [0.5 * k for k in range(1, 30)]
        vals = [gamma_tail(4, x) for x in xs]
        assert all(u > v for u, v in zip(vals, vals[1:]))
        # more summands keep more mass
        assert gamma_tail(5, 2.0) > gamma_tail(4, 2.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            gamma_tail(0, 1.0)
        with pytest.raises(ValueError):
            gamma_tail(3, -0.5)


class TestRootT0:
    def test_stated_digits(self):
        assert t0_root() == pytest.approx(1.256431, abs=1e-6)

    def test_residual(self):
        t = t0_root()
        assert abs(math.exp(t) - 1.0 - 2.0 * t) < 1e-13

    def test_unique_in_bracket(self):
        # f(t) = e^t - 1 - 2t is negative just below, positive just above
        t = t0_root()
        f = lambda u: math.exp(u) - 1.0 - 2.0 * u
        assert f(t - 1e-6) < 0 < f(t + 1e-6)

    def test_cached(self):
        assert t0_root() is not None
        assert t0_root() == t0_root()
