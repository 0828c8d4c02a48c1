"""Root-of-unity algebra: Pochhammers, fractional powers, log-gamma."""

import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiralpotts.algebra import (
    PoleError,
    UnityContext,
    delta_root,
    log_gamma,
    omega_pochhammer,
    p_product,
    phi_zero,
    q_binomial,
    q_pochhammer,
)

complexes = st.builds(
    complex,
    st.floats(-2.0, 2.0, allow_nan=False),
    st.floats(-2.0, 2.0, allow_nan=False),
)


def brute_pochhammer(x, q, n):
    # independent of the library: the literal product definition
    out = 1.0 + 0.0j
    for j in range(n):
        out *= 1.0 - x * q**j
    return out


class TestUnityContext:
    @pytest.mark.parametrize("N", range(1, 13))
    def test_omega_is_primitive_root(self, N):
        ctx = UnityContext(N)
        assert abs(ctx.omega**N - 1.0) < 1e-14
        if N > 1:
            assert abs(sum(ctx.omega_powers)) < 1e-13

    def test_cached_powers_are_self_consistent(self):
        ctx = UnityContext(7)
        for j in range(7):
            assert ctx.power(j) == ctx.omega_powers[j]
            assert ctx.power(j + 7) == ctx.omega_powers[j]
            assert ctx.power(j - 7) == ctx.omega_powers[j]

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValueError):
            UnityContext(0)


class TestOmegaPochhammer:
    def test_empty_product(self):
        ctx = UnityContext(4)
        assert omega_pochhammer(1.7 - 0.3j, 0, ctx) == 1.0

    @pytest.mark.parametrize("N", [2, 3, 5, 8])
    def test_full_cycle_gives_one_minus_x_to_N(self, N):
        # prod_{j=0}^{N-1} (1 - x w^j) = 1 - x^N
        ctx = UnityContext(N)
        x = 0.7 + 0.4j
        assert omega_pochhammer(x, N, ctx) == pytest.approx(1.0 - x**N, rel=1e-13)

    def test_frozen_two_factor_value(self):
        # brute-force oracle value for N=3, x=0.5+0.2i, n=2
        ctx = UnityContext(3)
        expected = 0.645 - 0.45114736709748726j
        got = omega_pochhammer(0.5 + 0.2j, 2, ctx)
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(brute_pochhammer(0.5 + 0.2j, ctx.omega, 2), abs=1e-15)

    @given(x=complexes, n=st.integers(0, 7))
    def test_recurrence(self, x, n):
        ctx = UnityContext(8)
        lhs = omega_pochhammer(x, n + 1, ctx)
        rhs = omega_pochhammer(x, n, ctx) * (1.0 - x * ctx.power(n))
        assert abs(lhs - rhs) < 1e-13 * max(1.0, abs(lhs))

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            omega_pochhammer(0.5, -1, UnityContext(3))


class TestQPochhammer:
    def test_empty_product(self):
        assert q_pochhammer(0.9, 0.3, 0) == 1.0

    @pytest.mark.parametrize("N", [2, 3, 6])
    def test_vanishes_at_root_of_unity(self, N):
        # (w; w)_N = 0 since the j = N-1 factor is 1 - w^N
        w = cmath.exp(2j * math.pi / N)
        assert abs(q_pochhammer(w, w, N)) < 1e-13

    def test_frozen_four_factor_value(self):
        assert q_pochhammer(0.3, 0.5, 4) == pytest.approx(0.5297359375, abs=1e-15)
        assert q_pochhammer(0.3, 0.5, 4) == pytest.approx(
            brute_pochhammer(0.3, 0.5, 4), abs=1e-15
        )


def recurrence_binomial(alpha, n, q):
    # Pascal-type oracle: [a, n] = [a-1, n-1] + q^n [a-1, n]
    if n < 0 or n > alpha:
        return 0.0 + 0.0j
    if n == 0 or n == alpha:
        return 1.0 + 0.0j
    return recurrence_binomial(alpha - 1, n - 1, q) + q**n * recurrence_binomial(
        alpha - 1, n, q
    )


class TestQBinomial:
    @pytest.mark.parametrize("alpha", [0, 1, 4, 9])
    def test_edges_are_one(self, alpha):
        assert q_binomial(alpha, 0, 0.7) == 1.0
        assert q_binomial(alpha, alpha, 0.7) == 1.0

    def test_frozen_value_from_recurrence_oracle(self):
        assert q_binomial(4, 2, 0.7) == pytest.approx(3.2631, abs=1e-12)

    @given(alpha=st.integers(0, 12), data=st.data())
    @settings(max_examples=60)
    def test_matches_recurrence_generic_q(self, alpha, data):
        n = data.draw(st.integers(0, alpha))
        q = 0.37 + 0.21j
        assert q_binomial(alpha, n, q) == pytest.approx(
            recurrence_binomial(alpha, n, q), rel=1e-11, abs=1e-11
        )

    @given(alpha=st.integers(0, 12), data=st.data())
    @settings(max_examples=60)
    def test_matches_recurrence_at_root_of_unity(self, alpha, data):
        # alpha beyond N makes the ratio form 0/0; the fallback must agree
        n = data.draw(st.integers(0, alpha))
        ctx = UnityContext(5)
        assert q_binomial(alpha, n, ctx.omega) == pytest.approx(
            recurrence_binomial(alpha, n, ctx.omega), rel=1e-10, abs=1e-10
        )

    def test_out_of_range_is_input_error(self):
        with pytest.raises(ValueError):
            q_binomial(3, 4, 0.5)
        with pytest.raises(ValueError):
            q_binomial(3, -1, 0.5)


class TestPProduct:
    def test_at_zero(self):
        assert p_product(0.0, UnityContext(6)) == pytest.approx(1.0, abs=1e-15)

    def test_n2_is_principal_square_root(self):
        # single factor j=1 with omega = -1: p(x) = (1 + x)^(1/2)
        ctx = UnityContext(2)
        for x in (0.3, 0.9 + 0.4j, -0.2 + 0.7j):
            assert p_product(x, ctx) == pytest.approx(cmath.sqrt(1.0 + x), rel=1e-14)

    def test_frozen_n3_value(self):
        # direct principal-branch oracle at N=3, x=0.4
        got = p_product(0.4, UnityContext(3))
        assert got == pytest.approx(1.2435232308950532 + 0.11683310414573488j, abs=1e-14)

    @given(x=complexes)
    @settings(max_examples=80)
    def test_modulus_identity(self, x):
        # |p(x)|^N = prod_j |1 - w^j x|^j
        ctx = UnityContext(5)
        try:
            value = p_product(x, ctx)
        except PoleError:
            return
        target = 1.0
        for j in range(1, 5):
            target *= abs(1.0 - ctx.power(j) * x) ** j
        assert abs(value) ** 5 == pytest.approx(target, rel=1e-10)

    def test_pole_guard(self):
        ctx = UnityContext(4)
        with pytest.raises(PoleError):
            p_product(1.0 / ctx.power(1), ctx)


class TestDeltaRoot:
    def test_at_zero(self):
        assert delta_root(0.0, UnityContext(5)) == 1.0

    def test_n2_imaginary_unit(self):
        # 1 - i^2 = 2
        assert delta_root(1j, UnityContext(2)) == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_frozen_n4_value(self):
        got = delta_root(0.5 + 0.1j, UnityContext(4))
        assert got == pytest.approx(0.988116492180389 - 0.012440150779787969j, abs=1e-14)

    @given(x=complexes)
    @settings(max_examples=80)
    def test_nth_power_recovers(self, x):
        ctx = UnityContext(4)
        try:
            d = delta_root(x, ctx)
        except PoleError:
            return
        assert d**4 == pytest.approx(1.0 - x**4, rel=1e-12)

    def test_pole_guard(self):
        with pytest.raises(PoleError):
            delta_root(1.0, UnityContext(3))


class TestPhiZero:
    def test_small_orders_trivial(self):
        assert phi_zero(UnityContext(1)) == pytest.approx(1.0)
        assert phi_zero(UnityContext(2)) == pytest.approx(1.0)

    def test_order_five(self):
        # (N-1)(N-2)/(12N) = 12/60 at N=5
        assert phi_zero(UnityContext(5)) == pytest.approx(
            cmath.exp(1j * math.pi / 5.0), rel=1e-15
        )


class TestLogGamma:
    def test_classical_values(self):
        assert cmath.exp(log_gamma(1.0)) == pytest.approx(1.0, rel=1e-14)
        assert cmath.exp(log_gamma(0.5)) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert cmath.exp(log_gamma(6.0)) == pytest.approx(120.0, rel=1e-14)

    def test_frozen_complex_value(self):
        # high-precision series oracle (mpmath, 20 digits)
        got = log_gamma(0.3 + 0.5j)
        assert got == pytest.approx(
            0.29519546264083801948 - 1.0916447015790625568j, abs=1e-13
        )
        assert cmath.exp(got) == pytest.approx(
            0.61933789694583460766 - 1.1921050068458901354j, rel=1e-13
        )

    def test_matches_mpmath_on_grid(self):
        mpmath.mp.dps = 30
        rng = np.random.default_rng(5)
        worst = 0.0
        for _ in range(200):
            z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
            if round(z.real) <= 0 and abs(z - round(z.real)) < 0.1:
                continue
            ref = complex(mpmath.loggamma(mpmath.mpc(z)))
            worst = max(worst, abs(log_gamma(z) - ref) / max(1.0, abs(ref)))
        assert worst < 1e-12

    def test_gamma_relative_error_right_half_plane(self):
        mpmath.mp.dps = 30
        rng = np.random.default_rng(6)
        for _ in range(100):
            z = complex(rng.uniform(0.05, 10), rng.uniform(-10, 10))
            ref = complex(mpmath.loggamma(mpmath.mpc(z)))
            # |exp(got - ref) - 1| is the relative error of Gamma itself
            assert abs(cmath.exp(log_gamma(z) - ref) - 1.0) < 1e-12

    @given(
        z=st.builds(
            complex,
            st.floats(-9.0, 9.0, allow_nan=False),
            st.floats(-9.0, 9.0, allow_nan=False),
        )
    )
    @settings(max_examples=150)
    def test_functional_equation(self, z):
        # Gamma(z+1) = z Gamma(z), away from poles and the origin
        if abs(z) < 0.1:
            return
        if abs(z - round(z.real)) < 0.1 and round(z.real) <= 0:
            return
        lhs = cmath.exp(log_gamma(z + 1.0))
        rhs = z * cmath.exp(log_gamma(z))
        assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), abs(rhs))

    def test_pole_is_domain_error(self):
        with pytest.raises(PoleError):
            log_gamma(0.0)
        with pytest.raises(PoleError):
            log_gamma(-3.0 + 1e-14j)
