"""Curve points: construction, branches, validation, sampling."""

import cmath

import numpy as np
import pytest

from chiralpotts.algebra import UnityContext
from chiralpotts.rapidity import (
    Rapidity,
    modulus_from_k,
    rapidity_from_x,
    sample_conditioned,
    sample_rapidity,
    validate_rapidity,
)


class TestModulus:
    def test_k_zero(self):
        assert modulus_from_k(0.0).k_prime == 1.0

    def test_pythagorean_triple(self):
        assert modulus_from_k(0.6).k_prime == pytest.approx(0.8, rel=1e-15)

    def test_complex_k_frozen(self):
        mod = modulus_from_k(0.3 + 0.1j)
        assert mod.k_prime == pytest.approx(
            0.9596755820925342 - 0.03126056404872384j, abs=1e-15
        )
        assert mod.k**2 + mod.k_prime**2 == pytest.approx(1.0, abs=1e-13)


class TestRapidityFromX:
    def test_frozen_principal_roots(self):
        # independent oracle: principal roots computed directly
        ctx = UnityContext(3)
        mod = modulus_from_k(0.6)
        r = rapidity_from_x(0.7 + 0.2j, 0, 0, mod, ctx)
        assert r.y == pytest.approx(
            0.7912781715053399 - 0.13242519313507972j, abs=1e-14
        )
        assert r.mu == pytest.approx(
            0.9733035607790496 + 0.06512813996298397j, abs=1e-14
        )

    @pytest.mark.parametrize("N", [2, 3, 5])
    def test_all_branches_lie_on_curve(self, N):
        ctx = UnityContext(N)
        mod = modulus_from_k(0.6)
        for branch_y in range(N):
            for branch_mu in range(N):
                r = rapidity_from_x(0.8 + 0.3j, branch_y, branch_mu, mod, ctx)
                assert max(validate_rapidity(r, mod, ctx)) < 1e-10

    def test_mu_consistency_on_curve(self):
        # k'/(1 - k x^N) = (1 - k y^N)/k' for the constructed y
        ctx = UnityContext(4)
        mod = modulus_from_k(0.6)
        r = rapidity_from_x(1.1 - 0.4j, 2, 1, mod, ctx)
        lhs = mod.k_prime / (1.0 - mod.k * r.x**4)
        rhs = (1.0 - mod.k * r.y**4) / mod.k_prime
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_denominator_guard(self):
        ctx = UnityContext(2)
        mod = modulus_from_k(0.6)
        x = cmath.sqrt(1.0 / 0.6)  # makes 1 - k x^2 = 0
        with pytest.raises(ValueError):
            rapidity_from_x(x, 0, 0, mod, ctx)


class TestValidateRapidity:
    def test_perturbation_is_detected(self):
        ctx = UnityContext(3)
        mod = modulus_from_k(0.6)
        r = rapidity_from_x(0.7 + 0.2j, 0, 0, mod, ctx)
        bad = Rapidity(x=r.x + 1e-3, y=r.y, mu=r.mu)
        assert validate_rapidity(bad, mod, ctx)[0] > 1e-5

    def test_degenerate_origin_point(self):
        # (0, 0, mu) with mu^N = k' is on the curve exactly when k = 0
        ctx = UnityContext(3)
        on = modulus_from_k(0.0)
        off = modulus_from_k(0.4)
        point = Rapidity(x=0.0, y=0.0, mu=1.0)
        assert max(validate_rapidity(point, on, ctx)) < 1e-14
        assert validate_rapidity(point, off, ctx)[0] > 1e-2

    def test_never_raises_on_garbage(self):
        ctx = UnityContext(2)
        mod = modulus_from_k(0.6)
        res = validate_rapidity(Rapidity(x=9.0, y=-3.0j, mu=0.0), mod, ctx)
        assert all(v >= 0.0 for v in res)


class TestSampling:
    def test_deterministic_given_seed(self):
        ctx = UnityContext(3)
        mod = modulus_from_k(0.6)
        a = sample_rapidity(np.random.default_rng(42), mod, ctx)
        b = sample_rapidity(np.random.default_rng(42), mod, ctx)
        assert a == b

    def test_sequences_reproducible(self):
        ctx = UnityContext(4)
        mod = modulus_from_k(0.6)
        rng1, rng2 = np.random.default_rng(7), np.random.default_rng(7)
        seq1 = [sample_rapidity(rng1, mod, ctx) for _ in range(10)]
        seq2 = [sample_rapidity(rng2, mod, ctx) for _ in range(10)]
        assert seq1 == seq2

    def test_validation_sweep(self):
        ctx = UnityContext(4)
        mod = modulus_from_k(0.6)
        rng = np.random.default_rng(0)
        for _ in range(1000):
            r = sample_rapidity(rng, mod, ctx)
            assert max(validate_rapidity(r, mod, ctx)) < 1e-10
            assert 0.2 <= abs(r.x) <= 1.5

    def test_conditioned_pairs_are_separated(self):
        ctx = UnityContext(3)
        mod = modulus_from_k(0.6)
        rng = np.random.default_rng(11)
        for _ in range(50):
            p, q = sample_conditioned(rng, mod, ctx, 2)
            for j in range(1, ctx.N + 1):
                assert abs(p.y - q.x * ctx.power(j)) > 1e-6
                assert abs(q.y - p.x * ctx.power(j)) > 1e-6
