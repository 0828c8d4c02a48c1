"""Boltzmann weights: product formulas, Pochhammer form, Fourier transform."""

import numpy as np
import pytest

from conftest import conditioned_points

from chiralpotts.algebra import omega_pochhammer
from chiralpotts.hypergeometric import CyclicSeriesSpec, eval_terminating_phi
from chiralpotts.weights import (
    WeightKind,
    fourier_weight,
    periodicity_residual,
    weight_params,
    weight_table,
    weight_w,
    weight_w_spins,
    weight_wbar,
)


def brute_w(p, q, n, ctx):
    # literal product formula, independent of the incremental path
    out = 1.0 + 0.0j
    for j in range(1, n + 1):
        out *= (p.mu / q.mu) * (q.y - p.x * ctx.power(j)) / (p.y - q.x * ctx.power(j))
    return out


def brute_wbar(p, q, n, ctx):
    out = 1.0 + 0.0j
    for j in range(1, n + 1):
        out *= (
            (p.mu * q.mu)
            * (ctx.omega * p.x - q.x * ctx.power(j))
            / (q.y - p.y * ctx.power(j))
        )
    return out


class TestProductFormulas:
    def test_normalization(self):
        ctx, _, (p, q) = conditioned_points(3, 0.6, 2, seed=1)
        assert weight_w(p, q, 0, ctx) == 1.0
        assert weight_wbar(p, q, 0, ctx) == 1.0

    def test_w_pp_is_one(self):
        ctx, _, (p,) = conditioned_points(4, 0.6, 1, seed=2)
        for n in range(4):
            assert weight_w(p, p, n, ctx) == pytest.approx(1.0, abs=1e-13)

    def test_wbar_pp_is_delta(self):
        ctx, _, (p,) = conditioned_points(4, 0.6, 1, seed=3)
        assert weight_wbar(p, p, 0, ctx) == 1.0
        for n in range(1, 4):
            assert abs(weight_wbar(p, p, n, ctx)) < 1e-13

    def test_matches_brute_force_product(self):
        ctx, _, (p, q) = conditioned_points(3, 0.6, 2, seed=4)
        assert weight_w(p, q, 2, ctx) == pytest.approx(brute_w(p, q, 2, ctx), rel=1e-14)
        ctx4, _, (p4, q4) = conditioned_points(4, 0.6, 2, seed=5)
        assert weight_wbar(p4, q4, 3, ctx4) == pytest.approx(
            brute_wbar(p4, q4, 3, ctx4), rel=1e-14
        )

    def test_spin_difference_reduction(self):
        ctx, _, (p, q) = conditioned_points(3, 0.6, 2, seed=6)
        assert weight_w(p, q, 5, ctx) == weight_w(p, q, 2, ctx)
        assert weight_w_spins(p, q, 4, 2, ctx) == weight_w(p, q, 2, ctx)

    @pytest.mark.parametrize("kind", [WeightKind.W, WeightKind.WBAR])
    def test_periodicity_on_curve(self, kind):
        for seed in range(5):
            ctx, _, (p, q) = conditioned_points(5, 0.6, 2, seed=seed)
            assert periodicity_residual(p, q, kind, ctx) < 1e-9


class TestWeightParams:
    def test_p_equals_q_collapses(self):
        ctx, _, (p,) = conditioned_points(3, 0.6, 1, seed=7)
        par = weight_params(p, p, ctx)
        assert par.gamma == pytest.approx(1.0, rel=1e-14)
        assert par.alpha == pytest.approx(par.beta, rel=1e-14)
        assert par.alpha == pytest.approx(ctx.omega * p.x / p.y, rel=1e-14)

    def test_single_factor_comparison(self):
        ctx, _, (p, q) = conditioned_points(4, 0.6, 2, seed=8)
        par = weight_params(p, q, ctx)
        expected = par.gamma * (1.0 - par.alpha) / (1.0 - par.beta)
        assert weight_w(p, q, 1, ctx) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("N", range(2, 9))
    def test_pochhammer_form_reproduces_products(self, N):
        # both kinds, all n, many pairs
        for seed in range(12):
            ctx, _, (p, q) = conditioned_points(N, 0.6, 2, seed=100 + seed)
            par = weight_params(p, q, ctx)
            for n in range(N):
                w_form = (
                    par.gamma**n
                    * omega_pochhammer(par.alpha, n, ctx)
                    / omega_pochhammer(par.beta, n, ctx)
                )
                assert w_form == pytest.approx(weight_w(p, q, n, ctx), rel=1e-10)
                wb_form = (
                    par.gamma_bar**n
                    * omega_pochhammer(par.alpha_bar, n, ctx)
                    / omega_pochhammer(par.beta_bar, n, ctx)
                )
                assert wb_form == pytest.approx(weight_wbar(p, q, n, ctx), rel=1e-10)

    def test_on_curve_periodicity_of_params(self):
        ctx, _, (p, q) = conditioned_points(5, 0.6, 2, seed=9)
        par = weight_params(p, q, ctx)
        lhs = par.gamma**5 * (1.0 - par.alpha**5)
        assert abs(lhs - (1.0 - par.beta**5)) < 1e-10
        lhs = par.gamma_bar**5 * (1.0 - par.alpha_bar**5)
        assert abs(lhs - (1.0 - par.beta_bar**5)) < 1e-10


class TestWeightTable:
    def test_w_pp_table_all_ones(self):
        ctx, _, (p,) = conditioned_points(4, 0.6, 1, seed=10)
        tab = weight_table(p, p, WeightKind.W, ctx)
        assert np.allclose(tab.as_array(), 1.0, atol=1e-13)

    def test_wbar_pp_table_is_delta(self):
        ctx, _, (p,) = conditioned_points(4, 0.6, 1, seed=11)
        tab = weight_table(p, p, WeightKind.WBAR, ctx).as_array()
        assert tab[0] == 1.0
        assert np.all(np.abs(tab[1:]) < 1e-13)

    def test_entries_equal_pointwise_calls(self):
        ctx, _, (p, q) = conditioned_points(5, 0.6, 2, seed=12)
        tab = weight_table(p, q, WeightKind.W, ctx)
        for n in range(5):
            assert tab[n] == weight_w(p, q, n, ctx)
        assert tab.values[0] == 1.0

    def test_negative_index_wraps(self):
        ctx, _, (p, q) = conditioned_points(3, 0.6, 2, seed=13)
        tab = weight_table(p, q, WeightKind.WBAR, ctx)
        assert tab[-1] == tab[2]


class TestFourierWeight:
    def test_p_equals_q_geometric_sum(self):
        ctx, _, (p,) = conditioned_points(5, 0.6, 1, seed=14)
        assert fourier_weight(p, p, 0, ctx) == pytest.approx(5.0, abs=1e-12)
        for k in range(1, 5):
            assert abs(fourier_weight(p, p, k, ctx)) < 1e-12

    def test_k_zero_is_plain_sum(self):
        ctx, _, (p, q) = conditioned_points(4, 0.6, 2, seed=15)
        tab = weight_table(p, q, WeightKind.W, ctx).as_array()
        assert fourier_weight(p, q, 0, ctx) == pytest.approx(tab.sum(), rel=1e-13)

    @pytest.mark.parametrize("N", range(2, 9))
    def test_equals_cyclic_phi21(self, N):
        ctx, _, (p, q) = conditioned_points(N, 0.6, 2, seed=16)
        par = weight_params(p, q, ctx)
        for k in range(N):
            spec = CyclicSeriesSpec(
                N, (par.alpha,), (par.beta,), par.gamma * ctx.power(k)
            )
            assert cyclic_ok(spec)
            assert fourier_weight(p, q, k, ctx) == pytest.approx(
                eval_terminating_phi(spec, ctx), rel=1e-10
            )


def cyclic_ok(spec):
    from chiralpotts.hypergeometric import cyclic_residual

    return cyclic_residual(spec) < 1e-9
