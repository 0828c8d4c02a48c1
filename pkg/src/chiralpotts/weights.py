"""Chiral Potts Boltzmann weights and their Pochhammer parameterization.

With rapidities p = (x_p, y_p, mu_p), q = (x_q, y_q, mu_q) on the curve,
the two edge weights are (normalized to W(0) = Wbar(0) = 1)

    W_pq(n)    = prod_{j=1}^{n} (mu_p/mu_q) (y_q - x_p w^j) / (y_p - x_q w^j),
    Wbar_pq(n) = prod_{j=1}^{n} (mu_p mu_q) (w x_p - x_q w^j) / (y_q - y_p w^j),

with w = omega and the spin difference n always reduced mod N.  On the
curve both products are periodic, W(n + N) = W(n).

Equivalently, with

    alpha = w x_p / y_q,  beta = w x_q / y_p,  gamma = mu_p y_q / (mu_q y_p),
    alpha_bar = x_q / x_p, beta_bar = w y_p / y_q,
    gamma_bar = w mu_p mu_q x_p / y_q,

one has W_pq(n) = gamma^n (alpha; w)_n / (beta; w)_n and the barred analog,
and on the curve gamma^N (1 - alpha^N) = 1 - beta^N.  (Note the roles:
alpha, built from x_p, is the numerator parameter.)

The discrete Fourier transform of the W table is then the cyclic 2Phi1
with numerator alpha, denominator beta and argument gamma * w^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import POLE_TOL, PoleError, UnityContext
from .rapidity import Rapidity

__all__ = [
    "WeightKind",
    "WeightTable",
    "WeightParams",
    "weight_w",
    "weight_wbar",
    "weight_w_spins",
    "weight_wbar_spins",
    "weight_params",
    "weight_table",
    "fourier_weight",
    "periodicity_residual",
]


class WeightKind(Enum):
    W = "W"
    WBAR = "Wbar"


def _w_factor(p: Rapidity, q: Rapidity, j: int, ctx: UnityContext) -> complex:
    den = p.y - q.x * ctx.power(j)
    if abs(den) < POLE_TOL:
        raise PoleError(f"W denominator y_p - x_q omega^{j} vanishes; resample")
    return (p.mu / q.mu) * (q.y - p.x * ctx.power(j)) / den


def _wbar_factor(p: Rapidity, q: Rapidity, j: int, ctx: UnityContext) -> complex:
    den = q.y - p.y * ctx.power(j)
    if abs(den) < POLE_TOL:
        raise PoleError(f"Wbar denominator y_q - y_p omega^{j} vanishes; resample")
    return (p.mu * q.mu) * (ctx.omega * p.x - q.x * ctx.power(j)) / den


def weight_w(p: Rapidity, q: Rapidity, n: int, ctx: UnityContext) -> complex:
    """W_pq(n) with n reduced mod N; W_pq(0) = 1."""
    result = 1.0 + 0.0j
    for j in range(1, n % ctx.N + 1):
        result *= _w_factor(p, q, j, ctx)
    return result


def weight_wbar(p: Rapidity, q: Rapidity, n: int, ctx: UnityContext) -> complex:
    """Wbar_pq(n) with n reduced mod N; Wbar_pq(0) = 1."""
    result = 1.0 + 0.0j
    for j in range(1, n % ctx.N + 1):
        result *= _wbar_factor(p, q, j, ctx)
    return result


def weight_w_spins(p: Rapidity, q: Rapidity, a: int, b: int, ctx: UnityContext) -> complex:
    """Two-spin form W_pq(a - b)."""
    return weight_w(p, q, (a - b) % ctx.N, ctx)


def weight_wbar_spins(p: Rapidity, q: Rapidity, a: int, b: int, ctx: UnityContext) -> complex:
    """Two-spin form Wbar_pq(a - b)."""
    return weight_wbar(p, q, (a - b) % ctx.N, ctx)


@dataclass(frozen=True)
class WeightParams:
    """The six Pochhammer parameters of a rapidity pair.

    W_pq(n) = gamma^n (alpha; w)_n / (beta; w)_n and
    Wbar_pq(n) = gamma_bar^n (alpha_bar; w)_n / (beta_bar; w)_n.
    """

    alpha: complex
    beta: complex
    gamma: complex
    alpha_bar: complex
    beta_bar: complex
    gamma_bar: complex


def weight_params(p: Rapidity, q: Rapidity, ctx: UnityContext) -> WeightParams:
    """Pochhammer parameters (alpha, beta, gamma) and barred analogs.

    Requires x_p, y_p, y_q away from zero (they appear in denominators).
    """
    for name, value in (("y_p", p.y), ("y_q", q.y), ("x_p", p.x)):
        if abs(value) < POLE_TOL:
            raise ValueError(f"weight_params needs {name} != 0")
    w = ctx.omega
    return WeightParams(
        alpha=w * p.x / q.y,
        beta=w * q.x / p.y,
        gamma=p.mu * q.y / (q.mu * p.y),
        alpha_bar=q.x / p.x,
        beta_bar=w * p.y / q.y,
        gamma_bar=w * p.mu * q.mu * p.x / q.y,
    )


@dataclass(frozen=True)
class WeightTable:
    """All N weight values of one kind for a fixed rapidity pair.

    values[n] is the weight at spin difference n; values[0] = 1.  Immutable
    and shareable across threads.
    """

    kind: WeightKind
    values: tuple[complex, ...]
    p: Rapidity
    q: Rapidity

    def __getitem__(self, n: int) -> complex:
        return self.values[n % len(self.values)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=complex)


def weight_table(
    p: Rapidity, q: Rapidity, kind: WeightKind, ctx: UnityContext
) -> WeightTable:
    """Tabulate all N values incrementally (memoize per (p, q, kind))."""
    factor = _w_factor if kind is WeightKind.W else _wbar_factor
    values = [1.0 + 0.0j]
    for j in range(1, ctx.N):
        values.append(values[-1] * factor(p, q, j, ctx))
    return WeightTable(kind=kind, values=tuple(values), p=p, q=q)


def fourier_weight(p: Rapidity, q: Rapidity, k: int, ctx: UnityContext) -> complex:
    """W^(f)(k) = sum_n omega^{n k} W_pq(n)."""
    table = weight_table(p, q, WeightKind.W, ctx)
    return sum(ctx.power(n * k) * table.values[n] for n in range(ctx.N))


def periodicity_residual(
    p: Rapidity, q: Rapidity, kind: WeightKind, ctx: UnityContext
) -> float:
    """|product formula at n = N  -  1|; vanishes on-curve."""
    factor = _w_factor if kind is WeightKind.W else _wbar_factor
    full = 1.0 + 0.0j
    for j in range(1, ctx.N + 1):
        full *= factor(p, q, j, ctx)
    return abs(full - 1.0)
