"""Rapidity points on the high-genus chiral Potts curve.

A modulus is a pair (k, k') with k^2 + k'^2 = 1.  A rapidity is a triple
(x, y, mu) of complex numbers satisfying

    x^N + y^N = k (1 + x^N y^N),
    mu^N = k' / (1 - k x^N) = (1 - k y^N) / k'.

The curve only constrains the N-th powers of y and mu, so each admits N
branches; the branch indices are explicit constructor arguments (never a
hidden choice) because downstream constants such as the star-triangle
R_pqr depend on the actual point, not just its N-th powers.

The samplers draw x from the annulus 0.2 <= |x| <= 1.5 with uniform random
phase and reject badly conditioned candidates.  A sampler is deterministic
given its numpy Generator; create one Generator per worker thread.
"""

from __future__ import annotations

from dataclasses import dataclass

import cmath

import numpy as np

from .algebra import UnityContext, principal_nth_root

__all__ = [
    "Modulus",
    "Rapidity",
    "SamplerError",
    "modulus_from_k",
    "rapidity_from_x",
    "validate_rapidity",
    "sample_rapidity",
    "sample_conditioned",
]

# |1 - k x^N| guard below which rapidity_from_x refuses to divide.
DENOMINATOR_TOL = 1e-10
# stronger guard used while sampling, so downstream weights stay tame
SAMPLER_DENOM_TOL = 1e-3
# minimum pairwise separation |y_p - x_q omega^j| etc. enforced by
# sample_conditioned; weight denominators are then bounded away from zero
PAIR_SEPARATION = 1e-2

ANNULUS_MIN = 0.2
ANNULUS_MAX = 1.5


class SamplerError(RuntimeError):
    """Rejection sampling failed; the modulus is badly conditioned."""


@dataclass(frozen=True)
class Modulus:
    k: complex
    k_prime: complex


def modulus_from_k(k: complex) -> Modulus:
    """Modulus with k' the principal square root of 1 - k^2."""
    return Modulus(k=complex(k), k_prime=cmath.sqrt(1.0 - complex(k) ** 2))


@dataclass(frozen=True)
class Rapidity:
    x: complex
    y: complex
    mu: complex


def rapidity_from_x(
    x: complex,
    branch_y: int,
    branch_mu: int,
    mod: Modulus,
    ctx: UnityContext,
) -> Rapidity:
    """Point on the curve above x with explicit branch indices mod N.

    y = omega^branch_y * ((k - x^N) / (1 - k x^N))^(1/N) and
    mu = omega^branch_mu * (k' / (1 - k x^N))^(1/N), principal roots.
    """
    k = mod.k
    den = 1.0 - k * x**ctx.N
    if abs(den) < DENOMINATOR_TOL:
        raise ValueError(f"1 - k x^N = {den} is below the {DENOMINATOR_TOL} guard")
    y = ctx.power(branch_y) * principal_nth_root((k - x**ctx.N) / den, ctx.N)
    mu = ctx.power(branch_mu) * principal_nth_root(mod.k_prime / den, ctx.N)
    return Rapidity(x=complex(x), y=y, mu=mu)


def validate_rapidity(
    r: Rapidity, mod: Modulus, ctx: UnityContext
) -> tuple[float, float, float]:
    """Normalized residuals of the three curve relations.  Never raises.

    Returns (curve, mu_vs_x, mu_vs_y) where each residual is the defect of
    the relation divided by the largest participating term magnitude.
    """
    N = ctx.N
    k, kp = mod.k, mod.k_prime
    xN, yN, muN = r.x**N, r.y**N, r.mu**N

    terms = (abs(xN), abs(yN), abs(k), abs(k * xN * yN))
    scale = max(max(terms), 1e-300)
    curve = abs(xN + yN - k * (1.0 + xN * yN)) / scale

    lhs = muN * (1.0 - k * xN)
    scale = max(abs(lhs), abs(kp), 1e-300)
    mu_x = abs(lhs - kp) / scale

    lhs = muN * kp
    rhs = 1.0 - k * yN
    scale = max(abs(lhs), abs(rhs), 1e-300)
    mu_y = abs(lhs - rhs) / scale

    return (curve, mu_x, mu_y)


def sample_rapidity(
    rng: np.random.Generator,
    mod: Modulus,
    ctx: UnityContext,
    max_rejects: int = 10000,
) -> Rapidity:
    """Draw one rapidity: |x| uniform in [0.2, 1.5], uniform phase,
    uniform branches, rejecting candidates with |1 - k x^N| < 1e-3."""
    for _ in range(max_rejects):
        radius = rng.uniform(ANNULUS_MIN, ANNULUS_MAX)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        x = radius * cmath.exp(1j * phase)
        if abs(1.0 - mod.k * x**ctx.N) < SAMPLER_DENOM_TOL:
            continue
        branch_y = int(rng.integers(0, ctx.N))
        branch_mu = int(rng.integers(0, ctx.N))
        return rapidity_from_x(x, branch_y, branch_mu, mod, ctx)
    raise SamplerError(
        f"no admissible x found after {max_rejects} rejections (k={mod.k})"
    )


def _pair_conditioned(p: Rapidity, q: Rapidity, ctx: UnityContext) -> bool:
    # both weight-denominator families, both orders
    for a, b in ((p, q), (q, p)):
        for j in range(ctx.N):
            w = ctx.power(j)
            if abs(a.y - b.x * w) < PAIR_SEPARATION:
                return False
            if abs(b.y - a.y * w) < PAIR_SEPARATION:
                return False
    return True


def sample_conditioned(
    rng: np.random.Generator,
    mod: Modulus,
    ctx: UnityContext,
    count: int,
    max_rejects: int = 10000,
) -> tuple[Rapidity, ...]:
    """Draw `count` rapidities whose pairwise weight denominators are all
    bounded below by PAIR_SEPARATION, so every W/Wbar table among them is
    well conditioned.  Also keeps each |y| away from zero (the Pochhammer
    parameterization divides by it)."""
    points: list[Rapidity] = []
    rejects = 0
    while len(points) < count:
        cand = sample_rapidity(rng, mod, ctx, max_rejects=max_rejects)
        ok = abs(cand.y) > PAIR_SEPARATION and abs(cand.x) > PAIR_SEPARATION
        if ok:
            for prev in points:
                if not _pair_conditioned(prev, cand, ctx):
                    ok = False
                    break
        if ok:
            points.append(cand)
        else:
            rejects += 1
            if rejects > max_rejects:
                raise SamplerError(
                    f"could not assemble {count} well-separated rapidities"
                )
    return tuple(points)
