"""Reflection, inversion and star-triangle relations of the weights.

The three local relations, in the normalization W(0) = Wbar(0) = 1:

  reflection:    W_pp(n) = 1  and  W_pq(n) W_qp(n) = 1,
  inversion:     sum_b Wbar_pq(a-b) Wbar_qp(b-c) = r_pq delta_{a,c},
  star-triangle: sum_d Wbar_pr(a-d) W_pq(d-c) Wbar_rq(d-b)
                   = R_pqr Wbar_pq(a-b) W_pr(b-c) W_rq(a-c).

No closed form is used for R_pqr: it is extracted from one reference spin
triple and its constancy over all N^3 triples is the correctness
criterion.  The star-triangle sum, rewritten through the Pochhammer form
of the weights, is a well-balanced terminating 4Phi3 whose parameters and
prefactor are produced by map_to_4phi3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import POLE_TOL, PoleError, UnityContext
from .hypergeometric import CyclicSeriesSpec
from .rapidity import Rapidity
from .results import IdentityResult
from .weights import WeightKind, weight_table

__all__ = [
    "check_reflection",
    "inversion_constant",
    "star_triangle_residual",
    "star_triangle_constant",
    "StarTriangleSeriesMap",
    "map_to_4phi3",
]


def check_reflection(
    p: Rapidity, q: Rapidity, ctx: UnityContext, tol: float = 1e-10
) -> IdentityResult:
    """max_n |W_pq(n) W_qp(n) - 1|, together with the W_pp(n) = 1 check."""
    wpq = weight_table(p, q, WeightKind.W, ctx).as_array()
    wqp = weight_table(q, p, WeightKind.W, ctx).as_array()
    wpp = weight_table(p, p, WeightKind.W, ctx).as_array()
    residual = max(
        float(np.abs(wpq * wqp - 1.0).max()),
        float(np.abs(wpp - 1.0).max()),
    )
    return IdentityResult(
        name="reflection",
        params={"N": ctx.N, "p": p.x, "q": q.x},
        max_residual=residual,
        tolerance=tol,
    )


def _circulant(values: np.ndarray) -> np.ndarray:
    """M[a, b] = values[(a - b) mod N]."""
    n = len(values)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return values[idx]


def inversion_constant(
    p: Rapidity, q: Rapidity, ctx: UnityContext, tol: float = 1e-10
) -> IdentityResult:
    """Full N x N convolution matrix against r_pq * Identity.

    Off-diagonal magnitudes are compared to tol * max|diagonal| and the
    diagonal spread to the same relative scale; r_pq = M[0, 0].
    """
    wbar_pq = weight_table(p, q, WeightKind.WBAR, ctx).as_array()
    wbar_qp = weight_table(q, p, WeightKind.WBAR, ctx).as_array()
    conv = _circulant(wbar_pq) @ _circulant(wbar_qp)
    diag = np.diagonal(conv)
    r_pq = complex(conv[0, 0])
    scale = float(np.abs(diag).max())
    if scale < POLE_TOL:
        raise PoleError("inversion convolution is numerically zero")
    off = conv - np.diag(diag)
    residual = max(
        float(np.abs(off).max()) / scale,
        float(np.abs(diag - r_pq).max()) / scale,
    )
    return IdentityResult(
        name="inversion",
        params={"N": ctx.N, "p": p.x, "q": q.x},
        max_residual=residual,
        tolerance=tol,
        constant=r_pq,
    )


def _star_triangle_sides(
    p: Rapidity, q: Rapidity, r: Rapidity, ctx: UnityContext
) -> tuple[np.ndarray, np.ndarray]:
    """LHS[a, b, c] and the weight product RHS[a, b, c] over all triples."""
    wbar_pr = weight_table(p, r, WeightKind.WBAR, ctx).as_array()
    w_pq = weight_table(p, q, WeightKind.W, ctx).as_array()
    wbar_rq = weight_table(r, q, WeightKind.WBAR, ctx).as_array()
    # LHS[a,b,c] = sum_d wbar_pr[a-d] w_pq[d-c] wbar_rq[d-b]
    lhs = np.einsum(
        "ad,dc,db->abc",
        _circulant(wbar_pr),
        _circulant(w_pq),
        _circulant(wbar_rq),
    )
    wbar_pq = weight_table(p, q, WeightKind.WBAR, ctx).as_array()
    w_pr = weight_table(p, r, WeightKind.W, ctx).as_array()
    w_rq = weight_table(r, q, WeightKind.W, ctx).as_array()
    rhs = (
        _circulant(wbar_pq)[:, :, None]
        * _circulant(w_pr)[None, :, :]
        * _circulant(w_rq)[:, None, :]
    )
    return lhs, rhs


def star_triangle_residual(
    p: Rapidity,
    q: Rapidity,
    r: Rapidity,
    a: int,
    b: int,
    c: int,
    R: complex,
    ctx: UnityContext,
) -> float:
    """Relative defect of the star-triangle relation at one spin triple."""
    lhs, rhs = _star_triangle_sides(p, q, r, ctx)
    n = ctx.N
    left = lhs[a % n, b % n, c % n]
    right = R * rhs[a % n, b % n, c % n]
    return abs(left - right) / max(abs(left), abs(right), 1e-300)


def star_triangle_constant(
    p: Rapidity,
    q: Rapidity,
    r: Rapidity,
    ctx: UnityContext,
    tol: float = 1e-9,
) -> IdentityResult:
    """Extract R_pqr at a reference triple and sweep all

    N^3 spin triples for constancy.  The reference is (0, 0, 0) unless its
    weight product is numerically tiny, in which case the triple with the
    largest |RHS| is used instead.
    """
    lhs, rhs = _star_triangle_sides(p, q, r, ctx)
    if abs(rhs[0, 0, 0]) >= 1e-12:
        ref = (0, 0, 0)
    else:
        flat = int(np.abs(rhs).argmax())
        ref = np.unravel_index(flat, rhs.shape)
        if abs(rhs[ref]) < 1e-12:
            raise PoleError("all star-triangle weight products vanish")
    constant = complex(lhs[ref] / rhs[ref])
    scaled = constant * rhs
    denom = np.maximum(np.abs(lhs), np.abs(scaled))
    denom = np.maximum(denom, 1e-300)
    residual = float((np.abs(lhs - scaled) / denom).max())
    return IdentityResult(
        name="star-triangle",
        params={"N": ctx.N, "p": p.x, "q": q.x, "r": r.x, "reference": list(ref)},
        max_residual=residual,
        tolerance=tol,
        constant=constant,
    )


@dataclass(frozen=True)
class StarTriangleSeriesMap:
    """Terminating 4Phi3 reading of the star-triangle sum.

    prefactor * sum_{l=0}^{N-1} prod_i gamma_i^l (alpha_i; w)_l / (beta_i; w)_l
    equals sum_d Wbar_pr(a-d) W_pq(d-c) Wbar_rq(d-b).  The series argument
    is gamma_1 gamma_2 gamma_3 = w, and w^2 prod(alpha) = prod(beta): the
    well-balanced condition with argument z = w.
    """

    alphas: tuple[complex, complex, complex]
    betas: tuple[complex, complex, complex]
    gammas: tuple[complex, complex, complex]
    prefactor: complex
    series: CyclicSeriesSpec


BALANCE_TOL = 1e-11


def map_to_4phi3(
    p: Rapidity,
    q: Rapidity,
    r: Rapidity,
    a: int,
    b: int,
    c: int,
    ctx: UnityContext,
) -> StarTriangleSeriesMap:
    """Pochhammer parameters of the star-triangle sum as a 4Phi3.

    The summation index is aligned as l = d - c - s, where the reference
    offset s (normally 0) is advanced past vanishing weight products; at
    l = 0 all three Pochhammer products are then empty, so the prefactor
    is the single LHS term at d = c + s:

        C = Wbar_pr(a - c - s) W_pq(s) Wbar_rq(c + s - b).

    With t = a - c - s the W̄_pr factor reverses into numerator parameter
    w^{-t} y_r / y_p and denominator w^{1-t} x_p / x_r; the W̄_rq factor
    shifts by c + s - b.
    """
    for name, value in (("x_p", p.x), ("y_p", p.y), ("x_q", q.x), ("y_q", q.y),
                        ("x_r", r.x), ("y_r", r.y)):
        if abs(value) < POLE_TOL:
            raise ValueError(f"map_to_4phi3 needs {name} != 0")
    N = ctx.N
    w = ctx.omega
    wbar_pr = weight_table(p, r, WeightKind.WBAR, ctx)
    w_pq = weight_table(p, q, WeightKind.W, ctx)
    wbar_rq = weight_table(r, q, WeightKind.WBAR, ctx)

    for s in range(N):
        prefactor = (
            wbar_pr[a - c - s] * w_pq[s] * wbar_rq[c + s - b]
        )
        if abs(prefactor) >= 1e-12:
            break
    else:
        raise PoleError("every candidate reference term of the sum vanishes")

    shift_a = c + s - a  # -t
    shift_b = c + s - b
    alphas = (
        ctx.power(shift_a) * r.y / p.y,
        w * p.x / q.y,
        ctx.power(shift_b) * q.x / r.x,
    )
    betas = (
        ctx.power(shift_a + 1) * p.x / r.x,
        w * q.x / p.y,
        ctx.power(shift_b + 1) * r.y / q.y,
    )
    gammas = (
        p.y / (p.mu * r.mu * r.x),
        p.mu * q.y / (q.mu * p.y),
        w * q.mu * r.mu * r.x / q.y,
    )
    balance = abs(
        w**2 * alphas[0] * alphas[1] * alphas[2] - betas[0] * betas[1] * betas[2]
    ) / max(abs(betas[0] * betas[1] * betas[2]), 1e-300)
    argument = gammas[0] * gammas[1] * gammas[2]
    arg_defect = abs(argument - w)
    if balance > BALANCE_TOL or arg_defect > BALANCE_TOL:
        raise ValueError(
            f"well-balanced conditions violated (balance {balance:.3e}, "
            f"argument defect {arg_defect:.3e}); rapidities are off-curve"
        )
    series = CyclicSeriesSpec(
        N=N, numerators=alphas, denominators=betas, argument=argument
    )
    return StarTriangleSeriesMap(
        alphas=alphas,
        betas=betas,
        gammas=gammas,
        prefactor=complex(prefactor),
        series=series,
    )
