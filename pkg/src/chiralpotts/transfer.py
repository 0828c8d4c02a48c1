"""Diagonal-to-diagonal transfer matrices and their commutation.

For a chain of L spins with periodic boundary conditions (sigma_{L+1} =
sigma_1 and likewise for sigma'), the two transfer matrices at base
rapidity p are

    (T_q)_{sigma, sigma'}    = prod_j W_pq(sigma_j - sigma'_j)
                                      Wbar_pq(sigma_{j+1} - sigma'_j),
    (That_r)_{sigma, sigma'} = prod_j Wbar_pr(sigma_j - sigma'_j)
                                      W_pr(sigma_j - sigma'_{j+1}).

Repeated star-triangle moves plus one inversion imply T_q That_r is
proportional to T_r That_q; the proportionality factor lambda is
extracted numerically, not predicted.

Spin configurations are encoded in mixed radix base N with site 1 least
significant.  Matrices are dense; the N^L <= 10^4 guard keeps the cubic
multiply at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import UnityContext
from .rapidity import Rapidity
from .results import IdentityResult
from .weights import WeightKind, weight_table

__all__ = ["TransferMatrix", "build_T", "build_That", "check_commutation"]

SIZE_GUARD = 10**4


@dataclass(frozen=True)
class TransferMatrix:
    L: int
    N: int
    entries: np.ndarray  # (N^L, N^L) complex


def _digits(N: int, L: int) -> np.ndarray:
    """configs x sites array of spin values; site j is digit j (LSB first)."""
    size = N**L
    codes = np.arange(size)
    return (codes[:, None] // N ** np.arange(L)[None, :]) % N


def _check_size(N: int, L: int) -> None:
    if L < 1:
        raise ValueError(f"chain length must be >= 1, got {L}")
    if N**L > SIZE_GUARD:
        raise ValueError(f"N^L = {N**L} exceeds the dense-matrix guard {SIZE_GUARD}")


def build_T(p: Rapidity, q: Rapidity, L: int, ctx: UnityContext) -> TransferMatrix:
    """T_q from precomputed weight tables."""
    _check_size(ctx.N, L)
    w_tab = weight_table(p, q, WeightKind.W, ctx).as_array()
    wbar_tab = weight_table(p, q, WeightKind.WBAR, ctx).as_array()
    digits = _digits(ctx.N, L)
    entries = np.ones((ctx.N**L, ctx.N**L), dtype=complex)
    for j in range(L):
        sig = digits[:, j][:, None]
        sig_next = digits[:, (j + 1) % L][:, None]
        sigp = digits[:, j][None, :]
        entries *= w_tab[(sig - sigp) % ctx.N]
        entries *= wbar_tab[(sig_next - sigp) % ctx.N]
    return TransferMatrix(L=L, N=ctx.N, entries=entries)


def build_That(p: Rapidity, r: Rapidity, L: int, ctx: UnityContext) -> TransferMatrix:
    """That_r; same structure with the hatted index pattern."""
    _check_size(ctx.N, L)
    w_tab = weight_table(p, r, WeightKind.W, ctx).as_array()
    wbar_tab = weight_table(p, r, WeightKind.WBAR, ctx).as_array()
    digits = _digits(ctx.N, L)
    entries = np.ones((ctx.N**L, ctx.N**L), dtype=complex)
    for j in range(L):
        sig = digits[:, j][:, None]
        sigp = digits[:, j][None, :]
        sigp_next = digits[:, (j + 1) % L][None, :]
        entries *= wbar_tab[(sig - sigp) % ctx.N]
        entries *= w_tab[(sig - sigp_next) % ctx.N]
    return TransferMatrix(L=L, N=ctx.N, entries=entries)


def check_commutation(
    p: Rapidity,
    q: Rapidity,
    r: Rapidity,
    L: int,
    ctx: UnityContext,
    tol: float = 1e-8,
) -> IdentityResult:
    """max |T_q That_r - lambda T_r That_q| / max |T_q That_r|.

    lambda is read off at the entry where |T_r That_q| is largest and
    reported as the result constant.
    """
    a = build_T(p, q, L, ctx).entries @ build_That(p, r, L, ctx).entries
    b = build_T(p, r, L, ctx).entries @ build_That(p, q, L, ctx).entries
    b_scale = float(np.abs(b).max())
    if b_scale == 0.0:
        raise ValueError("T_r That_q is identically zero; degenerate input")
    flat = int(np.abs(b).argmax())
    idx = np.unravel_index(flat, b.shape)
    lam = complex(a[idx] / b[idx])
    a_scale = float(np.abs(a).max())
    residual = float(np.abs(a - lam * b).max()) / max(a_scale, 1e-300)
    return IdentityResult(
        name="transfer-commutation",
        params={"N": ctx.N, "L": L, "p": p.x, "q": q.x, "r": r.x},
        max_residual=residual,
        tolerance=tol,
        constant=lam,
    )
