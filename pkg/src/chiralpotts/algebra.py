"""Root-of-unity algebra: Pochhammer symbols, fractional-power products, log-gamma.

Everything downstream works with a fixed primitive N-th root of unity
omega = exp(2*pi*i/N).  This module provides the shared ``UnityContext``
(order, root, cached powers) together with the elementary building blocks:

* the omega-Pochhammer symbol  (x; omega)_n = prod_{l=0}^{n-1} (1 - x omega^l),
  and its generic-base counterpart (x; q)_n,
* the Gaussian binomial coefficient with base q,
* the fractional-power product  p(x) = prod_{j=1}^{N-1} (1 - omega^j x)^(j/N),
* the principal N-th root  Delta(x) = (1 - x^N)^(1/N),
* the constant  Phi_0 = exp(i pi (N-1)(N-2) / (12 N)),
* a principal-branch complex log-gamma.

All fractional powers are taken with the principal complex logarithm.  The
identities built on p(x) and Delta(x) are therefore only valid up to an
N-th root-of-unity phase, which callers must account for explicitly.

Every function here is pure and safe to call concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

__all__ = [
    "POLE_TOL",
    "PoleError",
    "UnityContext",
    "omega_pochhammer",
    "q_pochhammer",
    "q_binomial",
    "p_product",
    "delta_root",
    "phi_zero",
    "log_gamma",
    "principal_nth_root",
]

# Uniform guard threshold for vanishing denominator/pole factors.
POLE_TOL = 1e-12


class PoleError(ArithmeticError):
    """A factor sits on (or within POLE_TOL of) a pole or zero of a ratio."""


@dataclass(frozen=True)
class UnityContext:
    """Order N together with omega = exp(2*pi*i/N) and cached powers.

    ``omega_powers[j]`` holds omega^j for j = 0..N-1; ``power(j)`` wraps the
    exponent mod N so arbitrary integer exponents are exact.
    """

    N: int
    omega: complex = field(init=False)
    omega_powers: tuple[complex, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"order must be a positive integer, got {self.N}")
        powers = tuple(
            cmath.exp(2j * math.pi * j / self.N) for j in range(self.N)
        )
        object.__setattr__(self, "omega_powers", powers)
        object.__setattr__(self, "omega", powers[1 % self.N])

    def power(self, j: int) -> complex:
        """omega^j for any integer j (reduced mod N)."""
        return self.omega_powers[j % self.N]


def omega_pochhammer(x: complex, n: int, ctx: UnityContext) -> complex:
    """(x; omega)_n = prod_{l=0}^{n-1} (1 - x omega^l).  Empty product is 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    result = 1.0 + 0.0j
    for l in range(n):
        result *= 1.0 - x * ctx.power(l)
    return result


def q_pochhammer(x: complex, q: complex, n: int) -> complex:
    """(x; q)_n = prod_{j=0}^{n-1} (1 - x q^j).  Empty product is 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    result = 1.0 + 0.0j
    factor = complex(x)
    for _ in range(n):
        result *= 1.0 - factor
        factor *= q
    return result


def q_binomial(alpha: int, n: int, q: complex) -> complex:
    """Gaussian binomial coefficient [alpha, n] with base q.

    Computed as (q;q)_alpha / ((q;q)_n (q;q)_{alpha-n}) when no intermediate
    Pochhammer vanishes; otherwise (q a root of unity and alpha >= N) falls
    back on the additive recurrence
    [alpha, n] = [alpha-1, n-1] + q^n [alpha-1, n].
    """
    if n < 0 or n > alpha:
        raise ValueError(f"require 0 <= n <= alpha, got n={n}, alpha={alpha}")
    if n == 0 or n == alpha:
        return 1.0 + 0.0j
    pa = q_pochhammer(q, q, alpha)
    pn = q_pochhammer(q, q, n)
    pan = q_pochhammer(q, q, alpha - n)
    if min(abs(pa), abs(pn), abs(pan)) > POLE_TOL:
        return pa / (pn * pan)
    # Pascal-type recurrence, one row at a time.
    row = [1.0 + 0.0j]
    for a in range(1, alpha + 1):
        prev = row
        row = [1.0 + 0.0j]
        for m in range(1, a):
            row.append(prev[m - 1] + q**m * prev[m])
        row.append(1.0 + 0.0j)
    return row[n]


def principal_nth_root(w: complex, n: int) -> complex:
    """exp(Log(w)/n) with the principal logarithm; root of 0 is 0."""
    if w == 0:
        return 0.0 + 0.0j
    return cmath.exp(cmath.log(w) / n)


def p_product(x: complex, ctx: UnityContext) -> complex:
    """p(x) = prod_{j=1}^{N-1} (1 - omega^j x)^(j/N), principal branches.

    Raises PoleError when any factor 1 - omega^j x is within POLE_TOL of 0.
    """
    N = ctx.N
    total = 0.0 + 0.0j
    for j in range(1, N):
        factor = 1.0 - ctx.power(j) * x
        if abs(factor) < POLE_TOL:
            raise PoleError(f"p-product factor 1 - omega^{j} x vanishes at x={x}")
        total += (j / N) * cmath.log(factor)
    return cmath.exp(total)


def delta_root(x: complex, ctx: UnityContext) -> complex:
    """Delta(x) = (1 - x^N)^(1/N), principal branch."""
    w = 1.0 - x**ctx.N
    if abs(w) < POLE_TOL:
        raise PoleError(f"1 - x^N vanishes at x={x}")
    return principal_nth_root(w, ctx.N)


def phi_zero(ctx: UnityContext) -> complex:
    """Phi_0 = exp(i pi (N-1)(N-2) / (12 N))."""
    N = ctx.N
    return cmath.exp(1j * math.pi * (N - 1) * (N - 2) / (12 * N))


# ---------------------------------------------------------------------------
# Principal-branch complex log-gamma.
#
# Strategy: for Re z >= 0.5 shift the argument up by the recurrence until
# |z| >= 16 and apply the Stirling series; the result is the principal
# branch there because every piece is analytic on the right half-plane and
# real on the positive axis.  For Re z < 0.5 reflect via
#     log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
# where log sin(pi z) is evaluated on the branch that keeps the total
# continuous with the principal value (upper half-plane formula plus
# conjugation symmetry for Im z < 0).

# B_{2k} / (2k (2k-1)) for the Stirling asymptotic series.
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING_RADIUS = 16.0


def _stirling(z: complex) -> complex:
    s = (z - 0.5) * cmath.log(z) - z + _HALF_LOG_TWO_PI
    w = 1.0 / z
    w2 = w * w
    t = w
    for c in _STIRLING_COEFFS:
        s += c * t
        t *= w2
    return s


def _log_gamma_right(z: complex) -> complex:
    shift = 0.0 + 0.0j
    while abs(z) < _STIRLING_RADIUS:
        shift += cmath.log(z)
        z += 1.0
    return _stirling(z) - shift


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Relative accuracy of exp(log_gamma(z)) is ~1e-14 for Re z > 0; the
    reflection formula is used for Re z <= 0.  Raises PoleError within
    POLE_TOL of a nonpositive integer.
    """
    z = complex(z)
    nearest = round(z.real)
    if nearest <= 0 and abs(z - nearest) < POLE_TOL:
        raise PoleError(f"log_gamma pole at nonpositive integer z={z}")
    if z.imag < 0.0:
        return log_gamma(z.conjugate()).conjugate()
    if z.real >= 0.5:
        return _log_gamma_right(z)
    # Im z >= 0 here; log sin(pi z) on the branch analytic in the upper
    # half-plane and real on (0, 1).
    log_sin = (
        -math.log(2.0)
        + 0.5j * math.pi
        - 1j * math.pi * z
        + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
    )
    return math.log(math.pi) - log_sin - _log_gamma_right(1.0 - z)
