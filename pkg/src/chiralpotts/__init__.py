"""Integrable chiral Potts model numerics and cyclic hypergeometric identities.

Layers, bottom up:

* ``algebra``        -- root-of-unity context, Pochhammer symbols,
                        fractional-power products, log-gamma
* ``rapidity``       -- the modulus (k, k'), points on the high-genus curve,
                        conditioned samplers
* ``weights``        -- Boltzmann weights W, Wbar and their Pochhammer form
* ``identities``     -- reflection / inversion / star-triangle, the 4Phi3
                        reading of the star-triangle sum
* ``hypergeometric`` -- terminating and cyclic series, all summation and
                        transformation identities, the bilateral gamma sum
* ``transfer``       -- commuting transfer matrices
* ``cli``            -- seeded batch verification with JSON/text reports
"""

from .algebra import (
    POLE_TOL,
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
from .cli import SuiteConfig, VerificationReport, run_suite
from .hypergeometric import (
    BilateralSpec,
    CyclicSeriesSpec,
    DegenerateError,
    bilateral_gamma_sum,
    check_euler_analog,
    check_phi32_transform,
    check_rothe,
    check_saalschutz,
    check_shift_recursion,
    check_wff,
    eval_basic_phi,
    eval_terminating_phi,
    phi21_cyclic_closed,
    solve_bilateral_params,
)
from .identities import (
    check_reflection,
    inversion_constant,
    map_to_4phi3,
    star_triangle_constant,
    star_triangle_residual,
)
from .rapidity import (
    Modulus,
    Rapidity,
    SamplerError,
    modulus_from_k,
    rapidity_from_x,
    sample_rapidity,
    validate_rapidity,
)
from .results import IdentityResult
from .transfer import TransferMatrix, build_T, build_That, check_commutation
from .weights import (
    WeightKind,
    WeightTable,
    fourier_weight,
    weight_params,
    weight_table,
    weight_w,
    weight_wbar,
)

__version__ = "0.1.0"
