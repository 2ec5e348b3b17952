"""Rotation numbers, plateaus and semi-conjugacies of two-slope circle maps.

The package treats the family of interval maps built from two increasing
affine branches (slopes ``lam`` and ``lam*mu``) with a single break point,
viewed as circle maps.  It computes their rotation number both by orbit
iteration and analytically through lacunary series, locates the rational
plateaus of the resulting devil's staircase, inverts the staircase by
mediant search, and evaluates the monotone semi-conjugacy onto the rigid
rotation together with the attracting cycles and Cantor-set samples it
describes.

Every operation accepts either binary floats or exact rationals
(``fractions.Fraction``); with rational inputs the closed-form paths are
bit-exact, which the boundary classifications rely on.
"""

from .boundary import (
    Enclosure,
    Plateau,
    PlateauMembership,
    RhoSolveResult,
    a_of_rho,
    delta_of_rho,
    farey_fractions,
    plateau,
    rho_of_a,
)
from .conjugacy import (
    CantorSample,
    Cycle,
    GapStats,
    LimitClass,
    LimitKind,
    cantor_sample,
    classify,
    conjugacy_residual,
    limit_cycle,
    omega_limit,
    phi_eval,
)
from .errors import ConvergenceError, DomainError, IterationLimitError, ValidationError
from .pam import (
    Branch,
    OrbitSample,
    branch,
    enter_band,
    eval_map,
    in_band,
    lift_eval,
    lift_monotone_eval,
    orbit,
    rotation_estimate,
)
from .params import (
    Params,
    QuadParams,
    Scalar,
    a_interval,
    d_bound,
    delta_coord,
    inequality_report,
    is_exact,
    theta,
    validate_params,
    validate_quad,
)
from .series import (
    RhoApprox,
    SeriesResult,
    feasible_fraction,
    phi_rational,
    phi_series,
    psi,
    r_bound,
    sigma_left_limit,
    sigma_rational,
    sigma_series,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "CantorSample",
    "ConvergenceError",
    "Cycle",
    "DomainError",
    "Enclosure",
    "GapStats",
    "IterationLimitError",
    "LimitClass",
    "LimitKind",
    "OrbitSample",
    "Params",
    "Plateau",
    "PlateauMembership",
    "QuadParams",
    "RhoApprox",
    "RhoSolveResult",
    "Scalar",
    "SeriesResult",
    "ValidationError",
    "a_interval",
    "a_of_rho",
    "branch",
    "cantor_sample",
    "classify",
    "conjugacy_residual",
    "d_bound",
    "delta_coord",
    "delta_of_rho",
    "enter_band",
    "eval_map",
    "farey_fractions",
    "feasible_fraction",
    "in_band",
    "inequality_report",
    "is_exact",
    "lift_eval",
    "lift_monotone_eval",
    "limit_cycle",
    "omega_limit",
    "orbit",
    "phi_eval",
    "phi_rational",
    "phi_series",
    "plateau",
    "psi",
    "r_bound",
    "rho_of_a",
    "rotation_estimate",
    "sigma_left_limit",
    "sigma_rational",
    "sigma_series",
    "theta",
    "validate_params",
    "validate_quad",
]
