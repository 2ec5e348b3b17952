"""Semi-conjugacy to a rigid rotation, limit cycles and Cantor samples.

The monotone map ``phi`` transports the rotation by ``rho`` onto the
dynamics of the interval map on its limit set: phi(y + rho) = F(phi(y))
where F is the lift.  Its shape depends on the arithmetic of the rotation
number: at a rational p/q taken strictly inside its plateau, phi is a step
function whose q values form the attracting cycle; at the right plateau
endpoint the limit set is empty and the forward closure is finite; off all
plateaus phi is strictly increasing and the closure of its image is a
Cantor set.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .boundary import RhoSolveResult, rho_of_a
from .errors import DomainError, ValidationError
from .pam import eval_map, lift_eval
from .params import Params, Scalar, is_exact
from .series import RhoLike, _point_rho, phi_rational, phi_series


def _step(p: Params, y: Scalar) -> Scalar:
    """One map step; folds a float image that rounded up to 1.0 back below.

    The map's true image is always strictly below 1, but near the
    degenerate plateau endpoint orbits climb within an ulp of 1 and the
    rounded image can graze 1.0 exactly.
    """
    y = eval_map(p, y)
    if not is_exact(y) and y >= 1.0:
        y = math.nextafter(1.0, 0.0)
    return y


def _phi_coefficients(p: Params) -> tuple[Scalar, Scalar]:
    """Constant offset and series coefficient of the conjugacy formula."""
    lam, mu, a, b, c = p.lam, p.mu, p.a, p.b, p.c
    base = a / (1 - lam)
    coeff = ((1 - lam) * (c - mu * b) + a * (mu - 1)) / lam
    return base, coeff


def phi_eval(p: Params, rho: RhoLike, y: Scalar, tol: float = 1e-10) -> Scalar:
    """Value of the semi-conjugacy at ``y``.

    phi(y) = floor(y) + a/(1 - lam) + coeff * Phi(-frac(y)) where Phi is
    the double series evaluated at rotation value ``rho``.  A Fraction
    ``rho`` selects the exact closed form (bit-exact step structure, and
    fully exact with rational map parameters); a float ``rho`` selects the
    certified truncation with accuracy ``tol``.
    """
    rho = _point_rho(rho)
    base, coeff = _phi_coefficients(p)
    n = math.floor(y)
    arg = -(y - n)
    if isinstance(rho, Fraction):
        inner = phi_rational(p.lam, p.mu, rho.numerator, rho.denominator, arg)
    else:
        inner_tol = tol / max(1.0, abs(float(coeff)))
        inner = phi_series(p.lam, p.mu, rho, arg, inner_tol).value
    return n + base + coeff * inner


class LimitKind(enum.Enum):
    RATIONAL_CYCLE = "rational_cycle"
    PLATEAU_RIGHT_ENDPOINT = "plateau_right_endpoint"
    IRRATIONAL_CANDIDATE = "irrational_candidate"


@dataclass(frozen=True)
class LimitClass:
    """Classification of the limit set, with the solver result attached.

    ``resolved`` is always True for the two rational kinds.  For the
    irrational candidate it is True only when the enclosure width fell
    below the requested tolerance; irrationality itself is never asserted
    from finite data.
    """

    kind: LimitKind
    p: Optional[int]
    q: Optional[int]
    enclosure: Optional[tuple[Fraction, Fraction]]
    resolved: bool
    solve: RhoSolveResult


def classify(p: Params, max_q: int = 1000, tol: float = 1e-10) -> LimitClass:
    """Decide which limit-set case the parameters fall in.

    Exact plateau membership with the offset strictly below the upper
    endpoint gives a cycle; exact equality with the upper endpoint gives
    the degenerate case; otherwise the rotation number is enclosed between
    consecutive deep fractions and the parameters are reported as an
    irrational candidate.
    """
    solve = rho_of_a(p, max_q=max_q, tol=tol)
    if solve.is_exact:
        kind = (
            LimitKind.PLATEAU_RIGHT_ENDPOINT
            if solve.certificate.right_endpoint
            else LimitKind.RATIONAL_CYCLE
        )
        return LimitClass(
            kind=kind,
            p=solve.rho.numerator,
            q=solve.rho.denominator,
            enclosure=None,
            resolved=True,
            solve=solve,
        )
    lo, hi = solve.certificate.lo, solve.certificate.hi
    return LimitClass(
        kind=LimitKind.IRRATIONAL_CANDIDATE,
        p=None,
        q=None,
        enclosure=(lo, hi),
        resolved=bool(hi - lo < tol),
        solve=solve,
    )


@dataclass(frozen=True)
class Cycle:
    """An attracting periodic orbit listed as phi(m/q) for m = 0..q-1."""

    points: list[Scalar]
    period: int
    winding: int


def limit_cycle(
    p: Params, pq: Optional[tuple[int, int]] = None, tol: float = 1e-9
) -> Cycle:
    """The attracting cycle of a rational-cycle parameter set.

    Points are phi(m/q) in order of m; the map sends point m to point
    (m + p) mod q.  The construction is validated by iteration: one full
    period must return each point to itself with exactly p break-point
    crossings, else ``ValidationError`` is raised.
    """
    if pq is None:
        cls = classify(p)
        if cls.kind is not LimitKind.RATIONAL_CYCLE:
            raise DomainError(f"no attracting cycle: classification is {cls.kind.value}")
        pq = (cls.p, cls.q)
    wind, period = pq
    if math.gcd(wind, period) != 1:
        raise DomainError(f"winding/period must be reduced, got {wind}/{period}")
    rho = Fraction(wind, period)
    points = [phi_eval(p, rho, Fraction(m, period), tol) for m in range(period)]
    exact = all(is_exact(pt) for pt in points)
    for m, pt in enumerate(points):
        image = eval_map(p, pt)
        target = points[(m + wind) % period]
        if exact:
            ok = image == target
        else:
            ok = abs(image - target) <= 10 * tol
        if not ok:
            raise ValidationError(
                f"cycle point {m} maps to {image}, expected {target}; "
                "series accuracy is insufficient or the class is wrong"
            )
    crossings = 0
    y = points[0]
    for _ in range(period):
        crossings += 0 if y < p.eta else 1
        y = _step(p, y)
    if crossings != wind:
        raise ValidationError(
            f"cycle crosses the break {crossings} times per period, expected {wind}"
        )
    return Cycle(points=points, period=period, winding=wind)


@dataclass(frozen=True)
class GapStats:
    smallest: float
    largest: float
    mean: float


@dataclass(frozen=True)
class CantorSample:
    """phi sampled on a uniform grid, with consecutive-gap statistics."""

    inputs: list[Scalar]
    values: list[Scalar]
    gap_stats: GapStats


def cantor_sample(p: Params, rho: RhoLike, n: int, tol: float = 1e-10) -> CantorSample:
    """Sample phi on the grid {k/n} and summarise the value gaps.

    Values must come out non-decreasing (up to series tolerance); the gap
    summary exposes the hole structure of the closure of the image.
    """
    if n < 2:
        raise DomainError("need a grid of at least 2 points")
    rho = _point_rho(rho)
    exact_grid = isinstance(rho, Fraction)
    inputs: list[Scalar] = [
        Fraction(k, n) if exact_grid else k / n for k in range(n)
    ]
    values = [phi_eval(p, rho, y, tol) for y in inputs]
    gaps = []
    for left, right in zip(values, values[1:]):
        gap = right - left
        if float(gap) < -4 * tol:
            raise ValidationError(
                f"phi sample decreased by {float(-gap)} between grid points"
            )
        gaps.append(max(0.0, float(gap)))
    stats = GapStats(
        smallest=min(gaps), largest=max(gaps), mean=sum(gaps) / len(gaps)
    )
    return CantorSample(inputs=inputs, values=values, gap_stats=stats)


def omega_limit(
    p: Params,
    x: Scalar,
    burn_in: int,
    samples: int,
    resolution: Optional[Scalar] = None,
) -> list[Scalar]:
    """Forward-orbit sample of the limit behaviour, deduplicated.

    Iterates ``burn_in`` steps, collects the next ``samples`` iterates and
    merges points closer than ``resolution`` (exact merge for exact
    arithmetic, 1e-9 for floats).  For cycle parameters this stabilises to
    the cycle; in the degenerate right-endpoint case it accumulates near
    the finite forward closure, which includes points arbitrarily close
    to the top of the band.
    """
    if burn_in < 1 or samples < 1:
        raise DomainError("burn_in and samples must be >= 1")
    if resolution is None:
        resolution = 0 if is_exact(x) and is_exact(p.a) else 1e-9
    y = x
    for _ in range(burn_in):
        y = _step(p, y)
    collected = []
    for _ in range(samples):
        collected.append(y)
        y = _step(p, y)
    collected.sort()
    merged = [collected[0]]
    for pt in collected[1:]:
        if pt - merged[-1] > resolution:
            merged.append(pt)
    return merged


def conjugacy_residual(
    p: Params, rho: RhoLike, grid_n: int, tol: float = 1e-10
) -> Scalar:
    """Worst deviation of phi(y + rho) from F(phi(y)) over the grid {k/n}.

    Zero in exact arithmetic when ``rho`` is the exact rotation number.
    Alongside the functional equation this verifies the branch criterion:
    phi maps [0, 1 - rho) strictly below the break point and the rest at
    or above it.  In float mode the branch check skips points whose phi
    value sits within 10*tol of the break, where round-off could not
    decide the side; a genuine violation raises ``ValidationError``.
    """
    if grid_n < 1:
        raise DomainError("need at least one grid point")
    rho = _point_rho(rho)
    exact_grid = isinstance(rho, Fraction)
    residual: Scalar = 0
    for k in range(grid_n):
        y = Fraction(k, grid_n) if exact_grid else k / grid_n
        fy = phi_eval(p, rho, y, tol)
        lhs = phi_eval(p, rho, y + rho, tol)
        # As y approaches the jump at 1 - rho, phi(y) approaches the break
        # point, so the branch of F at phi(y) is numerically undecidable
        # there; the proven criterion settles it from y directly.
        below = y < 1 - rho
        nf = math.floor(fy)
        if below:
            rhs = p.lam * fy + p.a + (1 - p.lam) * nf
        else:
            rhs = p.lam * p.mu * (fy - p.eta) + p.c + 1 + (1 - p.lam * p.mu) * nf
        residual = max(residual, abs(lhs - rhs))
        exact_value = is_exact(fy) and is_exact(p.eta) and exact_grid
        if (fy < p.eta) != below:
            if not exact_value and abs(float(fy) - float(p.eta)) <= 10 * tol:
                continue
            raise ValidationError(
                f"branch criterion failed at y = {y}: phi = {fy}, break = {p.eta}"
            )
    return residual
