"""The offset-versus-rotation-number boundary and its inversion.

For a fixed quadruple, the offset value at which the map's rotation number
equals a target ``rho`` is an explicit function of the series ``sigma``;
it is strictly increasing and right continuous in ``rho``, jumping at
every rational.  Each reduced fraction p/q below the admissible range end
therefore owns a closed plateau of offsets on which the rotation number
sticks at p/q, with endpoints given by the left limit and the value of
``sigma`` at p/q.

Inverting the staircase for a given offset walks the Stern-Brocot tree:
the mediant of the current bracket is the unique smallest-denominator
fraction strictly between the bracket ends, so testing the offset against
the mediant's plateau either resolves the rotation number exactly or
certifies that no fraction with denominator up to the cap contains it,
leaving a rational enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .params import Params, QuadParams, Scalar, is_exact
from .series import (
    RhoApprox,
    RhoLike,
    _point_rho,
    feasible_fraction,
    sigma_left_limit,
    sigma_rational,
    sigma_series,
)

# Float comparisons against plateau endpoints fall back to exact rational
# arithmetic when the gap is below this; misclassifying a boundary would
# flip the limit-set case.
EXACT_FALLBACK_GAP = 1e-12


@dataclass(frozen=True)
class Plateau:
    """Closed offset interval [a_lo, a_hi] on which the rotation number is p/q."""

    p: int
    q: int
    a_lo: Scalar
    a_hi: Scalar


@dataclass(frozen=True)
class PlateauMembership:
    """Certificate: the queried offset lies inside ``plateau``.

    ``right_endpoint`` marks exact equality with the upper endpoint, where
    the limit set degenerates (empty limit set, finite forward closure).
    """

    plateau: Plateau
    right_endpoint: bool = False


@dataclass(frozen=True)
class Enclosure:
    """Certificate: the rotation number lies strictly between two fractions
    and no fraction with denominator <= the search cap has a plateau
    containing the offset."""

    lo: Fraction
    hi: Fraction


Certificate = Union[PlateauMembership, Enclosure]


@dataclass(frozen=True)
class RhoSolveResult:
    rho: Union[Fraction, RhoApprox]
    certificate: Certificate

    @property
    def is_exact(self) -> bool:
        return isinstance(self.rho, Fraction)

    @property
    def value(self) -> Scalar:
        """Point value: the fraction itself, or the enclosure midpoint."""
        return self.rho if self.is_exact else self.rho.value

    @property
    def width(self) -> Scalar:
        return 0 if self.is_exact else 2 * self.rho.radius


def _a_from_sigma(quad: QuadParams, sigma: Scalar) -> Scalar:
    lam, mu, b, c = quad.lam, quad.mu, quad.b, quad.c
    return (1 - lam) * (b + (mu * b - c) * sigma) / (1 + (mu - 1) * sigma)


def a_of_rho(quad: QuadParams, rho: RhoLike, tol: float = 1e-10) -> Scalar:
    """Offset at which the rotation number equals ``rho``.

    Exact for Fraction ``rho`` with exact quadruples; otherwise evaluated
    through the truncated series, with the requested tolerance passed
    through (the boundary is a monotone Moebius transform of ``sigma``,
    with derivative below (b - c)(1 - lam*mu)^2/(1 - lam)).
    """
    rho = _point_rho(rho)
    if isinstance(rho, Fraction):
        if not feasible_fraction(quad.lam, quad.mu, rho.numerator, rho.denominator):
            raise DomainError(f"rho = {rho} is not inside the admissible range")
        sigma = sigma_rational(quad.lam, quad.mu, rho.numerator, rho.denominator)
    else:
        if not 0 < rho < 1:
            raise DomainError(f"need 0 < rho < 1, got {rho}")
        if float(quad.mu) > 1.0:
            t = math.log(float(quad.lam)) + float(rho) * math.log(float(quad.mu))
            if t >= 0:
                raise DomainError(
                    f"rho = {rho} is at or above the admissible range end"
                )
        sigma = sigma_series(quad.lam, quad.mu, rho, tol).value
    return _a_from_sigma(quad, sigma)


def delta_of_rho(lam: Scalar, mu: Scalar, rho: RhoLike, tol: float = 1e-10) -> Scalar:
    """Boundary offset in the normalized coordinate (b = 1, c = 0 family).

    Satisfies a_of_rho(quad, rho) == delta_of_rho(...)*(b - c) + c*(1 - lam).
    """
    quad = QuadParams(lam, mu, 1, 0)
    return a_of_rho(quad, rho, tol)


def plateau(quad: QuadParams, p: int, q: int) -> Plateau:
    """Offset plateau of the reduced fraction p/q below the range end."""
    sig_hi = sigma_rational(quad.lam, quad.mu, p, q)
    sig_lo = sigma_left_limit(quad.lam, quad.mu, p, q)
    return Plateau(p=p, q=q, a_lo=_a_from_sigma(quad, sig_lo), a_hi=_a_from_sigma(quad, sig_hi))


def _exact_quad(quad: QuadParams) -> QuadParams:
    return QuadParams(
        Fraction(quad.lam), Fraction(quad.mu), Fraction(quad.b), Fraction(quad.c)
    )


def _locate(quad: QuadParams, a: Scalar, plat: Plateau) -> tuple[int, bool]:
    """Position of ``a`` relative to a plateau: (-1 below, 0 inside, 1 above).

    The second component flags exact equality with the upper endpoint.  In
    float mode, comparisons closer than ``EXACT_FALLBACK_GAP`` to either
    endpoint are re-decided in exact rational arithmetic (floats promote
    exactly), so boundary classification never rests on round-off.
    """
    exact = is_exact(a) and is_exact(plat.a_lo) and is_exact(plat.a_hi)
    if not exact:
        lo, hi = float(plat.a_lo), float(plat.a_hi)
        af = float(a)
        if min(abs(af - lo), abs(af - hi)) < EXACT_FALLBACK_GAP:
            exact_plat = plateau(_exact_quad(quad), plat.p, plat.q)
            return _locate(_exact_quad(quad), Fraction(a), exact_plat)
        a, plat = af, Plateau(plat.p, plat.q, lo, hi)
    if a < plat.a_lo:
        return -1, False
    if a > plat.a_hi:
        return 1, False
    return 0, a == plat.a_hi


def rho_of_a(p: Params, max_q: int = 1000, tol: float = 1e-10) -> RhoSolveResult:
    """Invert the monotone offset-to-rotation-number staircase at ``p.a``.

    Mediant search from the bracket (0/1, 1/1).  At each mediant m the
    offset is tested against m's plateau: below means the answer is left
    of m, above means right, inside resolves exactly.  Mediants at or
    beyond the admissible range end (possible when the steep branch
    expands) have no plateau and are treated as "offset below".  When the
    mediant denominator would exceed ``max_q`` the bracket is returned as
    an enclosure; its interior provably contains the rotation number and
    meets no plateau of denominator <= max_q.
    """
    if max_q < 2:
        raise DomainError("max_q must be at least 2")
    quad = p.quad
    lo, hi = Fraction(0, 1), Fraction(1, 1)
    while True:
        mid = Fraction(lo.numerator + hi.numerator, lo.denominator + hi.denominator)
        if mid.denominator > max_q:
            half = (hi - lo) / 2
            centre = lo + half
            if is_exact(p.a):
                rho = RhoApprox(centre, half)
            else:
                rho = RhoApprox(float(centre), float(half))
            return RhoSolveResult(rho=rho, certificate=Enclosure(lo=lo, hi=hi))
        if not feasible_fraction(quad.lam, quad.mu, mid.numerator, mid.denominator):
            hi = mid  # mid is at or above the range end, so the answer is left of it
            continue
        plat = plateau(quad, mid.numerator, mid.denominator)
        side, at_right = _locate(quad, p.a, plat)
        if side < 0:
            hi = mid
        elif side > 0:
            lo = mid
        else:
            return RhoSolveResult(
                rho=mid, certificate=PlateauMembership(plat, right_endpoint=at_right)
            )


def farey_fractions(max_q: int) -> list[Fraction]:
    """All reduced fractions in (0, 1) with denominator <= max_q, sorted."""
    out = [
        Fraction(p, q)
        for q in range(2, max_q + 1)
        for p in range(1, q)
        if math.gcd(p, q) == 1
    ]
    return sorted(set(out))
