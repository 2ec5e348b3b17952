"""Series underlying the analytic rotation-number formulas.

Three related sums are evaluated here, always for slopes ``0 < lam < 1``,
``mu > 0`` and a rotation target ``rho`` in (0, 1):

* ``sigma``: sum over k >= 1 of (floor((k+1) rho) - floor(k rho))
  * lam^k * mu^floor(k rho).  Converges exactly when lam * mu^rho < 1.
* ``psi``: the double sum over k >= 1, 1 <= h <= k rho of lam^k mu^h,
  equal to lam * mu * sigma / (1 - lam).
* ``phi``: the double sum over k >= 0, 0 <= l < k rho + y of lam^k mu^l,
  with the convention that an empty inner range contributes zero.

For rational rho = p/q the sums telescope over one period and admit exact
closed forms (including the left limit of sigma as rho increases to p/q);
with Fraction inputs these are evaluated in exact rational arithmetic.
For general targets the sums are truncated with a certified geometric (or
polynomial-geometric) tail bound, returned alongside the value.

Floor and ceiling evaluations use exact integer arithmetic whenever rho is
a Fraction; a float rho is taken at face value, so its floor pattern is
that of the given binary number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ConvergenceError, DomainError
from .params import Scalar, is_exact

# Refuse certified truncation when the tail ratio is this close to 1: the
# required number of terms would exceed ~10^7.
MAX_RATIO = 1.0 - 2.0**-20


@dataclass(frozen=True)
class RhoApprox:
    """A rotation value known only up to ``radius``."""

    value: Scalar
    radius: Scalar = 0.0


RhoLike = Union[Fraction, float, RhoApprox]


@dataclass(frozen=True)
class SeriesResult:
    """A truncated (or exact) series value.

    ``tail_bound`` certifies |true - value| up to arithmetic round-off; it
    is zero when a closed form was used.
    """

    value: Scalar
    tail_bound: float
    terms_used: int


def r_bound(lam: Scalar, mu: Scalar) -> Scalar:
    """Upper end of the admissible rotation-number range, in (0, 1].

    Equals 1 for lam * mu <= 1 and -log(lam)/log(mu) otherwise.  The
    contractive case is returned exactly; the expanding case is a float.
    """
    if not 0 < lam < 1:
        raise DomainError(f"need 0 < lambda < 1, got {lam}")
    if not mu > 0:
        raise DomainError(f"need mu > 0, got {mu}")
    if lam * mu <= 1:
        return Fraction(1) if is_exact(lam) and is_exact(mu) else 1.0
    return -math.log(lam) / math.log(mu)


def _point_rho(rho: RhoLike) -> Union[Fraction, float]:
    if isinstance(rho, RhoApprox):
        if rho.radius > 0:
            raise DomainError(
                "series need a point rotation value; an enclosure of radius "
                f"{rho.radius} cannot fix the floor pattern"
            )
        return rho.value
    return rho


def _floor_fn(rho: Union[Fraction, float]) -> Callable[[int], int]:
    if isinstance(rho, Fraction):
        num, den = rho.numerator, rho.denominator
        return lambda k: (k * num) // den
    return lambda k: math.floor(k * rho)


def feasible_fraction(lam: Scalar, mu: Scalar, p: int, q: int) -> bool:
    """Decide lam^q * mu^p < 1, i.e. whether p/q lies below the range end.

    A float log comparison decides clear cases; near-ties are settled by
    promoting the inputs to exact rationals (every float is one), so the
    answer is exact in both numeric modes.
    """
    lam_f, mu_f = float(lam), float(mu)
    t = q * math.log(lam_f) + p * math.log(mu_f)
    margin = 1e-12 + 1e-15 * (q * abs(math.log(lam_f)) + p * abs(math.log(mu_f)))
    if t < -margin:
        return True
    if t > margin:
        return False
    return Fraction(lam) ** q * Fraction(mu) ** p < 1


def _tail_ratio(lam: Scalar, mu: Scalar, rho: Union[Fraction, float]) -> float:
    if float(mu) > 1.0:
        return float(lam) * float(mu) ** float(rho)
    return float(lam)


def _geometric_terms(ratio: float, guard: float, tol: float) -> int:
    """Smallest k with guard * ratio^(k+1) / (1 - ratio) <= tol."""
    if not ratio < MAX_RATIO:
        raise ConvergenceError(
            f"tail ratio {ratio!r} is too close to 1; certified truncation "
            "would need more than ~10^7 terms"
        )
    target = tol * (1.0 - ratio) / guard
    if target >= 1.0:
        return 4
    return max(4, math.ceil(math.log(target) / math.log(ratio)))


def sigma_series(
    lam: Scalar, mu: Scalar, rho: RhoLike, tol: float = 1e-10
) -> SeriesResult:
    """Truncated evaluation of ``sigma`` with a certified tail bound.

    The k-th term is at most max(1, mu) * (lam * mu^rho)^k for mu > 1 and
    at most lam^k otherwise, so the tail after the computed cutoff is
    geometric and bounded by ``tol``.
    """
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    rho = _point_rho(rho)
    if not 0 < rho < 1:
        raise DomainError(f"need 0 < rho < 1, got {rho}")
    ratio = _tail_ratio(lam, mu, rho)
    guard = max(1.0, float(mu))
    cutoff = _geometric_terms(ratio, guard, tol)
    fl = _floor_fn(rho)

    total = 0 * lam  # zero of the working arithmetic type
    w = lam  # lam^k * mu^floor(k rho), starting at k = 1
    f = 0
    for k in range(1, cutoff + 1):
        f_next = fl(k + 1)
        if f_next > f:
            total += w
        w *= lam
        if f_next > f:
            w *= mu
            f = f_next
        if w == 0.0 and not is_exact(w):
            break
    tail = guard * ratio ** (cutoff + 1) / (1.0 - ratio)
    return SeriesResult(total, tail, cutoff)


def _pow_qp(lam: Scalar, mu: Scalar, p: int, q: int) -> Scalar:
    """lam^q * mu^p via interleaved products, avoiding float overflow."""
    w = 1 * lam / lam  # one, in the working type
    f = 0
    for k in range(1, q + 1):
        w *= lam
        f_next = (k * p) // q
        if f_next > f:
            w *= mu
            f = f_next
    return w


def _check_fraction(lam: Scalar, mu: Scalar, p: int, q: int) -> tuple[int, int]:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise DomainError("p and q must be integers")
    if not 0 < p < q:
        raise DomainError(f"need 0 < p < q, got p = {p}, q = {q}")
    if math.gcd(p, q) != 1:
        raise DomainError(f"p/q must be reduced, got {p}/{q}")
    if not feasible_fraction(lam, mu, p, q):
        raise DomainError(
            f"{p}/{q} is not below the admissible rotation range for "
            f"lambda = {lam}, mu = {mu}"
        )
    return p, q


def _sigma_closed(lam: Scalar, mu: Scalar, p: int, q: int) -> tuple[Scalar, Scalar]:
    """One-period numerator of sigma at p/q together with lam^q * mu^p."""
    num = 0 * lam
    w = lam
    f = 0
    for k in range(1, q + 1):
        f_next = ((k + 1) * p) // q
        jump = f_next > f
        if jump:
            num += w
        if k < q:
            w *= lam
            if jump:
                w *= mu
                f = f_next
    return num, w


def sigma_rational(lam: Scalar, mu: Scalar, p: int, q: int) -> Scalar:
    """Exact value of ``sigma`` at the reduced rational p/q.

    The full series telescopes over one period of length q, giving a
    finite sum divided by 1 - lam^q * mu^p.  Exact for Fraction inputs.
    """
    p, q = _check_fraction(lam, mu, p, q)
    num, power = _sigma_closed(lam, mu, p, q)
    return num / (1 - power)


def sigma_left_limit(lam: Scalar, mu: Scalar, p: int, q: int) -> Scalar:
    """Limit of ``sigma`` as rho increases to p/q; strictly below sigma(p/q)."""
    p, q = _check_fraction(lam, mu, p, q)
    num, power = _sigma_closed(lam, mu, p, q)
    sigma = num / (1 - power)
    return sigma - (power / (lam * mu)) * (1 - lam) / (1 - power)


def psi(lam: Scalar, mu: Scalar, rho: RhoLike, tol: float = 1e-10) -> SeriesResult:
    """The double sum over k >= 1, 1 <= h <= k*rho of lam^k mu^h.

    Computed through the identity psi = lam * mu * sigma / (1 - lam); the
    literal double sum is kept to the test suite as an oracle.
    """
    rho = _point_rho(rho)
    if isinstance(rho, Fraction):
        value = sigma_rational(lam, mu, rho.numerator, rho.denominator)
        res = SeriesResult(value, 0.0, rho.denominator)
    else:
        res = sigma_series(lam, mu, rho, tol)
    factor = lam * mu / (1 - lam)
    return SeriesResult(factor * res.value, float(factor) * res.tail_bound, res.terms_used)


def _count_below(t: Scalar) -> int:
    """Number of integers l with 0 <= l < t."""
    return max(0, math.ceil(t))


def _poly_geom_tail(cutoff: int, ratio: float, m_shift: int) -> float:
    """Upper bound for sum over k > cutoff of (k + m_shift) * ratio^k."""
    head = ratio ** (cutoff + 1)
    return head * (
        ((cutoff + 1) - cutoff * ratio) / (1.0 - ratio) ** 2
        + m_shift / (1.0 - ratio)
    )


def phi_series(
    lam: Scalar, mu: Scalar, rho: RhoLike, y: Scalar, tol: float = 1e-10
) -> SeriesResult:
    """Truncated evaluation of ``phi`` at offset ``y``.

    The inner sums have at most k*rho + y + 1 terms, so every term is
    bounded by (k + M) * C * r^k with r = lam * mu^rho for mu > 1 and
    r = lam otherwise; the polynomial-geometric tail is certified.
    Works in exact arithmetic for Fraction inputs (partial sums are then
    exact, only the tail bound is a float).
    """
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    rho = _point_rho(rho)
    if not 0 < rho < 1:
        raise DomainError(f"need 0 < rho < 1, got {rho}")
    ratio = _tail_ratio(lam, mu, rho)
    if not ratio < MAX_RATIO:
        raise ConvergenceError(
            f"lam * mu^rho = {ratio!r} is too close to 1 for certified truncation"
        )
    m_shift = max(1, math.ceil(float(y)) + 1)
    const = 1.0 if float(mu) <= 1.0 or float(y) <= 0.0 else float(mu) ** float(y)
    cutoff = _geometric_terms(ratio, const * (m_shift + 2), tol)
    while const * _poly_geom_tail(cutoff, ratio, m_shift) > tol:
        cutoff += 8
        if cutoff > 10**7:
            raise ConvergenceError("tail bound not reachable within ~10^7 terms")

    exact_args = isinstance(rho, Fraction) and is_exact(y)
    one = 1 * lam / lam
    count = _count_below(y if exact_args else float(y))
    # term = lam^k * (inner sum), u = lam^k * mu^count; both stay bounded,
    # so no intermediate overflow even when mu**count alone would blow up.
    u = one * mu**count
    term = sum(mu**j for j in range(count)) * one if count else 0 * lam
    total = term
    for k in range(1, cutoff + 1):
        t = k * rho + y if exact_args else k * float(rho) + float(y)
        count_next = _count_below(t)
        if count_next > count:  # the inner range gains one index per step at most
            term = lam * term + lam * u
            u = lam * u * mu
            count = count_next
        else:
            term = lam * term
            u = lam * u
        total += term
    tail = const * _poly_geom_tail(cutoff, ratio, m_shift)
    return SeriesResult(total, tail, cutoff + 1)


def phi_rational(lam: Scalar, mu: Scalar, p: int, q: int, y: Scalar) -> Scalar:
    """Exact closed form of ``phi`` at the rational rotation value p/q.

    Splitting the outer index as k = j*q + i, the inner count grows by
    exactly p per period, so each residue class i sums to a geometric
    series in lam^q * mu^p (plus a polynomial factor when mu == 1).  Exact
    for Fraction inputs; the ceiling pattern uses exact arithmetic whenever
    ``y`` is a Fraction or integer.
    """
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if not 0 < p < q:
        raise DomainError(f"need 0 < p/q < 1, got {p}/{q}")
    if not feasible_fraction(lam, mu, p, q):
        raise ConvergenceError(
            f"lam^q * mu^p >= 1 at {p}/{q}; the double sum diverges"
        )
    one = 1 * lam / lam
    x1 = _pow_qp(lam, mu, p, q)
    x0 = lam**q
    exact_y = is_exact(y)

    def ceil_at(i: int) -> int:
        if exact_y:
            return math.ceil(Fraction(i * p, q) + y)
        return math.ceil(i * p / q + float(y))

    total = 0 * lam
    li = one  # lam^i
    c_i = ceil_at(0)
    w = one * mu**c_i  # lam^i * mu^(c_i); bounded, unlike mu**c_i alone
    for i in range(q):
        if i > 0:
            c_next = ceil_at(i)
            li = li * lam
            w = w * lam * (mu if c_next > c_i else one)
            c_i = c_next
        j0 = 0 if c_i >= 0 else (-c_i + p - 1) // p
        if mu == 1:
            # inner sums count their indices: j*p + c_i terms at depth j
            g1 = x0**j0 * (j0 - (j0 - 1) * x0) / (1 - x0) ** 2
            total += li * (p * g1 + c_i * x0**j0 / (1 - x0))
        else:
            total += (w * x1**j0 / (1 - x1) - li * x0**j0 / (1 - x0)) / (mu - 1)
    return total
