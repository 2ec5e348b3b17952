"""Parameter domain for the two-slope interval maps.

A map of the half-open unit interval is specified by five numbers
``(lam, mu, a, b, c)``: the left branch ``x -> lam*x + a`` runs up to the
break point ``eta = (b - a)/lam`` where it reaches height ``b``, and the
right branch ``x -> lam*mu*(x - eta) + c`` restarts at height ``c``.  The
admissible quadruples ``(lam, mu, b, c)`` form a set defined by strict and
non-strict inequalities; once the quadruple is fixed, the offset ``a``
ranges over an open interval whose endpoints this module computes.

All functions work in two numeric modes: pass ``float`` values for binary
arithmetic, or ``fractions.Fraction``/``int`` values for exact rational
arithmetic.  Comparisons are always strict, with no epsilon: boundary
behaviour matches the half-open/open intervals of the definitions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

Scalar = Union[int, float, Fraction]


def is_exact(x: Scalar) -> bool:
    """True when ``x`` carries exact rational semantics."""
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class QuadParams:
    """A validated quadruple (lam, mu, b, c).

    Invariants: 0 < lam < 1, mu > 0, 0 <= c < b <= 1 and additionally
    lam*mu <= 1 or mu*(1 - b) <= 1 - c.
    """

    lam: Scalar
    mu: Scalar
    b: Scalar
    c: Scalar


@dataclass(frozen=True)
class Params:
    """A validated quintuple: a quadruple plus the offset ``a``.

    ``eta`` and ``d`` are derived at validation time: ``eta`` is the break
    point ``(b - a)/lam`` and ``d`` is the open upper bound of the interval
    in which ``a`` may live (``a_interval``).
    """

    quad: QuadParams
    a: Scalar
    eta: Scalar
    d: Scalar

    @property
    def lam(self) -> Scalar:
        return self.quad.lam

    @property
    def mu(self) -> Scalar:
        return self.quad.mu

    @property
    def b(self) -> Scalar:
        return self.quad.b

    @property
    def c(self) -> Scalar:
        return self.quad.c


def validate_quad(lam: Scalar, mu: Scalar, b: Scalar, c: Scalar) -> QuadParams:
    """Check the quadruple inequalities and return a ``QuadParams``.

    Raises ``DomainError`` naming the first violated inequality, checked in
    the order: slope bounds, ordering of c and b, then the disjunction
    ``lam*mu <= 1 or mu*(1 - b) <= 1 - c``.
    """
    if not 0 < lam < 1:
        raise DomainError(f"need 0 < lambda < 1, got lambda = {lam}")
    if not mu > 0:
        raise DomainError(f"need mu > 0, got mu = {mu}")
    if not 0 <= c:
        raise DomainError(f"need c >= 0, got c = {c}")
    if not c < b:
        raise DomainError(f"need c < b, got c = {c}, b = {b}")
    if not b <= 1:
        raise DomainError(f"need b <= 1, got b = {b}")
    if not (lam * mu <= 1 or mu * (1 - b) <= 1 - c):
        raise DomainError(
            "need lambda*mu <= 1 or mu*(1 - b) <= 1 - c, got "
            f"lambda*mu = {lam * mu} and mu*(1 - b) = {mu * (1 - b)} > {1 - c}"
        )
    return QuadParams(lam, mu, b, c)


def d_bound(q: QuadParams) -> Scalar:
    """Open upper endpoint of the admissible ``a`` interval.

    Equals ``b - c*lam`` when ``lam*mu < 1`` and
    ``(1 - lam)*(mu*b - c)/(mu - 1)`` when ``lam*mu >= 1``; the two branch
    formulas agree at ``lam*mu == 1``.  Always exceeds ``b - b*lam``.
    """
    lam, mu, b, c = q.lam, q.mu, q.b, q.c
    if lam * mu < 1:
        return b - c * lam
    # lam*mu >= 1 with lam < 1 forces mu > 1, so no division by zero.
    return (1 - lam) * (mu * b - c) / (mu - 1)


def a_interval(q: QuadParams) -> tuple[Scalar, Scalar]:
    """The open interval ``(b - b*lam, d)`` in which the offset must lie."""
    return q.b - q.b * q.lam, d_bound(q)


def validate_params(
    lam: Scalar, mu: Scalar, a: Scalar, b: Scalar, c: Scalar
) -> Params:
    """Validate the full quintuple and return a ``Params``.

    Validation uses the interval form ``a in (b - b*lam, d)``, which is
    equivalent to the two defining offset inequalities.  Error messages
    distinguish quadruple-level failures from the offset being at or
    outside either open endpoint.
    """
    quad = validate_quad(lam, mu, b, c)
    if not a > b - b * lam:
        raise DomainError(f"need a > b - b*lambda = {b - b * lam}, got a = {a}")
    if not a < b - c * lam:
        raise DomainError(f"need a < b - c*lambda = {b - c * lam}, got a = {a}")
    d = d_bound(quad)
    if not a < d:
        raise DomainError(
            f"need (1 - lambda)*(c - mu*b) < (1 - mu)*a, i.e. a < {d}, got a = {a}"
        )
    eta = (b - a) / lam
    return Params(quad=quad, a=a, eta=eta, d=d)


def inequality_report(
    lam: Scalar, mu: Scalar, a: Scalar, b: Scalar, c: Scalar
) -> list[tuple[str, bool]]:
    """Evaluate every defining inequality and report which hold.

    Returns (label, holds) pairs in definition order.  The offset checks
    are reported against the direct two-sided forms, not the derived
    interval, so the report mirrors the definition as written.
    """
    checks = [
        ("0 < lambda < 1", bool(0 < lam < 1)),
        ("mu > 0", bool(mu > 0)),
        ("0 <= c < b <= 1", bool(0 <= c < b <= 1)),
        (
            "lambda*mu <= 1 or mu*(1 - b) <= 1 - c",
            bool(lam * mu <= 1 or mu * (1 - b) <= 1 - c),
        ),
        ("b - b*lambda < a < b - c*lambda", bool(b - b * lam < a < b - c * lam)),
        ("(1 - lambda)*(c - mu*b) < (1 - mu)*a", bool((1 - lam) * (c - mu * b) < (1 - mu) * a)),
    ]
    return checks


def delta_coord(q: QuadParams, a: Scalar) -> Scalar:
    """Affine change of offset coordinate: ``(a - c*(1 - lam))/(b - c)``.

    Maps ``b - b*lam`` to ``1 - lam`` and the upper endpoint ``d`` of the
    general family to the upper endpoint of the normalized family with
    b = 1, c = 0.
    """
    return (a - q.c * (1 - q.lam)) / (q.b - q.c)


def theta(p: Params) -> Params:
    """Project onto the normalized sub-family with b = 1 and c = 0.

    The projection keeps the slopes and replaces the offset by its
    delta-coordinate; it is idempotent and its output always validates.
    """
    return validate_params(p.lam, p.mu, delta_coord(p.quad, p.a), 1, 0)
