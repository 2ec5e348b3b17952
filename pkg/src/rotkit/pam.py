"""Evaluation and iteration of the two-slope maps and their lifts.

The circle map has a natural lift to the real line.  The lift is not
globally increasing (the graph drops at the break point), but it preserves
the band of points whose fractional part lies in ``[c, b)``, is strictly
increasing there, and every orbit falls into the band after finitely many
steps.  Bridging the lift across the complement of the band with straight
segments gives a strictly increasing completion; its orbit averages define
the rotation number and give the brute-force estimate used as an oracle
against the analytic solver.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, IterationLimitError
from .params import Params, Scalar, is_exact

ENTER_BAND_CAP = 10**6


class Branch(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def branch(p: Params, x: Scalar) -> Branch:
    """Branch taken at fractional part of ``x``; ties at the break go right."""
    return Branch.LEFT if x - math.floor(x) < p.eta else Branch.RIGHT


def eval_map(p: Params, x: Scalar) -> Scalar:
    """Value of the interval map at ``x`` in [0, 1).

    ``lam*x + a`` below the break point, ``lam*mu*(x - eta) + c`` from the
    break point on.  The image is again inside [0, 1).
    """
    if not 0 <= x < 1:
        raise DomainError(f"map argument must lie in [0, 1), got {x}")
    if x < p.eta:
        return p.lam * x + p.a
    return p.lam * p.mu * (x - p.eta) + p.c


def lift_eval(p: Params, x: Scalar) -> Scalar:
    """Lift of the map to the real line.

    Satisfies F(x + 1) = F(x) + 1 and frac(F(x)) = f(frac(x)); crossing the
    break point adds one full turn.
    """
    n = math.floor(x)
    t = x - n
    if t < p.eta:
        return p.lam * t + p.a + n
    return p.lam * p.mu * (t - p.eta) + p.c + 1 + n


def in_band(p: Params, x: Scalar) -> bool:
    """True when the fractional part of ``x`` lies in the band [c, b)."""
    t = x - math.floor(x)
    return p.c <= t < p.b


def lift_monotone_eval(p: Params, x: Scalar) -> Scalar:
    """Strictly increasing completion of the lift.

    Equals the lift whenever frac(x) is in [c, b); on each gap
    [b + n, c + n + 1) it is the straight segment joining the lift's
    one-sided values at the gap endpoints.  When b = 1 and c = 0 the band
    is the whole line and this is the lift itself.
    """
    n = math.floor(x)
    t = x - n
    if p.c <= t < p.b:
        return lift_eval(p, x)
    if t >= p.b:
        seg_n, s = n, t
    else:  # t < c, so x sits in the gap that started one period earlier
        seg_n, s = n - 1, t + 1
    f_b = p.lam * p.mu * (p.b - p.eta) + p.c + 1  # left limit of the lift at b
    f_c = p.lam * p.c + p.a
    slope = (f_c + 1 - f_b) / (p.c + 1 - p.b)
    return f_b + seg_n + (s - p.b) * slope


def enter_band(p: Params, x: Scalar, cap: int = ENTER_BAND_CAP) -> tuple[int, Scalar]:
    """Iterate the lift until the fractional part enters [c, b).

    Returns the minimal step count and the lift value there.  Termination
    is guaranteed for valid parameters; exceeding ``cap`` therefore signals
    an internal inconsistency and raises ``IterationLimitError``.
    """
    y = x
    for n in range(cap + 1):
        if in_band(p, y):
            return n, y
        y = lift_eval(p, y)
    raise IterationLimitError(
        f"orbit failed to enter the invariant band within {cap} steps"
    )


@dataclass(frozen=True)
class OrbitSample:
    """Lift iterates F^k(x) for k = 0..n plus their integer parts."""

    start: Scalar
    values: list[Scalar]
    wraps: list[int]


def orbit(p: Params, x0: Scalar, n: int) -> OrbitSample:
    """Record ``n`` lift steps from ``x0``.

    Stores every iterate; for long orbits where only the endpoint matters
    use ``rotation_estimate`` which runs in constant memory.
    """
    if n < 0:
        raise DomainError("orbit length must be >= 0")
    values = [x0]
    y = x0
    for _ in range(n):
        y = lift_eval(p, y)
        values.append(y)
    return OrbitSample(start=x0, values=values, wraps=[math.floor(v) for v in values])


def rotation_estimate(p: Params, n: int, x0: Scalar | None = None) -> Scalar:
    """Brute-force rotation number estimate (F^n(x0) - x0)/n.

    Defaults to x0 = c, which lies in the invariant band where the lift is
    already strictly increasing, so the estimate deviates from the true
    rotation number by at most 1/n.  Streams in constant memory; the float
    path keeps the fractional part in [0, 1) and counts wraps exactly.
    """
    if n <= 0:
        raise DomainError("need n >= 1 iterations")
    if x0 is None:
        x0 = p.c
    start = x0 - math.floor(x0)
    if is_exact(start) and is_exact(p.lam) and is_exact(p.a) and is_exact(p.mu):
        x = start
        wraps = 0
        for _ in range(n):
            if x < p.eta:
                x = p.lam * x + p.a
            else:
                x = p.lam * p.mu * (x - p.eta) + p.c
                wraps += 1
        return (x + wraps - start) / n

    lam = float(p.lam)
    slope = float(p.lam) * float(p.mu)
    a = float(p.a)
    c = float(p.c)
    eta = float(p.eta)
    x = float(start)
    wraps = 0
    for _ in range(n):
        if x < eta:
            x = lam * x + a
        else:
            x = slope * (x - eta) + c
            wraps += 1
        if x >= 1.0:  # rounding can graze 1.0; fold it into the wrap count
            x -= 1.0
            wraps += 1
    return (x + wraps - float(start)) / n
