"""Rigorous Lobachevsky function and ideal-tetrahedron volumes.

The Lobachevsky function L(t) = -integral_0^t log|2 sin u| du is odd and
pi-periodic, with global maximum at t = pi/6.  After reducing the
argument modulo pi we evaluate the absolutely convergent series

    L(t) = t - t log(2t) + sum_{k>=1} c_k t^(2k+1),
    c_k  = 4^k |B_2k| / (2 (2k)! k (2k+1)),

whose coefficients are exact rationals (the pi powers of zeta(2k)
cancel).  The consecutive-term ratio is below (t/pi)^2, so the tail
after the last kept term is geometrically bounded and added as a
certified one-sided interval.  On [0, 1.7] thirty-odd terms leave a
tail below 1e-19.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateShapeError,
    IntervalDomainError,
    InternalInconsistencyError,
    PreconditionError,
    UncertifiableError,
)
from .intervals import Interval, PI, RigorousComplex, ZERO

_SERIES_TERMS = 32
_REDUCED_LIMIT = 1.7  # reduced arguments beyond this fall back to the global range


def _bernoulli(n_max: int) -> list[Fraction]:
    """B_0 .. B_n_max by the defining recurrence, exact."""
    b = [Fraction(0)] * (n_max + 1)
    b[0] = Fraction(1)
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += Fraction(math.comb(m + 1, j)) * b[j]
        b[m] = -acc / (m + 1)
    return b


def _series_coefficients() -> list[Interval]:
    bern = _bernoulli(2 * _SERIES_TERMS)
    coeffs = []
    fact = 1
    for k in range(1, _SERIES_TERMS + 1):
        fact *= (2 * k) * (2 * k - 1)  # (2k)!
        c = Fraction(4 ** k) * abs(bern[2 * k]) / (2 * fact * k * (2 * k + 1))
        coeffs.append(Interval.from_fraction(c))
    return coeffs


_COEFFS = _series_coefficients()


def _series(x: Interval) -> Interval:
    """Series enclosure of L on x, for 0 < x.lo <= x.hi <= 1.8."""
    if x.hi > 1.8:
        raise IntervalDomainError(f"series argument out of reduced range: {x}")
    acc = x * (1.0 - (x * 2.0).log())
    x2 = x * x
    power = x * x2  # x^(2k+1)
    term = ZERO
    for c in _COEFFS:
        term = c * power
        acc = acc + term
        power = power * x2
    # remaining terms are positive with ratio < (x/pi)^2 < 1
    q = (x2 / (PI * PI)).hi
    tail_hi = term.hi * q / (1.0 - q)
    return acc + Interval(0.0, math.nextafter(tail_hi, math.inf))


def _lob_point(c: float) -> Interval:
    if c == 0.0:
        return ZERO
    if c < 0.0:
        body = _series(Interval.point(-c))
        return -body
    return _series(Interval.point(c))


PI_SIXTH = PI / 6
LOB_MAX = _series(PI_SIXTH)  # enclosure of the global maximum L(pi/6)
LOB_RANGE = Interval(-LOB_MAX.hi, LOB_MAX.hi)


def lobachevsky(theta: Interval) -> Interval:
    """Certified enclosure of the Lobachevsky function over theta."""
    if not theta.is_finite():
        raise IntervalDomainError(f"non-finite argument to lobachevsky: {theta}")
    n = round(theta.mid / math.pi)
    if abs(n) > 2 ** 50:
        return LOB_RANGE  # reduction would lose all precision
    t = theta - PI * n if n else theta
    if t.lo < -_REDUCED_LIMIT or t.hi > _REDUCED_LIMIT or t.width >= math.pi:
        return LOB_RANGE
    lo_val = _lob_point(t.lo)
    hi_val = _lob_point(t.hi)
    result = Interval.hull(lo_val, hi_val)
    # the only critical points in the reduced range are +-pi/6
    if t.hi >= PI_SIXTH.lo and t.lo <= PI_SIXTH.hi:
        result = Interval(result.lo, max(result.hi, LOB_MAX.hi))
    if t.hi >= -PI_SIXTH.hi and t.lo <= -PI_SIXTH.lo:
        result = Interval(min(result.lo, -LOB_MAX.hi), result.hi)
    return result.intersect(LOB_RANGE)


def ideal_tetra_volume(z: RigorousComplex) -> Interval:
    """Volume enclosure of the positively oriented ideal tetrahedron with
    shape parameter z: the Lobachevsky values of the three dihedral
    angles arg z, arg 1/(1-z), arg (z-1)/z, whose sum is verified to
    enclose pi."""
    if z.im.lo <= 0.0:
        raise DegenerateShapeError(
            f"shape {z} is not certifiably positively oriented")
    w2 = 1.0 / (1.0 - z)
    w3 = (z - 1.0) / z
    try:
        a1 = z.arg()
        a2 = w2.arg()
        a3 = w3.arg()
    except IntervalDomainError as exc:
        raise DegenerateShapeError(f"shape {z}: {exc}") from exc
    angle_sum = a1 + a2 + a3
    if not angle_sum.overlaps(PI):
        raise InternalInconsistencyError(
            f"dihedral angles of {z} sum to {angle_sum}, which excludes pi")
    return lobachevsky(a1) + lobachevsky(a2) + lobachevsky(a3)


@dataclass(frozen=True)
class ShapeSolution:
    """Approximate tetrahedron shapes plus a certified distance bound.

    delta bounds the distance in C^k between these shape rectangles and
    the true solution; it is consumed by widening every rectangle by
    delta.hi in both coordinates before evaluation, a conservative box
    enlargement that is strictly sound.
    """

    shapes: tuple[RigorousComplex, ...]
    delta: Interval

    def __post_init__(self):
        if self.delta.lo < 0.0:
            raise PreconditionError(f"delta must be nonnegative, got {self.delta}")


def triangulation_volume(sol: ShapeSolution) -> Interval:
    """Sum of per-tetrahedron volume enclosures, delta-widened.

    Degenerate input shapes raise naming the tetrahedron; shapes whose
    orientation becomes uncertain only after widening raise an
    uncertifiable error instead, since refining delta could rescue them.
    """
    total = ZERO
    pad = sol.delta.hi
    for idx, z in enumerate(sol.shapes):
        if z.im.lo <= 0.0:
            raise DegenerateShapeError(
                f"tetrahedron {idx}: shape {z} not certifiably positively oriented")
        zw = z.widened(pad)
        if zw.im.lo <= 0.0:
            raise UncertifiableError(
                f"tetrahedron {idx}: delta {sol.delta} makes the orientation of "
                f"{z} uncertain")
        total = total + ideal_tetra_volume(zw)
    return total
