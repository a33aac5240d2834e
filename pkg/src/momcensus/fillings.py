"""Dehn-filling slope enumeration below the length cutoff and the
volume inequalities relating parent, filled, and closed manifolds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import PreconditionError
from .intervals import Interval, RigorousComplex, TWO_PI

# drilling a shortest geodesic with a log(3)/2 tube multiplies volume by
# less than this constant (an input hypothesis recorded in reports)
DRILLING_FACTOR = Interval.from_literal("3.02")


@dataclass(frozen=True)
class CuspShape:
    """Translations of the maximal-cusp boundary torus."""

    mu: RigorousComplex
    lam: RigorousComplex

    def __post_init__(self):
        if (self.mu.conj() * self.lam).im.lo <= 0.0:
            raise PreconditionError("cusp translations must satisfy Im(lam/mu) > 0")

    def covolume(self) -> Interval:
        return (self.mu.conj() * self.lam).im

    def swapped(self) -> "CuspShape":
        """(mu, lam) -> (lam, mu); slope (p, q) corresponds to (q, p).

        The swap reverses orientation, so the covolume sign is restored
        by negating one generator (same lattice, same lengths)."""
        return CuspShape(self.lam, -self.mu)


@dataclass(frozen=True, order=True)
class Slope:
    """Coprime filling curve (p, q), normalized so the first nonzero
    coordinate is positive; (p, q) and (-p, -q) are identified."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise PreconditionError("slope (0, 0) is not a curve")
        if math.gcd(abs(self.p), abs(self.q)) != 1:
            raise PreconditionError(f"slope ({self.p}, {self.q}) is not primitive")
        if self.p < 0 or (self.p == 0 and self.q < 0):
            raise PreconditionError(f"slope ({self.p}, {self.q}) is not normalized")

    @classmethod
    def normalized(cls, p: int, q: int) -> "Slope":
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        return cls(p, q)


class SlopeFlag(Enum):
    OK = "OK"
    BORDERLINE = "BORDERLINE"


@dataclass(frozen=True)
class SlopeRecord:
    slope: Slope
    length: Interval
    flag: SlopeFlag


@dataclass(frozen=True)
class FillingBound:
    length_cutoff: Interval
    vol_parent: Interval
    vol_target: Interval


def slope_length(shape: CuspShape, s: Slope) -> Interval:
    """|p mu + q lam| on the maximal-cusp torus."""
    return abs(shape.mu * s.p + shape.lam * s.q)


def fkp_length_cutoff(vol_parent: Interval, vol_target: Interval) -> FillingBound:
    """Slopes longer than 2 pi / sqrt(1 - (vol_target/vol_parent)^(2/3))
    cannot fill to a hyperbolic manifold of volume <= vol_target.

    The cutoff is always >= 2 pi, so the original length hypothesis on
    the slopes can be dropped."""
    if vol_target.lo <= 0.0:
        raise PreconditionError(f"target volume must be positive, got {vol_target}")
    if not vol_target.hi < vol_parent.lo:
        raise PreconditionError(
            f"cutoff needs vol_target < vol_parent certifiably, got "
            f"{vol_target} vs {vol_parent}")
    ratio_pow = (vol_target / vol_parent).power_ratio(2, 3)
    cutoff = TWO_PI / (1.0 - ratio_pow).sqrt()
    cutoff = Interval(max(cutoff.lo, TWO_PI.lo), cutoff.hi)
    return FillingBound(length_cutoff=cutoff, vol_parent=vol_parent, vol_target=vol_target)


def _enumeration_box(shape: CuspShape, cutoff: Interval) -> tuple[int, int]:
    """Certified coefficient bounds: |p mu + q lam| >= |p| covol / |lam|
    (and symmetrically in q), so only |p| <= cutoff |lam| / covol and
    |q| <= cutoff |mu| / covol can be short."""
    covol = shape.covolume()
    pmax = math.floor((Interval.point(cutoff.hi) * abs(shape.lam) / covol).hi) + 1
    qmax = math.floor((Interval.point(cutoff.hi) * abs(shape.mu) / covol).hi) + 1
    return pmax, qmax


def enumerate_short_slopes(shape: CuspShape, cutoff: Interval) -> list[SlopeRecord]:
    """Every slope whose length enclosure reaches below the cutoff,
    sorted by (p, q).  Slopes straddling the cutoff are included and
    flagged BORDERLINE, never silently decided."""
    if not cutoff.is_finite():
        raise PreconditionError("cutoff must be finite")
    pmax, qmax = _enumeration_box(shape, cutoff)
    out = []
    for p in range(0, pmax + 1):
        qs = range(1, qmax + 1) if p == 0 else range(-qmax, qmax + 1)
        for q in qs:
            if math.gcd(p, abs(q)) != 1:
                continue
            s = Slope(p, q)
            length = slope_length(shape, s)
            if length.lo > cutoff.hi:
                continue
            flag = SlopeFlag.OK if length.hi <= cutoff.lo else SlopeFlag.BORDERLINE
            out.append(SlopeRecord(slope=s, length=length, flag=flag))
    out.sort(key=lambda r: (r.slope.p, r.slope.q))
    return out


def fkp_volume_lower_bound(vol_parent: Interval, min_slope_length: Interval) -> Interval:
    """(1 - (2 pi / l_min)^2)^(3/2) * vol_parent, the filled manifold's
    certified volume floor.  Vacuous (error) unless l_min > 2 pi."""
    if not min_slope_length.lo > TWO_PI.hi:
        raise PreconditionError(
            f"volume bound needs slope length certifiably above 2 pi, got "
            f"{min_slope_length}")
    factor_base = 1.0 - (TWO_PI / min_slope_length) ** 2
    factor_base = Interval(max(factor_base.lo, 0.0), max(factor_base.hi, 0.0))
    if factor_base.lo == 0.0:
        # power_ratio needs positive input; the bound degrades to >= 0
        hi = factor_base.hi
        factor = Interval(0.0, Interval(hi, hi).power_ratio(3, 2).hi if hi > 0 else 0.0)
    else:
        factor = factor_base.power_ratio(3, 2)
    return factor * vol_parent


def closed_volume_chain(cusped_lower_bound: Interval) -> Interval:
    """Volume floor for the closed manifold whose shortest-geodesic
    complement has the given cusped volume floor (assuming the embedded
    log(3)/2 tube): divide by the drilling factor 3.02."""
    if cusped_lower_bound.lo < 0.0:
        raise PreconditionError(
            f"cusped volume bound must be nonnegative, got {cusped_lower_bound}")
    return cusped_lower_bound / DRILLING_FACTOR
