"""Directed-rounding interval arithmetic and rectangle complex enclosures.

All endpoint arithmetic is IEEE double arithmetic pushed outward with
``math.nextafter``.  The exactly-rounded operations (+, -, *, /, sqrt)
get one outward step; libm transcendentals (exp, log, sin, cos, atan2,
acos) get three outward steps, which covers the <= 2 ulp worst-case
error of every libm in common use.  No fast-math, no FMA assumptions.

Every operation returns an interval containing the exact image of its
operand intervals.  Domain violations raise ``IntervalDomainError``
instead of silently widening.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import IntervalDomainError, UncertifiableError

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down3(x: float) -> float:
    return math.nextafter(math.nextafter(math.nextafter(x, -_INF), -_INF), -_INF)


def _up3(x: float) -> float:
    return math.nextafter(math.nextafter(math.nextafter(x, _INF), _INF), _INF)


def _frac_to_lo(f: Fraction) -> float:
    """Largest double <= f."""
    x = float(f)
    if not math.isfinite(x):
        return x if x < 0 else math.nextafter(_INF, 0.0)
    return x if Fraction(x) <= f else _down(x)


def _frac_to_hi(f: Fraction) -> float:
    """Smallest double >= f."""
    x = float(f)
    if not math.isfinite(x):
        return x if x > 0 else -math.nextafter(_INF, 0.0)
    return x if Fraction(x) >= f else _up(x)


class Interval:
    """Closed interval [lo, hi] with outward-rounded arithmetic.

    Instances are immutable values; every operation is pure.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi) or lo > hi:
            raise IntervalDomainError(f"invalid interval bounds [{lo!r}, {hi!r}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def point(cls, x: float) -> "Interval":
        """The degenerate interval [x, x]; x is taken as exact."""
        return cls(x, x)

    @classmethod
    def from_literal(cls, text: str) -> "Interval":
        """Tight enclosure of a decimal literal.

        Exactly representable decimals ("0.5", "3") come back as points;
        everything else is the nearest double widened one ulp outward.
        """
        f = Fraction(text)
        x = float(f)
        if math.isfinite(x) and Fraction(x) == f:
            return cls(x, x)
        return cls(_frac_to_lo(f), _frac_to_hi(f))

    @classmethod
    def from_fraction(cls, f: Fraction) -> "Interval":
        return cls(_frac_to_lo(f), _frac_to_hi(f))

    @classmethod
    def from_midrad(cls, mid: Fraction, rad: Fraction) -> "Interval":
        """Enclosure of [mid - rad, mid + rad] with exact rational endpoints."""
        if rad < 0:
            raise IntervalDomainError("negative radius")
        return cls(_frac_to_lo(mid - rad), _frac_to_hi(mid + rad))

    @classmethod
    def hull(cls, *members: "Interval") -> "Interval":
        return cls(min(m.lo for m in members), max(m.hi for m in members))

    # -- structure -------------------------------------------------------

    @property
    def mid(self) -> float:
        if self.lo == -_INF or self.hi == _INF:
            return 0.0
        return self.lo + 0.5 * (self.hi - self.lo)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        if not self.overlaps(other):
            raise IntervalDomainError(f"disjoint intervals {self} and {other}")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def certainly_positive(self) -> bool:
        return self.lo > 0.0

    def certainly_le(self, bound: float) -> bool:
        return self.hi <= bound

    def certainly_gt(self, bound: float) -> bool:
        return self.lo > bound

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, int):
            # exact when |x| < 2**53; widen otherwise
            f = float(x)
            return Interval(f, f) if int(f) == x else Interval(_down(f), _up(f))
        if isinstance(x, float):
            return Interval(x, x)
        raise TypeError(f"cannot mix Interval with {type(x).__name__}")

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p1, p2 = self.lo * o.lo, self.lo * o.hi
        p3, p4 = self.hi * o.lo, self.hi * o.hi
        return Interval(_down(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise IntervalDomainError(f"division by interval containing zero: {o}")
        p1, p2 = self.lo / o.lo, self.lo / o.hi
        p3, p4 = self.hi / o.lo, self.hi / o.hi
        return Interval(_down(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("use power_ratio for non-integer exponents")
        if n == 0:
            return Interval(1.0, 1.0)
        if n < 0:
            return 1.0 / self.__pow__(-n)
        if n % 2 == 0 and self.lo < 0.0 <= self.hi:
            m = max(-self.lo, self.hi)
            hi = m
            for _ in range(n - 1):
                hi = _up(hi * m)
            return Interval(0.0, hi)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def power_ratio(self, num: int, den: int) -> "Interval":
        """x**(num/den) for certainly-positive x, via exp((num/den) log x)."""
        if self.lo <= 0.0:
            raise IntervalDomainError(f"rational power of non-positive interval {self}")
        return ((self.log() * num) / den).exp()

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise IntervalDomainError(f"sqrt of interval with negative lower bound {self}")
        # IEEE sqrt is exactly rounded: one outward step suffices
        return Interval(max(0.0, _down(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def exp(self) -> "Interval":
        return Interval(max(0.0, _down3(math.exp(self.lo))), _up3(math.exp(self.hi)))

    def log(self) -> "Interval":
        if self.lo <= 0.0:
            raise IntervalDomainError(f"log of non-positive interval {self}")
        return Interval(_down3(math.log(self.lo)), _up3(math.log(self.hi)))

    def sin(self) -> "Interval":
        return _sin_enclosure(self)

    def cos(self) -> "Interval":
        # cos(x) = sin(x + pi/2), but go direct to avoid the shift widening
        return _sin_enclosure(self + HALF_PI)

    def acos(self) -> "Interval":
        clipped = Interval(max(self.lo, -1.0), min(self.hi, 1.0))
        if clipped.lo > clipped.hi:
            raise IntervalDomainError(f"acos of interval outside [-1,1]: {self}")
        # decreasing on [-1, 1]
        return Interval(max(0.0, _down3(math.acos(clipped.hi))),
                        min(PI.hi, _up3(math.acos(clipped.lo))))

    def __str__(self):
        return self.__repr__()


def _sin_enclosure(x: Interval) -> Interval:
    """Range of sin over x.  Endpoint values plus injected extrema."""
    if x.width >= 7.0:  # more than a full period: 7 > 2*pi
        return Interval(-1.0, 1.0)
    lo_v = math.sin(x.lo)
    hi_v = math.sin(x.hi)
    out_lo = _down3(min(lo_v, hi_v))
    out_hi = _up3(max(lo_v, hi_v))
    # inject +1 if x meets pi/2 + 2k pi, -1 if x meets -pi/2 + 2k pi
    if _meets_grid(x, HALF_PI, TWO_PI):
        out_hi = 1.0
    if _meets_grid(x, -HALF_PI, TWO_PI):
        out_lo = -1.0
    return Interval(max(-1.0, out_lo), min(1.0, out_hi))


def _meets_grid(x: Interval, offset: Interval, step: Interval) -> bool:
    """Conservatively: does x possibly contain offset + k*step for integer k?"""
    t = (x - offset) / step
    return math.floor(t.hi) >= math.ceil(t.lo)


def atan2(y: Interval, x: Interval) -> Interval:
    """Interval atan2 by corner evaluation with quadrant case analysis.

    Valid only on rectangles that avoid the branch cut (the closed
    negative real axis) and the origin; anything else raises, because a
    shape rectangle straddling the cut is geometrically degenerate.
    """
    upper = y.lo > 0.0
    lower = y.hi < 0.0
    right = x.lo > 0.0
    if not (upper or lower or right):
        raise IntervalDomainError(
            f"argument of rectangle meeting the branch cut or origin: re={x}, im={y}")
    corners = (math.atan2(y.lo, x.lo), math.atan2(y.lo, x.hi),
               math.atan2(y.hi, x.lo), math.atan2(y.hi, x.hi))
    # atan2 is monotone along every edge of such a rectangle, so the
    # extrema sit at corners
    return Interval(_down3(min(corners)), _up3(max(corners)))


# -- constants -------------------------------------------------------------

PI = Interval(math.pi, _up(math.pi))          # pi is strictly between these
TWO_PI = PI * 2
HALF_PI = PI / 2
SQRT2 = Interval.point(2.0).sqrt()
SQRT3 = Interval.point(3.0).sqrt()
ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


class RigorousComplex:
    """Axis-aligned rectangle enclosure of a complex number.

    The true value lies in re x im.  Immutable.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Interval, im: Interval):
        if not isinstance(re, Interval) or not isinstance(im, Interval):
            raise TypeError("RigorousComplex takes two Intervals")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("RigorousComplex is immutable")

    @classmethod
    def point(cls, z: complex) -> "RigorousComplex":
        return cls(Interval.point(z.real), Interval.point(z.imag))

    @classmethod
    def from_literals(cls, re_text: str, im_text: str) -> "RigorousComplex":
        return cls(Interval.from_literal(re_text), Interval.from_literal(im_text))

    def __eq__(self, other):
        return (isinstance(other, RigorousComplex)
                and self.re == other.re and self.im == other.im)

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"({self.re} + {self.im} i)"

    @staticmethod
    def _coerce(x) -> "RigorousComplex":
        if isinstance(x, RigorousComplex):
            return x
        if isinstance(x, (int, float)):
            return RigorousComplex(Interval._coerce(x), ZERO)
        if isinstance(x, complex):
            return RigorousComplex.point(x)
        if isinstance(x, Interval):
            return RigorousComplex(x, ZERO)
        raise TypeError(f"cannot mix RigorousComplex with {type(x).__name__}")

    def __neg__(self):
        return RigorousComplex(-self.re, -self.im)

    def __add__(self, other):
        o = self._coerce(other)
        return RigorousComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return RigorousComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RigorousComplex(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "RigorousComplex":
        return RigorousComplex(self.re, -self.im)

    def abs_squared(self) -> Interval:
        s = self.re ** 2 + self.im ** 2
        # |z|^2 >= 0 exactly; drop the sub-ulp negative slack rounding adds
        return Interval(max(0.0, s.lo), s.hi)

    def __abs__(self) -> Interval:
        return self.abs_squared().sqrt()

    def __truediv__(self, other):
        o = self._coerce(other)
        d = o.abs_squared()
        if d.lo <= 0.0:
            raise IntervalDomainError(f"division by rectangle possibly containing zero: {o}")
        n = self * o.conj()
        return RigorousComplex(n.re / d, n.im / d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def arg(self) -> Interval:
        return atan2(self.im, self.re)

    def widened(self, pad: float) -> "RigorousComplex":
        """Both coordinates widened by pad in each direction (pad >= 0)."""
        if pad < 0:
            raise IntervalDomainError("negative widening pad")
        return RigorousComplex(Interval(_down(self.re.lo - pad), _up(self.re.hi + pad)),
                               Interval(_down(self.im.lo - pad), _up(self.im.hi + pad)))


def certified_le(a: Interval, b: Interval, what: str = "comparison") -> bool:
    """True if a <= b certainly, False if a > b certainly, else raise."""
    if a.hi <= b.lo:
        return True
    if a.lo > b.hi:
        return False
    raise UncertifiableError(f"uncertifiable {what}: {a} vs {b}")
