"""Outward-rounded interval arithmetic.

Two real backends share one duck-typed interface:

* ``Interval``: binary64 endpoints, one-ulp outward widening after every
  rounded operation; transcendental functions are enclosed by mpmath's
  interval context at 53 bits and converted exactly.
* ``MPBackend(prec)``: mpmath interval numbers at 128 or 256 bits, used as the
  escalation path when float enclosures are too wide.

``CInterval`` builds rectangular complex intervals on top of either.
"""
from __future__ import annotations

import math
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext

_IV53 = MPIntervalContext()
_IV53.prec = 53

_dn = lambda x: math.nextafter(x, -math.inf)

# libm cos/sin are within 1 ulp; two ulps plus an absolute 2^-60 cover that
_TRIG_PAD = 2.0 ** -60
_EXT_SLACK = 1e-12       # conservative when deciding whether an extremum is inside


def _pad_lo(v):
    return max(-1.0, math.nextafter(math.nextafter(v, -2.0), -2.0) - _TRIG_PAD)


def _pad_hi(v):
    return min(1.0, math.nextafter(math.nextafter(v, 2.0), 2.0) + _TRIG_PAD)


def _fast_cos(lo, hi, shift):
    """Enclosure of cos(x - shift*pi) over [lo, hi]; extrema at x = (k + shift) * pi."""
    if hi - lo >= 6.3:
        return Interval(-1.0, 1.0)
    f = math.cos if shift == 0.0 else math.sin
    a, b = f(lo), f(hi)
    out_lo, out_hi = _pad_lo(min(a, b)), _pad_hi(max(a, b))
    k0 = math.floor((lo - _EXT_SLACK) / math.pi - shift)
    k1 = math.floor((hi + _EXT_SLACK) / math.pi - shift)
    for k in range(k0, k1 + 1):
        c = (k + shift) * math.pi
        if lo - _EXT_SLACK <= c <= hi + _EXT_SLACK:
            if k % 2 == 0:
                out_hi = 1.0
            else:
                out_lo = -1.0
    return Interval(out_lo, out_hi)
_up = lambda x: math.nextafter(x, math.inf)


def _float_enclose(q: Fraction):
    f = float(q)
    if Fraction(f) == q:
        return f, f
    if Fraction(f) < q:
        return f, _up(f)
    return _dn(f), f


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if isinstance(lo, Fraction) or isinstance(hi, Fraction):
            lo = _float_enclose(Fraction(lo))[0]
            hi = _float_enclose(Fraction(hi))[1]
        lo, hi = float(lo), float(hi)
        if not lo <= hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def enclose(cls, x) -> "Interval":
        """Enclosure of an exact real (int, Fraction, float, real QuadExt)."""
        if isinstance(x, Interval):
            return x
        if isinstance(x, (int, Fraction)):
            lo, hi = _float_enclose(Fraction(x))
            return cls(lo, hi)
        if isinstance(x, float):
            return cls(x, x)
        from .scalars import QuadExt, GaussianRational
        if isinstance(x, GaussianRational):
            if x.im != 0:
                raise ValueError("non-real scalar")
            return cls.enclose(x.re)
        if isinstance(x, QuadExt):
            if not x.is_real():
                raise ValueError("non-real scalar")
            out = cls.enclose(x.base.re)
            if x.d is not None:
                out = out + cls.enclose(x.coeff.re) * cls.enclose(x.d).sqrt()
            return out
        raise TypeError(f"cannot enclose {x!r}")

    # helpers
    @staticmethod
    def _c(o):
        if isinstance(o, Interval):
            return o
        if isinstance(o, (int, float, Fraction)):
            return Interval.enclose(o)
        return None

    def __add__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return Interval(_dn(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return Interval(_dn(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_dn(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains 0")
        qs = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_dn(min(qs)), _up(max(qs)))

    def __rtruediv__(self, o):
        return self._c(o) / self

    def sqr(self):
        if self.lo >= 0:
            return Interval(_dn(self.lo * self.lo), _up(self.hi * self.hi))
        if self.hi <= 0:
            return Interval(_dn(self.hi * self.hi), _up(self.lo * self.lo))
        m = max(-self.lo, self.hi)
        return Interval(0.0, _up(m * m))

    def __pow__(self, n: int):
        if n == 2:
            return self.sqr()
        if n < 0:
            return Interval(1) / (self ** (-n))
        out = Interval(1)
        for _ in range(n):
            out = out * self
        return out

    def sqrt(self):
        # domain-restricted: the negative part is discarded
        if self.hi < 0:
            raise ValueError("sqrt of a negative interval")
        lo = max(self.lo, 0.0)
        return Interval(max(0.0, _dn(math.sqrt(lo))), _up(math.sqrt(self.hi)))

    def _mp(self, fn):
        r = fn(_IV53.mpf([self.lo, self.hi]))
        return Interval(float(r.a), float(r.b))

    def cos(self):
        return _fast_cos(self.lo, self.hi, 0.0)

    def sin(self):
        # sin x = cos(x - pi/2); the shift is folded into the extremum test
        return _fast_cos(self.lo, self.hi, 0.5)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    # queries
    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, (int, Fraction)):
            return Fraction(self.lo) <= x <= Fraction(self.hi)
        return self.lo <= x <= self.hi

    def overlaps(self, o) -> bool:
        return not (self.hi < o.lo or o.hi < self.lo)

    def hull(self, o):
        return Interval(min(self.lo, o.lo), max(self.hi, o.hi))

    @property
    def width(self) -> float:
        return _up(self.hi - self.lo)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def split(self):
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


class FloatBackend:
    """Interface used by generic interval formulas."""

    name = "float53"
    prec = 53

    def const(self, x):
        return Interval.enclose(x)

    def interval(self, lo, hi):
        return Interval(lo, hi)

    def cos(self, x):
        return x.cos()

    def sin(self, x):
        return x.sin()

    def sqrt(self, x):
        if not isinstance(x, Interval):
            x = Interval.enclose(x)
        return x.sqrt()

    def sqr(self, x):
        return x.sqr()

    @property
    def pi(self):
        r = _IV53.pi
        return Interval(float(r.a), float(r.b))

    @staticmethod
    def bounds(x):
        return x.lo, x.hi


class MPBackend:
    """mpmath interval backend at a fixed precision (bits)."""

    def __init__(self, prec: int = 128):
        self.ctx = MPIntervalContext()
        self.ctx.prec = prec
        self.prec = prec
        self.name = f"mp{prec}"

    def const(self, x):
        from .scalars import QuadExt, GaussianRational
        c = self.ctx
        if isinstance(x, (int,)):
            return c.mpf(x)
        if isinstance(x, Fraction):
            return c.mpf(x.numerator) / c.mpf(x.denominator)
        if isinstance(x, float):
            return c.mpf(x)
        if isinstance(x, GaussianRational):
            return self.const(x.re)
        if isinstance(x, QuadExt):
            out = self.const(x.base.re)
            if x.d is not None:
                out = out + self.const(x.coeff.re) * c.sqrt(c.mpf(x.d))
            return out
        if isinstance(x, Interval):
            return c.mpf([x.lo, x.hi])
        return x

    def interval(self, lo, hi):
        return self.ctx.mpf([lo, hi])

    def cos(self, x):
        return self.ctx.cos(x)

    def sin(self, x):
        return self.ctx.sin(x)

    def sqrt(self, x):
        x = self.const(x)
        if x.b < 0:
            raise ValueError("sqrt of a negative interval")
        if x.a < 0:
            x = self.ctx.mpf([0, x.b])
        return self.ctx.sqrt(x)

    def sqr(self, x):
        return x ** 2

    @property
    def pi(self):
        return self.ctx.pi

    @staticmethod
    def bounds(x):
        return float(x.a), float(x.b)


def backend_for(prec: int):
    if prec == 53:
        return FloatBackend()
    if prec in (128, 256):
        return MPBackend(prec)
    raise ValueError("precision must be one of 53, 128, 256")


def lo(x) -> float:
    if isinstance(x, Interval):
        return x.lo
    return float(x.a)


def hi(x) -> float:
    if isinstance(x, Interval):
        return x.hi
    return float(x.b)


def width(x) -> float:
    return hi(x) - lo(x)


class CInterval:
    """Rectangular complex interval re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        if im is None:
            im = re * 0
        self.re = re
        self.im = im

    @staticmethod
    def _c(o, like):
        if isinstance(o, CInterval):
            return o
        if isinstance(o, (int, float, Fraction)):
            return CInterval(like.re * 0 + o, like.re * 0)
        if hasattr(o, "__add__") and not isinstance(o, complex):
            # real interval
            return CInterval(o, o * 0)
        return None

    def __add__(self, o):
        o = self._c(o, self)
        return CInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CInterval(-self.re, -self.im)

    def __sub__(self, o):
        o = self._c(o, self)
        return CInterval(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o, self)
        return CInterval(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o, self)
        n = o.re * o.re + o.im * o.im
        num = self * o.conj()
        return CInterval(num.re / n, num.im / n)

    def conj(self):
        return CInterval(self.re, -self.im)

    def abs2(self):
        return _sq(self.re) + _sq(self.im)

    def real(self):
        return self.re

    def imag(self):
        return self.im

    def __repr__(self):
        return f"CInterval({self.re!r}, {self.im!r})"


def _sq(x):
    if isinstance(x, Interval):
        return x.sqr()
    return x ** 2


def enclose_complex(x, bk=None) -> CInterval:
    """Complex enclosure of an exact tower element."""
    from .scalars import lift
    bk = bk or FloatBackend()
    x = lift(x)
    return CInterval(bk.const(x.real()), bk.const(x.imag()))


def enclose(x, prec: int = 53):
    """Real enclosure of an exact scalar at the requested precision."""
    return backend_for(prec).const(x) if prec != 53 else Interval.enclose(x)
