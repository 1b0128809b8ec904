"""Exact angles and the two evaluation contexts used by every closed-form formula.

``ExactMath`` evaluates at angles whose cosine and sine lie in the scalar
tower (multiples of pi/6 or pi/4, or an angle given by an exact cosine).
``IntervalMath`` evaluates the same formulas with validated intervals.
A formula written against the context interface runs unchanged in both modes.
"""
from __future__ import annotations

from fractions import Fraction

from .numeric.scalars import QuadExt, GaussianRational, lift, cplx, rational_sqrt, tower_sqrt
from .numeric.interval import CInterval, FloatBackend, Interval


class NotInTower(ValueError):
    pass


_COS12 = {
    0: QuadExt(1),
    2: QuadExt(0, Fraction(1, 2), 3),
    3: QuadExt(0, Fraction(1, 2), 2),
    4: QuadExt(Fraction(1, 2)),
    6: QuadExt(0),
    8: QuadExt(Fraction(-1, 2)),
    9: QuadExt(0, Fraction(-1, 2), 2),
    10: QuadExt(0, Fraction(-1, 2), 3),
    12: QuadExt(-1),
}


def _cos_k12(k: int) -> QuadExt:
    k %= 24
    if k > 12:
        k = 24 - k
    if k not in _COS12:
        raise NotInTower(f"cos({k}*pi/12) leaves the tower")
    return _COS12[k]


class PiAngle:
    """q * pi for rational q."""

    __slots__ = ("q",)

    def __init__(self, q):
        self.q = Fraction(q)

    def _o(self, o):
        if isinstance(o, PiAngle):
            return o.q
        raise TypeError("PiAngle arithmetic needs another PiAngle")

    def __add__(self, o):
        return PiAngle(self.q + self._o(o))

    def __sub__(self, o):
        return PiAngle(self.q - self._o(o))

    def __neg__(self):
        return PiAngle(-self.q)

    def __mul__(self, k):
        return PiAngle(self.q * Fraction(k))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return PiAngle(self.q / Fraction(k))

    def __eq__(self, o):
        return isinstance(o, PiAngle) and self.q == o.q

    def __lt__(self, o):
        return self.q < self._o(o)

    def __le__(self, o):
        return self.q <= self._o(o)

    def __hash__(self):
        return hash(("pi", self.q))

    def _k12(self) -> int:
        k = self.q * 12
        if k.denominator != 1:
            raise NotInTower(f"cos({self.q}*pi) leaves the tower")
        return int(k)

    def cos(self) -> QuadExt:
        return _cos_k12(self._k12())

    def sin(self) -> QuadExt:
        return _cos_k12(6 - self._k12())

    def to_float(self) -> float:
        import math
        return float(self.q) * math.pi

    def enclose(self, bk=None):
        bk = bk or FloatBackend()
        return bk.const(self.q) * bk.pi

    def __repr__(self):
        return f"{self.q}*pi"


class AcosAngle:
    """Angle in [-pi/2, pi/2] with exact cosine c and sign of its sine."""

    __slots__ = ("c", "sgn")

    def __init__(self, c, sgn: int = 1):
        self.c = lift(c)
        self.sgn = 1 if sgn >= 0 else -1

    def cos(self) -> QuadExt:
        return self.c

    def sin(self) -> QuadExt:
        return self.sgn * tower_sqrt(1 - self.c * self.c)

    def __neg__(self):
        return AcosAngle(self.c, -self.sgn)

    def to_float(self) -> float:
        import math
        return self.sgn * math.acos(float(self.c))

    def enclose(self, bk=None):
        import mpmath
        bk = bk or FloatBackend()
        from mpmath.ctx_iv import MPIntervalContext
        ctx = MPIntervalContext()
        ctx.prec = max(bk.prec, 53)
        # acos is decreasing: evaluate at the endpoints of the enclosure of c
        ci = Interval.enclose(self.c) if bk.prec == 53 else bk.const(self.c)
        lo, hi = FloatBackend.bounds(ci) if isinstance(ci, Interval) else (float(ci.a), float(ci.b))
        with mpmath.workprec(ctx.prec + 20):
            a_hi = mpmath.acos(mpmath.mpf(lo))
            a_lo = mpmath.acos(mpmath.mpf(hi))
        import math
        lo_f = math.nextafter(float(a_lo), -math.inf)
        hi_f = math.nextafter(float(a_hi), math.inf)
        out = bk.interval(lo_f, hi_f)
        return out if self.sgn > 0 else -out

    def __repr__(self):
        return f"{'' if self.sgn > 0 else '-'}acos({self.c!r})"


def csqrt_principal(x) -> QuadExt:
    """Exact principal square root of a tower element, when it exists in the tower."""
    x = lift(x)
    if x.is_zero():
        return QuadExt(0)
    a = x.real()
    b = x.imag()
    m = tower_sqrt(x.abs2())
    re = tower_sqrt((m + a) * Fraction(1, 2))
    im2 = (m - a) * Fraction(1, 2)
    im = tower_sqrt(im2) if not im2.is_zero() else QuadExt(0)
    if b.sign() < 0:
        im = -im
    r = cplx(re, im)
    if r * r != x:
        raise NotInTower("complex sqrt check failed")
    return r


class ExactMath:
    exact = True
    I = cplx(0, 1)
    pi = PiAngle(1)

    def c(self, x):
        return lift(x)

    def cos(self, a):
        if isinstance(a, (PiAngle, AcosAngle)):
            return a.cos()
        raise NotInTower(f"exact cos needs an exact angle, got {a!r}")

    def sin(self, a):
        if isinstance(a, (PiAngle, AcosAngle)):
            return a.sin()
        raise NotInTower(f"exact sin needs an exact angle, got {a!r}")

    def expi(self, a):
        return cplx(self.cos(a), self.sin(a))

    def sqrt(self, x):
        try:
            return tower_sqrt(lift(x))
        except ValueError as e:
            raise NotInTower(str(e)) from None

    def cplx(self, re, im=0):
        return cplx(re, im)

    def re(self, z):
        return lift(z).real()

    def im(self, z):
        return lift(z).imag()

    def conj(self, z):
        return lift(z).conj()

    def abs2(self, z):
        return lift(z).abs2()


class IntervalMath:
    exact = False

    def __init__(self, bk=None):
        self.bk = bk or FloatBackend()
        self.pi = self.bk.pi
        zero = self.bk.const(0)
        self.I = CInterval(zero, self.bk.const(1))

    def c(self, x):
        return self.bk.const(x)

    def _a(self, a):
        if isinstance(a, (PiAngle, AcosAngle)):
            return a.enclose(self.bk)
        if isinstance(a, (int, Fraction)):
            return self.bk.const(a)
        return a

    def cos(self, a):
        return self.bk.cos(self._a(a))

    def sin(self, a):
        return self.bk.sin(self._a(a))

    def expi(self, a):
        a = self._a(a)
        return CInterval(self.bk.cos(a), self.bk.sin(a))

    def sqrt(self, x):
        return self.bk.sqrt(self._r(x))

    def _r(self, x):
        if isinstance(x, (int, Fraction, QuadExt, GaussianRational)):
            return self.bk.const(x)
        return x

    def cplx(self, re, im=0):
        return CInterval(self._r(re), self._r(im))

    def re(self, z):
        return z.re if isinstance(z, CInterval) else self._r(z)

    def im(self, z):
        return z.im if isinstance(z, CInterval) else self._r(z) * 0

    def conj(self, z):
        return z.conj() if isinstance(z, CInterval) else z

    def abs2(self, z):
        if isinstance(z, CInterval):
            return z.abs2()
        return self.bk.sqr(z)

    def as_complex(self, z):
        if isinstance(z, CInterval):
            return z
        if isinstance(z, QuadExt) or isinstance(z, (int, Fraction, GaussianRational)):
            q = lift(z)
            return CInterval(self.bk.const(q.real()), self.bk.const(q.imag()))
        return CInterval(z, z * 0)


class FloatMath:
    """Plain double evaluation, for meshes and plots only (never for certificates)."""
    exact = False

    def __init__(self):
        import math
        self._m = math
        self.pi = math.pi
        self.I = 1j

    def c(self, x):
        return float(x)

    def _a(self, a):
        if isinstance(a, (PiAngle, AcosAngle)):
            return a.to_float()
        return float(a)

    def cos(self, a):
        return self._m.cos(self._a(a))

    def sin(self, a):
        return self._m.sin(self._a(a))

    def expi(self, a):
        a = self._a(a)
        return complex(self._m.cos(a), self._m.sin(a))

    def sqrt(self, x):
        return self._m.sqrt(max(float(x), 0.0))

    def cplx(self, re, im=0):
        return complex(float(re), float(im))

    def re(self, z):
        return complex(z).real

    def im(self, z):
        return complex(z).imag

    def conj(self, z):
        return complex(z).conjugate()

    def abs2(self, z):
        return abs(complex(z)) ** 2

    def as_complex(self, z):
        if isinstance(z, (QuadExt, GaussianRational)):
            q = lift(z)
            return complex(float(q.real()), float(q.imag()))
        return complex(z)
