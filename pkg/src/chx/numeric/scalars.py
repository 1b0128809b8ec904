"""Exact scalar tower: Q -> Q(i) -> Q(i, sqrt d) with d in {2, 3}.

Every scalar is immutable. Mixed arithmetic promotes to the larger type.
Two quadratic elements with different nonzero radicals cannot be combined.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rational = Fraction

RADICANDS = (2, 3)


class MixedRadicandError(ValueError):
    pass


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class GaussianRational:
    """re + i*im with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, k, v):
        raise AttributeError("immutable")

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_q(x), 0)

    # arithmetic
    def __add__(self, o):
        if isinstance(o, QuadExt):
            return NotImplemented
        o = _coerce_gr(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        if isinstance(o, QuadExt):
            return NotImplemented
        o = _coerce_gr(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, QuadExt):
            return NotImplemented
        o = _coerce_gr(o)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            if not d:
                return GaussianRational(a * c, 0)
            return GaussianRational(a * c, a * d)
        if not d:
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        if isinstance(o, QuadExt):
            return NotImplemented
        o = _coerce_gr(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return _coerce_gr(o) * self.inverse()

    def __pow__(self, n: int):
        return _pow(self, n, GaussianRational(1))

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def real(self):
        return self.re

    def imag(self):
        return self.im

    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, o):
        if isinstance(o, QuadExt):
            return o == self
        o = _coerce_gr(o)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _coerce_gr(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return None


def _pow(x, n, one):
    if n < 0:
        return _pow(x.inverse(), -n, one)
    out = one
    base = x
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


class QuadExt:
    """base + coeff*sqrt(d), base and coeff Gaussian rationals.

    d is None when coeff == 0 (the element lies in Q(i)).
    """

    __slots__ = ("base", "coeff", "d")

    def __init__(self, base=0, coeff=0, d=None):
        b = GaussianRational.of(base) if not isinstance(base, GaussianRational) else base
        c = GaussianRational.of(coeff) if not isinstance(coeff, GaussianRational) else coeff
        if c.is_zero():
            d = None
        elif d not in RADICANDS:
            raise ValueError(f"radicand must be one of {RADICANDS}, got {d}")
        object.__setattr__(self, "base", b)
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, k, v):
        raise AttributeError("immutable")

    @staticmethod
    def of(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(GaussianRational.of(x), 0, None)

    @staticmethod
    def sqrt(d: int) -> "QuadExt":
        return QuadExt(0, 1, d)

    def _join(self, o: "QuadExt"):
        if self.d is None:
            return o.d
        if o.d is None or o.d == self.d:
            return self.d
        raise MixedRadicandError(f"cannot combine sqrt({self.d}) with sqrt({o.d})")

    def __add__(self, o):
        o = _coerce_qe(o)
        if o is None:
            return NotImplemented
        d = self._join(o)
        if d is None:
            return QuadExt(self.base + o.base, 0, None)
        return QuadExt(self.base + o.base, self.coeff + o.coeff, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.base, -self.coeff, self.d)

    def __sub__(self, o):
        o = _coerce_qe(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = _coerce_qe(o)
        if o is None:
            return NotImplemented
        d = self._join(o)
        if d is None:
            return QuadExt(self.base * o.base, 0, None)
        if self.d is None:
            return QuadExt(self.base * o.base, self.base * o.coeff, d)
        if o.d is None:
            return QuadExt(self.base * o.base, self.coeff * o.base, d)
        dd = d
        return QuadExt(self.base * o.base + self.coeff * o.coeff * dd,
                       self.base * o.coeff + self.coeff * o.base, d)

    __rmul__ = __mul__

    def galois(self):
        """sqrt(d) -> -sqrt(d)."""
        return QuadExt(self.base, -self.coeff, self.d)

    def inverse(self):
        dd = self.d if self.d is not None else 0
        n = self.base * self.base - self.coeff * self.coeff * dd
        if n.is_zero():
            raise ZeroDivisionError("QuadExt division by zero")
        g = self.galois()
        ninv = n.inverse()
        return QuadExt(g.base * ninv, g.coeff * ninv, self.d)

    def __truediv__(self, o):
        o = _coerce_qe(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return _coerce_qe(o) * self.inverse()

    def __pow__(self, n: int):
        return _pow(self, n, QuadExt(1))

    def conj(self):
        return QuadExt(self.base.conj(), self.coeff.conj(), self.d)

    def real(self) -> "QuadExt":
        return QuadExt(self.base.re, self.coeff.re, self.d)

    def imag(self) -> "QuadExt":
        return QuadExt(self.base.im, self.coeff.im, self.d)

    def abs2(self) -> "QuadExt":
        return (self * self.conj()).real()

    def is_real(self) -> bool:
        return self.base.im == 0 and self.coeff.im == 0

    def is_zero(self) -> bool:
        return self.base.is_zero() and self.coeff.is_zero()

    def sign(self) -> int:
        """Exact sign of a real element p + q*sqrt(d)."""
        if not self.is_real():
            raise ValueError("sign of a non-real scalar")
        return real_quad_sign(self.base.re, self.coeff.re, self.d or 1)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __eq__(self, o):
        o = _coerce_qe(o)
        if o is None:
            return NotImplemented
        if self.d is not None and o.d is not None and self.d != o.d:
            # distinct radicals with nonzero coefficients are linearly independent
            return False
        return (self - o).is_zero()

    def __hash__(self):
        if self.d is None:
            return hash(self.base)
        return hash((self.base, self.coeff, self.d))

    def __complex__(self):
        import math
        r = math.sqrt(self.d) if self.d else 0.0
        return complex(self.base) + complex(self.coeff) * r

    def __float__(self):
        if not self.is_real():
            raise ValueError("float of a non-real scalar")
        return complex(self).real

    def __repr__(self):
        if self.d is None:
            return repr(self.base)
        return f"[{self.base!r} + {self.coeff!r}*sqrt{self.d}]"


def _coerce_qe(x):
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, GaussianRational):
        return QuadExt(x, 0, None)
    if isinstance(x, (int, Fraction)):
        return QuadExt(GaussianRational(x), 0, None)
    return None


def real_quad_sign(p: Fraction, q: Fraction, d: int) -> int:
    """Sign of p + q*sqrt(d), decided by comparing p^2 with q^2 d."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare magnitudes
    lhs, rhs = p * p, q * q * d
    if lhs > rhs:
        return sp
    if lhs < rhs:
        return sq
    return 0


def lift(x) -> QuadExt:
    """Promote anything in the tower to QuadExt."""
    r = _coerce_qe(x)
    if r is None:
        raise TypeError(f"not an exact scalar: {x!r}")
    return r


def I_() -> QuadExt:
    return QuadExt(GaussianRational(0, 1))


def cplx(re, im=0) -> QuadExt:
    """re + i*im with re, im real tower elements."""
    return lift(re) + lift(im) * I_()


def _square_part(n: int):
    """n = a^2 * m with m square-free; returns (a, m)."""
    a, m = 1, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            a *= k
            n //= k * k
        if n % k == 0:
            m *= k
            n //= k
        k += 1
    return a, m * n


def rational_sqrt(q) -> QuadExt:
    """Exact sqrt of a nonnegative rational inside the tower, else ValueError."""
    q = _q(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return QuadExt(0)
    num, den = q.numerator, q.denominator
    # sqrt(n/d) = sqrt(n d)/d
    a, m = _square_part(num * den)
    if m == 1:
        return QuadExt(Fraction(a, den))
    if m in RADICANDS:
        return QuadExt(0, Fraction(a, den), m)
    raise ValueError(f"sqrt({q}) leaves the tower")


def tower_sqrt(x) -> QuadExt:
    """Exact sqrt of a nonnegative real tower element when it is a square in the tower."""
    x = lift(x)
    if not x.is_real() or x.sign() < 0:
        raise ValueError("sqrt of a non-real or negative scalar")
    if x.d is None:
        return rational_sqrt(x.base.re)
    # (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d = p + q sqrt d
    p, q, d = x.base.re, x.coeff.re, x.d
    disc = p * p - q * q * d
    if disc < 0:
        raise ValueError("not a square")
    try:
        r = rational_sqrt(disc)
    except ValueError:
        raise ValueError(f"sqrt({x!r}) leaves the tower") from None
    if r.d is not None:
        raise ValueError(f"sqrt({x!r}) leaves the tower")
    r = r.base.re
    for u2 in ((p + r) / 2, (p - r) / 2):
        if u2 <= 0:
            continue
        try:
            u = rational_sqrt(u2)
        except ValueError:
            continue
        if u.d is not None:
            # u itself may be c*sqrt(d'), giving v rational*sqrt(d')... only accept rational u
            if u.d == d:
                # u = c sqrt d  => v = q/(2u) = q/(2 c d) * sqrt d ; x = (c + v') ... handled below
                c = u.coeff.re
                v = q / (2 * c * d)
                cand = QuadExt(0, c, d) + QuadExt(v)
                if cand * cand == x:
                    return cand if cand.sign() >= 0 else -cand
            continue
        u = u.base.re
        v = q / (2 * u)
        cand = QuadExt(u, v, d)
        if cand * cand == x:
            return cand if cand.sign() >= 0 else -cand
    raise ValueError(f"sqrt({x!r}) leaves the tower")


def to_json(x) -> dict:
    """Exact serialization with numerators/denominators as decimal strings."""
    x = lift(x)
    def g(z: GaussianRational):
        return {"re": str(z.re), "im": str(z.im)}
    out = {"base": g(x.base)}
    if x.d is not None:
        out["coeff"] = g(x.coeff)
        out["d"] = x.d
    return out


def from_json(obj) -> QuadExt:
    b = GaussianRational(Fraction(obj["base"]["re"]), Fraction(obj["base"]["im"]))
    if "coeff" in obj:
        c = GaussianRational(Fraction(obj["coeff"]["re"]), Fraction(obj["coeff"]["im"]))
        return QuadExt(b, c, obj["d"])
    return QuadExt(b)
