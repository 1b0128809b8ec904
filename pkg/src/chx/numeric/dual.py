"""Forward-mode derivatives over intervals, for mean-value enclosures.

``Dual(v, d)`` carries an enclosure of f and of its gradient over a box.
``DualMath`` exposes the same context interface as ``IntervalMath`` so the
closed-form coordinate formulas run unchanged on it.
"""
from __future__ import annotations

from fractions import Fraction

from .interval import Interval, FloatBackend


class Dual:
    __slots__ = ("v", "d")

    def __init__(self, v: Interval, d: tuple):
        self.v = v
        self.d = d

    @staticmethod
    def _c(o):
        if isinstance(o, Dual):
            return o
        if isinstance(o, Interval):
            return o
        if isinstance(o, (int, float, Fraction)):
            return Interval.enclose(o)
        return None

    def __add__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        if isinstance(o, Dual):
            return Dual(self.v + o.v, tuple(a + b for a, b in zip(self.d, o.d)))
        return Dual(self.v + o, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.v, tuple(-a for a in self.d))

    def __sub__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        if isinstance(o, Dual):
            return Dual(self.v * o.v, tuple(a * o.v + self.v * b for a, b in zip(self.d, o.d)))
        return Dual(self.v * o, tuple(a * o for a in self.d))

    __rmul__ = __mul__

    def sqr(self):
        two_v = self.v * 2
        return Dual(self.v.sqr(), tuple(a * two_v for a in self.d))

    def cos(self):
        s = self.v.sin()
        return Dual(self.v.cos(), tuple(-(a * s) for a in self.d))

    def sin(self):
        c = self.v.cos()
        return Dual(self.v.sin(), tuple(a * c for a in self.d))

    def sqrt(self):
        r = self.v.sqrt()
        inv = _recip(r * 2)              # raises when the box touches 0
        return Dual(r, tuple(a * inv for a in self.d))

    def recip(self):
        inv = _recip(self.v)
        sq = inv.sqr()
        return Dual(inv, tuple(-(a * sq) for a in self.d))

    def __truediv__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        if isinstance(o, Dual):
            return self * o.recip()
        return self * _recip(o)

    def __rtruediv__(self, o):
        return self.recip() * o


def _recip(x):
    return x.recip() if isinstance(x, Dual) else Interval(1) / x


class DualBackend(FloatBackend):
    name = "dual53"

    def cos(self, x):
        return x.cos()

    def sin(self, x):
        return x.sin()

    def sqrt(self, x):
        if isinstance(x, Dual):
            return x.sqrt()
        return super().sqrt(x)

    def sqr(self, x):
        return x.sqr()


def variables(box) -> list:
    """Dual variables for a box of Intervals, one gradient slot per coordinate."""
    n = len(box)
    zero = Interval(0.0)
    one = Interval(1.0)
    return [Dual(x, tuple(one if j == i else zero for j in range(n))) for i, x in enumerate(box)]


def variables2(box) -> list:
    """Nested Dual variables: f(xs).d[k].d[j] encloses the mixed partial d_j d_k f."""
    n = len(box)
    inner = variables(box)
    zero = Dual(Interval(0.0), tuple(Interval(0.0) for _ in range(n)))
    one = Dual(Interval(1.0), tuple(Interval(0.0) for _ in range(n)))
    return [Dual(x, tuple(one if j == i else zero for j in range(n))) for i, x in enumerate(inner)]


def mean_value(f, box) -> Interval:
    """Mean-value enclosure of f over a box of Intervals, intersected with the naive one."""
    xs = variables(box)
    full = f(xs)
    mids = [Interval(x.mid) for x in box]
    fc = f(mids)
    mv = fc
    for g, x, c in zip(full.d, box, mids):
        mv = mv + g * (x - c)
    lo = max(mv.lo, full.v.lo)
    hi = min(mv.hi, full.v.hi)
    if lo > hi:
        # both are valid enclosures; an empty meet cannot happen for sound inputs
        raise ArithmeticError("disjoint enclosures")
    return Interval(lo, hi)
