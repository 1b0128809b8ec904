"""Ruled patches between directrices, the vertical pieces of F, and the projection.

Patch parameters: ruled patches take (s, a) with a in [0, 1]; F1/F2 take
(s, a) with a the signed height above C17 (compactified a = tan(pi/2 * b)
is avoided: callers bound a explicitly); F3 takes (s, t) with s >= 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from ..chgeom import HeisPoint
from ..numeric.interval import CInterval
from ..numeric.scalars import QuadExt
from ..trig import PiAngle
from .curves import CURVES, EXACT, ParameterError, base_xyt, curve_xyt, sorted_bounds, _fl


@dataclass(frozen=True)
class RuledPatch:
    id: str
    lower: str          # directrix at a = 0
    upper: str          # directrix at a = 1

    @property
    def domain(self):
        lo, hi = sorted_bounds(CURVES[self.lower])
        return (lo, hi), (F(0), F(1))


@dataclass(frozen=True)
class VerticalPatch:
    id: str
    s_range: tuple      # exact bounds
    direction: int      # +1 upward rays, -1 downward, 0 for the half-plane F3


PATCHES = {
    "EB_l": RuledPatch("EB_l", "C5", "C1"),
    "EB_r": RuledPatch("EB_r", "C6", "C2"),
    "EBi_l": RuledPatch("EBi_l", "C8", "C4"),
    "EBi_r": RuledPatch("EBi_r", "C7", "C3"),
}
VERTICAL = {
    "F1": VerticalPatch("F1", (PiAngle(F(3, 4)), PiAngle(F(3, 2))), 1),
    "F2": VerticalPatch("F2", (PiAngle(F(3, 2)), PiAngle(F(9, 4))), -1),
    "F3": VerticalPatch("F3", (F(1), None), 0),
}
E_B = ("EB_l", "EB_r")
E_BINV = ("EBi_l", "EBi_r")


def _blend(p, q, a, m):
    one = m.c(1)
    b = one - a if not isinstance(a, (int, F)) else m.c(1 - F(a))
    aa = a if not isinstance(a, (int, F)) else m.c(a)
    return tuple(u * b + v * aa for u, v in zip(p, q))


def ruled_xyt(pid: str, s, a, m):
    """(1-a) * lower(s) + a * upper(s) in Heisenberg coordinates."""
    P = PATCHES[pid]
    if isinstance(a, (int, F)) and not 0 <= a <= 1:
        raise ParameterError(f"{pid}: a={a} outside [0, 1]")
    return _blend(base_xyt(P.lower, s, m), base_xyt(P.upper, s, m), a, m)


def vertical_xyt(pid: str, s, a, m):
    """F1/F2: C17(s) raised by a; F3: (0, (1 + sqrt 2) s, a)."""
    V = VERTICAL[pid]
    if V.direction == 0:
        if isinstance(s, (int, F)) and s < 1:
            raise ParameterError("F3 needs s >= 1")
        return m.c(0), (m.sqrt(m.c(2)) + m.c(1)) * (s if not isinstance(s, (int, F)) else m.c(s)), \
            a if not isinstance(a, (int, F)) else m.c(a)
    if isinstance(a, (int, F)) and a * V.direction < 0:
        raise ParameterError(f"{pid}: rays go {'up' if V.direction > 0 else 'down'}")
    x, y, t = base_xyt("C17", s, m)
    return x, y, t + (a if not isinstance(a, (int, F)) else m.c(a))


def surface_xyt(pid: str, s, a, m=None):
    m = m or EXACT
    if pid in PATCHES:
        return ruled_xyt(pid, s, a, m)
    return vertical_xyt(pid, s, a, m)


def surface_point(pid: str, s, a, m=None) -> HeisPoint:
    x, y, t = surface_xyt(pid, s, a, m)
    if isinstance(x, (QuadExt, int, F)):
        return HeisPoint(EXACT.cplx(x, y), t)
    if isinstance(x, float):
        return HeisPoint(complex(x, y), t)
    return HeisPoint(CInterval(x, y), t)


def project(p):
    """Vertical projection to the z-coordinate."""
    return p.z
