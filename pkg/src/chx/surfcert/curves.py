"""Named boundary curves of the capping disks.

Every base curve is a closed-form map s -> (x, y, t) in Heisenberg
coordinates, written against the math-context interface of ``chx.trig`` so
the same code evaluates exactly (tower parameters), with intervals, with
interval derivatives (``DualBackend``) or with plain floats (meshes).
Derived curves are group images of base curves and are evaluated through
lifts.

Parameters: trigonometric curves take s in radians (``PiAngle`` in exact
mode); C19/C20 take sigma = 1/s in [0, 1] with sigma = 0 at q_inf; the
C21'..C24' chart curves take alpha on the geographic chart of I_0^*.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F
from functools import lru_cache

from ..chgeom import AtInfinity, HeisPoint, Q_INF, horospherical_coords, proj_equal_vec, standard_lift
from ..group4 import eval_word, group
from ..numeric.interval import CInterval, Interval
from ..numeric.scalars import QuadExt, lift
from ..trig import AcosAngle, ExactMath, FloatMath, IntervalMath, PiAngle

EXACT = ExactMath()
HALF = F(1, 2)
ACOS13 = AcosAngle(F(1, 3))


class ParameterError(ValueError):
    pass


def ang(m, s, a, b=0):
    """The angle a*s + b*pi in whatever representation s has."""
    if isinstance(s, PiAngle):
        return PiAngle(s.q * F(a) + F(b))
    out = s * m.c(a) if a != 1 else s
    return out + m.pi * m.c(b) if b else out


def _R(m, s):
    """sqrt(2 cos 2s)."""
    return m.sqrt(m.c(2) * m.cos(ang(m, s, 2)))


# ---------------------------------------------------------------- base formulas


def _c1(s, m):
    return m.cos(s), m.sin(s), m.c(0)


def _c2(s, m):
    c, sn = m.cos(s), m.sin(s)
    return m.c(-2) - c, -sn, sn * m.c(-4)


def _c3(s, m):
    return -m.cos(s), -m.sin(s), m.c(0)


def _c4(s, m):
    c, sn = m.cos(s), m.sin(s)
    return c + m.c(-2), sn, sn * m.c(4)


def _c5(s, m):
    R = _R(m, s)
    phi = ang(m, s, HALF, -F(1, 4))
    cp, sp = m.cos(phi), m.sin(phi)
    return -(R * cp), m.c(1) - R * sp, (m.sin(ang(m, s, 2)) + R * cp) * m.c(-2)


def _c6(s, m):
    R = _R(m, s)
    phi = ang(m, s, HALF, -F(1, 4))
    cp, sp = m.cos(phi), m.sin(phi)
    t = (m.c(-2) - m.sin(ang(m, s, 2)) + R * (sp * m.c(2) - cp)) * m.c(2)
    return R * cp + m.c(-2), R * sp + m.c(-1), t


def _c7(s, m):
    R = _R(m, s)
    psi = ang(m, s, HALF, F(1, 4))
    cp, sp = m.cos(psi), m.sin(psi)
    return -(R * sp), R * cp + m.c(-1), (R * sp - m.sin(ang(m, s, 2))) * m.c(2)


def _c8(s, m):
    R = _R(m, s)
    psi = ang(m, s, HALF, F(1, 4))
    cp, sp = m.cos(psi), m.sin(psi)
    t = (m.c(2) - m.sin(ang(m, s, 2)) + R * (sp - cp * m.c(2))) * m.c(2)
    return R * sp + m.c(-2), m.c(1) - R * cp, t


def _c17(s, m):
    r2 = m.sqrt(m.c(2))
    c, sn = m.cos(s), m.sin(s)
    return -(r2 * c), m.c(1) - r2 * sn, r2 * c * m.c(-2)


def _vertical(x0, sign):
    def f(sig, m):
        if _is_zero(sig):
            raise AtInfinityParam()
        return m.c(x0), m.c(0), m.c(2 * sign) * _inv(m, sig)
    return f


def _inv(m, sig):
    if isinstance(sig, (int, F)):
        return m.c(F(1) / F(sig))
    if isinstance(sig, float):
        return 1.0 / sig
    return m.c(1) / sig if not hasattr(sig, "d") else _dual_inv(sig)


def _dual_inv(d):
    from ..numeric.dual import Dual
    v = Interval(1) / d.v
    return Dual(v, tuple(-(g * v.sqr()) for g in d.d))


class AtInfinityParam(Exception):
    """The parameter value maps to q_inf."""


def _is_zero(x):
    if isinstance(x, (int, F, float)):
        return x == 0
    return False


def _chart(sign):
    """A^-1 C21..C24 on the chart of I_0^*: sin(theta) = sign * kappa(alpha), cos(theta) >= 0.

    kappa = (3 cos a - 1) / (4 sqrt(cos a) cos(a/2)); sign -1 is I_0^-, +1 is I_0^+.
    """
    def f(a, m):
        if getattr(m, "exact", False):
            return _chart_exact(a, sign)
        ca = m.cos(a)
        h = a * m.c(HALF)
        ch, sh = m.cos(h), m.sin(h)
        # sqrt(cos a) * sin(theta) and sqrt(cos a) * cos(theta), free of divisions by sqrt(cos a)
        st_r = (ca * m.c(3) - m.c(1)) * _recip(m, ch * m.c(4)) * m.c(sign)
        ct_r = m.sqrt(ca - st_r * st_r)
        # z = sqrt(cos a) e^{i(theta - a/2)}, t = sin a (center 0, radius 1)
        x = ct_r * ch + st_r * sh
        y = st_r * ch - ct_r * sh
        return x, y, m.sin(a)
    return f


def _chart_exact(a, sign):
    from ..numeric.scalars import cplx, tower_sqrt
    from ..trig import csqrt_principal
    c, sn = lift(EXACT.cos(a)), lift(EXACT.sin(a))
    # sqrt(cos a) e^{-i a/2} is the principal root of cos a * e^{-i a}
    e_half = csqrt_principal(c * cplx(c, -sn))
    k2 = (3 * c - 1) * (3 * c - 1) / (8 * c * (1 + c))
    kap = tower_sqrt(k2) if not k2.is_zero() else QuadExt(0)
    if (3 * c - 1).sign() < 0:
        kap = -kap
    st = sign * kap
    ct = tower_sqrt(1 - st * st)
    z = e_half * cplx(ct, st)
    return z.real(), z.imag(), sn


def _recip(m, x):
    if isinstance(x, QuadExt):
        return 1 / x
    if hasattr(x, "d"):
        return _dual_inv(x)
    return m.c(1) / x if not isinstance(x, float) else 1.0 / x


BASE = {
    "C1": _c1, "C2": _c2, "C3": _c3, "C4": _c4, "C5": _c5, "C6": _c6, "C7": _c7, "C8": _c8,
    "C17": _c17, "C19": _vertical(1, 1), "C20": _vertical(-1, -1),
    "C21'": _chart(-1), "C22'": _chart(-1), "C23'": _chart(1), "C24'": _chart(1),
}


# ---------------------------------------------------------------- table


@dataclass(frozen=True)
class NamedCurve:
    id: str
    lo: object                  # parameter interval, exact
    hi: object
    ends: tuple                 # point words at lo and hi
    carriers: tuple             # sphere ids like ("*", 0)
    base: str = ""              # formula key; derived curves name their source
    word: str = ""              # group word applied to the base curve
    table_ends: tuple = ()      # as listed in the curve table, when it differs
    table_carriers: tuple = ()  # as listed in the curve table, when it differs
    param: str = "s"

    @property
    def derived(self) -> bool:
        return bool(self.word)


P = PiAngle
_E, _EE = (P(F(5, 6)), P(1)), (P(0), P(F(1, 6)))
_NEG_ACOS = AcosAngle(F(1, 3), -1)

CURVES = {c.id: c for c in [
    NamedCurve("C5", *_E, ("y1", "x1"), (("+", 0),), "C5"),
    NamedCurve("C1", *_E, ("y1", "x2"), (("*", 0),), "C1"),
    NamedCurve("C6", *_E, ("A B^2 y1", "x1"), (("-", 1),), "C6"),
    NamedCurve("C2", *_E, ("A B^2 y1", "x2"), (("*", 1),), "C2"),
    NamedCurve("C7", *_EE, ("x3", "y2"), (("-", 0),), "C7"),
    NamedCurve("C3", *_EE, ("x2", "y2"), (("*", 0),), "C3"),
    NamedCurve("C8", *_EE, ("x3", "A B^2 y2"), (("+", 1),), "C8"),
    NamedCurve("C4", *_EE, ("x2", "A B^2 y2"), (("*", 1),), "C4"),
    NamedCurve("C17", P(F(3, 4)), P(F(9, 4)), ("B^-1 x3", "x1"), (("+", 0),), "C17"),
    NamedCurve("C19", F(0), F(1), ("qinf", "B^-1 x3"), (), "C19", param="sigma"),
    NamedCurve("C20", F(0), F(1), ("qinf", "x1"), (), "C20", param="sigma"),
    NamedCurve("C18", P(F(3, 4)), P(F(9, 4)), ("x3", "B x1"), (("-", 0),), "C17", "B"),
    NamedCurve("C9", *_E, ("B^2 y1", "A^-1 x2"), (("*", 0),), "C2", "A^-1"),
    NamedCurve("C10", *_EE, ("A^-1 x2", "B^2 y2"), (("*", 0),), "C4", "A^-1"),
    NamedCurve("C11", *_E, ("B^2 y1", "A^-1 x1"), (("-", 0),), "C6", "A^-1"),
    NamedCurve("C12", *_EE, ("A^-1 x3", "B^2 y2"), (("+", 0),), "C8", "A^-1"),
    NamedCurve("C13", *_E, ("B y1", "B x1"), (("-", 0),), "C5", "B"),
    NamedCurve("C14", *_E, ("B y1", "x1"), (("+", 0),), "C6", "B^-1 A^-1"),
    NamedCurve("C15", *_EE, ("B^-1 x3", "B^-1 y2"), (("+", 0),), "C7", "B^-1",
               table_ends=("B^-1 x3", "B^-1 y3")),
    NamedCurve("C16", *_EE, ("B A^-1 x3", "B^-1 y2"), (("-", 0),), "C8", "B A^-1",
               table_ends=("x3", "B y1")),
    NamedCurve("C21'", P(0), ACOS13, ("B^2 y1", "w3"), (("*", 0), ("-", 0)), "C21'"),
    NamedCurve("C22'", P(0), _NEG_ACOS, ("B^2 y1", "w4"), (("*", 0), ("-", 0)), "C22'"),
    NamedCurve("C23'", P(0), ACOS13, ("B^2 y2", "w3"), (("*", 0), ("+", 0)), "C23'"),
    NamedCurve("C24'", P(0), _NEG_ACOS, ("B^2 y2", "w4"), (("*", 0), ("+", 0)), "C24'"),
    NamedCurve("C21", P(0), ACOS13, ("A B^2 y1", "A w3"), (("*", 1), ("-", 1)), "C21'", "A"),
    NamedCurve("C22", P(0), _NEG_ACOS, ("A B^2 y1", "A w4"), (("*", 1), ("-", 1)), "C22'", "A",
               table_carriers=(("*", 1), ("-", 0))),
    NamedCurve("C23", P(0), ACOS13, ("A B^2 y2", "A w3"), (("*", 1), ("+", 1)), "C23'", "A"),
    NamedCurve("C24", P(0), _NEG_ACOS, ("A B^2 y2", "A w4"), (("*", 1), ("+", 1)), "C24'", "A"),
    NamedCurve("C25", P(0), _NEG_ACOS, ("B y1", "w1"), (("+", 0), ("-", 0)), "C22'", "B^-1"),
    NamedCurve("C26", P(0), ACOS13, ("B y1", "w4"), (("+", 0), ("-", 0)), "C21'", "B^-1"),
    NamedCurve("C27", P(0), _NEG_ACOS, ("B^-1 y2", "w3"), (("+", 0), ("-", 0)), "C24'", "B",
               table_ends=("w3", "B^-1 y3")),
    NamedCurve("C28", P(0), ACOS13, ("B^-1 y2", "w2"), (("+", 0), ("-", 0)), "C23'", "B",
               table_ends=("w2", "B^-1 y3")),
]}

# the closed curves of the capping disks, in traversal order
C_B = ("C5", "C1", "C2", "C6")
C_BINV = ("C7", "C3", "C4", "C8")
C_F = ("C17", "C20", "C19")


# ---------------------------------------------------------------- evaluation


def _in_domain(c: NamedCurve, s) -> bool:
    lo, hi = sorted_bounds(c)
    if isinstance(s, (PiAngle, AcosAngle)):
        if isinstance(lo, PiAngle) and isinstance(hi, PiAngle) and isinstance(s, PiAngle):
            return lo.q <= s.q <= hi.q
        v = s.to_float()
        return _fl(lo) - 1e-15 <= v <= _fl(hi) + 1e-15
    if isinstance(s, (int, F)):
        if isinstance(lo, (PiAngle, AcosAngle)):
            return s == 0 and _fl(lo) <= 0 <= _fl(hi)
        return lo <= s <= hi
    v_lo, v_hi = _bounds(s)
    tol = 1e-12
    return _fl(lo) - tol <= v_lo and v_hi <= _fl(hi) + tol


def _fl(x):
    return x.to_float() if hasattr(x, "to_float") else float(x)


def _bounds(s):
    if isinstance(s, Interval):
        return s.lo, s.hi
    if hasattr(s, "v"):
        return s.v.lo, s.v.hi
    return float(s), float(s)


def sorted_bounds(c: NamedCurve):
    return (c.lo, c.hi) if _fl(c.lo) <= _fl(c.hi) else (c.hi, c.lo)


def base_xyt(key: str, s, m):
    return BASE[key](s, m)


def curve_xyt(cid: str, s, m=None):
    """(x, y, t) of curve cid at parameter s; derived curves go through lifts."""
    c = CURVES[cid]
    if not _in_domain(c, s):
        raise ParameterError(f"{cid}: parameter {s!r} outside [{c.lo!r}, {c.hi!r}]")
    m = m or (EXACT if isinstance(s, (PiAngle, AcosAngle)) or (isinstance(s, (int, F)) and c.param == "sigma")
              else IntervalMath())
    x, y, t = base_xyt(c.base, s, m)
    if not c.word:
        return x, y, t
    M = _word_matrix(c.word)
    if m.exact:
        h = horospherical_coords(M.apply(standard_lift(HeisPoint(m.cplx(x, y), t))))
        return h.z.real(), h.z.imag(), h.t
    if isinstance(m, FloatMath):
        return _act_float(M, x, y, t)
    v = standard_lift(HeisPoint(CInterval(x, y), t))
    Mi = _word_matrix_iv(c.word)
    w = tuple(_mat_row(Mi, r, v) for r in range(3))
    h = horospherical_coords(w)
    return h.z.re, h.z.im, h.t


@lru_cache(maxsize=None)
def _word_matrix(word):
    return eval_word(group(), word)


@lru_cache(maxsize=None)
def _word_matrix_iv(word):
    """Entry enclosures of a word's matrix; None marks exact zeros."""
    M = _word_matrix(word)
    rows = []
    for r in range(3):
        row = []
        for k in range(3):
            q = lift(M.m[r][k])
            row.append(None if q.is_zero() else
                       CInterval(Interval.enclose(q.real()), Interval.enclose(q.imag())))
        rows.append(tuple(row))
    return tuple(rows)


def _mat_row(Mi, r, v):
    acc = None
    for k in range(3):
        c = Mi[r][k]
        if c is None:
            continue
        term = c * v[k]
        acc = term if acc is None else acc + term
    return acc if acc is not None else CInterval(Interval(0.0), Interval(0.0))


def _act_float(M, x, y, t):
    z = complex(x, y)
    v = ((-abs(z) ** 2 + 1j * t) / 2, z, 1.0)
    fm = FloatMath()
    w = [sum(fm.as_complex(M.m[r][k]) * v[k] for k in range(3)) for r in range(3)]
    w0, w1 = w[0] / w[2], w[1] / w[2]
    return w1.real, w1.imag, 2 * w0.imag


def curve_point(cid: str, s, m=None):
    """HeisPoint of curve cid at s; AtInfinity at sigma = 0 of C19/C20."""
    try:
        x, y, t = curve_xyt(cid, s, m)
    except AtInfinityParam:
        return AtInfinity
    if isinstance(x, QuadExt) or isinstance(x, (int, F)):
        return HeisPoint(EXACT.cplx(x, y), t)
    if isinstance(x, float):
        return HeisPoint(complex(x, y), t)
    return HeisPoint(CInterval(x, y), t)


@lru_cache(maxsize=None)
def named_point(word: str):
    """Lift of a point named by a word like 'A B^2 y1' (last token is the point)."""
    g = group()
    toks = word.split()
    v = g.points[toks[-1]]
    if len(toks) > 1:
        v = eval_word(g, " ".join(toks[:-1])).apply(v)
    return v


def endpoint_lift(cid: str, which: int):
    c = CURVES[cid]
    s = (c.lo, c.hi)[which]
    p = curve_point(cid, s)
    if p is AtInfinity:
        return Q_INF
    return standard_lift(p)


def endpoints_match(cid: str) -> dict:
    """Exact projective comparison of the formula endpoints with the named points."""
    c = CURVES[cid]
    out = {}
    for k in (0, 1):
        v = endpoint_lift(cid, k)
        out[c.ends[k]] = proj_equal_vec(v, named_point(c.ends[k]))
    return out
