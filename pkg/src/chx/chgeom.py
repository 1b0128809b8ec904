"""Complex hyperbolic plane in the Siegel model.

Hermitian form H = antidiag(1, 1, 1), so <z, w> = z0 conj(w2) + z1 conj(w1) + z2 conj(w0).
Points of the Heisenberg group are (z, t); horospherical coordinates add u >= 0.
All functions accept exact tower scalars; most also accept complex intervals.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from .numeric.scalars import QuadExt, lift, cplx, tower_sqrt
from .numeric.interval import CInterval, Interval, FloatBackend
from .trig import ExactMath, IntervalMath, PiAngle, AcosAngle, csqrt_principal, NotInTower

EXACT = ExactMath()


class NotAnIsometry(ValueError):
    pass


class OutsideClosure(ValueError):
    pass


class AtInfinityType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "AtInfinity"


AtInfinity = AtInfinityType()

# ---------------------------------------------------------------- vectors


def vec(*xs) -> tuple:
    return tuple(lift(x) for x in xs)


Q_INF = vec(1, 0, 0)


def _is_exact(x) -> bool:
    return isinstance(x, (QuadExt, int, Fraction)) or type(x).__name__ == "GaussianRational"


def _conj(x):
    return x.conj() if hasattr(x, "conj") else x


def herm_inner(u: Sequence, v: Sequence):
    """<u, v> = v* H u."""
    return u[0] * _conj(v[2]) + u[1] * _conj(v[1]) + u[2] * _conj(v[0])


def signature_class(v) -> int:
    """-1 negative (interior), 0 null (boundary), +1 positive. Exact vectors only."""
    return herm_inner(v, v).real().sign()


def scale(v, c):
    return tuple(c * x for x in v)


def proj_equal_vec(u, v) -> bool:
    """u and v span the same complex line (exact)."""
    u = tuple(lift(x) for x in u)
    v = tuple(lift(x) for x in v)
    for i in range(3):
        for j in range(i + 1, 3):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return any(not x.is_zero() for x in u) and any(not x.is_zero() for x in v)


def normalize_vec(v):
    """Scale so the last nonzero coordinate is 1."""
    v = tuple(lift(x) for x in v)
    for x in reversed(v):
        if not x.is_zero():
            return tuple(y / x for y in v)
    raise ValueError("zero vector")


# ---------------------------------------------------------------- matrices


class Isometry:
    """3x3 matrix over the tower (stored unnormalized)."""

    __slots__ = ("m",)

    def __init__(self, rows):
        self.m = tuple(tuple(lift(x) for x in r) for r in rows)
        if len(self.m) != 3 or any(len(r) != 3 for r in self.m):
            raise ValueError("need a 3x3 matrix")

    @classmethod
    def identity(cls):
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def __matmul__(self, o):
        if isinstance(o, Isometry):
            a, b = self.m, o.m
            rows = []
            for i in range(3):
                row = []
                for j in range(3):
                    acc = None
                    for k in range(3):
                        x, y = a[i][k], b[k][j]
                        if x.is_zero() or y.is_zero():
                            continue
                        acc = x * y if acc is None else acc + x * y
                    row.append(acc if acc is not None else QuadExt(0))
                rows.append(row)
            return Isometry(rows)
        return self.apply(o)

    __mul__ = __matmul__

    def apply(self, v):
        return tuple(sum((self.m[i][k] * v[k] for k in range(3)), 0 * v[0]) for i in range(3))

    def adjoint(self):
        return Isometry([[self.m[j][i].conj() for j in range(3)] for i in range(3)])

    def trace(self):
        return self.m[0][0] + self.m[1][1] + self.m[2][2]

    def det(self):
        a = self.m
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))

    def preserves_form(self) -> bool:
        return self.adjoint() @ H_MAT @ self == H_MAT

    def inverse(self):
        if self.preserves_form():
            return H_MAT @ self.adjoint() @ H_MAT
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        a = self.m
        cof = [[(a[(j + 1) % 3][(i + 1) % 3] * a[(j + 2) % 3][(i + 2) % 3]
                 - a[(j + 1) % 3][(i + 2) % 3] * a[(j + 2) % 3][(i + 1) % 3]) / d
                for j in range(3)] for i in range(3)]
        return Isometry(cof)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Isometry.identity()
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def __sub__(self, o):
        return Isometry([[self.m[i][j] - o.m[i][j] for j in range(3)] for i in range(3)])

    def __eq__(self, o):
        return isinstance(o, Isometry) and self.m == o.m

    def __hash__(self):
        return hash(self.m)

    def is_scalar(self):
        """Returns c if M = c I, else None."""
        c = self.m[0][0]
        for i in range(3):
            for j in range(3):
                if (i == j and self.m[i][j] != c) or (i != j and not self.m[i][j].is_zero()):
                    return None
        return c

    def proj_equal(self, o: "Isometry") -> bool:
        """Equal up to a cube root of unity."""
        for i in range(3):
            for j in range(3):
                if not o.m[i][j].is_zero():
                    w = self.m[i][j] / o.m[i][j]
                    break
            else:
                continue
            break
        else:
            return all(x.is_zero() for r in self.m for x in r)
        if w * w * w != 1:
            return False
        return all(self.m[i][j] == w * o.m[i][j] for i in range(3) for j in range(3))

    def is_proj_identity(self) -> bool:
        c = self.is_scalar()
        return c is not None and c * c * c == 1

    def to_json(self):
        from .numeric.scalars import to_json
        return [[to_json(x) for x in r] for r in self.m]

    @classmethod
    def from_json(cls, obj):
        from .numeric.scalars import from_json
        return cls([[from_json(x) for x in r] for r in obj])

    def __repr__(self):
        return "Isometry(" + repr([list(r) for r in self.m]) + ")"


H_MAT = Isometry([[0, 0, 1], [0, 1, 0], [1, 0, 0]])

# ---------------------------------------------------------------- classification


class Kind(str, Enum):
    Identity = "Identity"
    Unipotent = "Unipotent"
    EllipticOfOrder = "EllipticOfOrder"
    RegularElliptic = "RegularElliptic"
    SpecialElliptic = "SpecialElliptic"
    Loxodromic = "Loxodromic"
    OtherParabolic = "OtherParabolic"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    order: int | None = None

    def __str__(self):
        return f"{self.kind.value}({self.order})" if self.order else self.kind.value


def trace_discriminant(tau) -> QuadExt:
    """|tau|^4 - 8 Re(tau^3) + 18 |tau|^2 - 27."""
    tau = lift(tau)
    a2 = tau.abs2()
    return a2 * a2 - 8 * (tau * tau * tau).real() + 18 * a2 - 27


def _pdivmod(a, b):
    a = list(a)
    q = [QuadExt(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(not x.is_zero() for x in a):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] = a[i + k] - f * c
        a.pop()
        while a and a[-1].is_zero():
            a.pop()
    return q, a


def _pgcd(a, b):
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return [x / a[-1] for x in a]


def charpoly(M: Isometry):
    """Coefficients (low->high) of det(xI - M) = x^3 - tr x^2 + c1 x - det."""
    a = M.m
    tr = M.trace()
    c1 = (a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0]
          + a[1][1] * a[2][2] - a[1][2] * a[2][1])
    return [-M.det(), c1, -tr, QuadExt(1)]


def classify_isometry(M: Isometry) -> Classification:
    if not M.preserves_form():
        raise NotAnIsometry("not an isometry: M*HM != H")
    if M.det() != 1:
        raise NotAnIsometry("determinant is not 1")
    if M.is_proj_identity():
        return Classification(Kind.Identity)
    tau = M.trace()
    I = Isometry.identity()
    if tau.is_real():
        if tau == 3:
            return Classification(Kind.Unipotent)
        for t, n in ((-1, 2), (0, 3), (1, 4)):
            if tau == t and (M ** n).is_proj_identity():
                return Classification(Kind.EllipticOfOrder, n)
    f = trace_discriminant(tau)
    s = f.sign()
    if s < 0:
        return Classification(Kind.RegularElliptic)
    if s > 0:
        return Classification(Kind.Loxodromic)
    # repeated eigenvalue
    p = charpoly(M)
    dp = [p[1], 2 * p[2], 3 * p[3]]
    g = _pgcd(p, dp)
    if len(g) == 3:
        # triple eigenvalue lam: g = (x - lam)^2
        lam = -g[1] / 2
        N = M - Isometry([[lam, 0, 0], [0, lam, 0], [0, 0, lam]])
        if (N @ N @ N).is_scalar() == 0 and N.is_scalar() != 0:
            return Classification(Kind.Unipotent)
        return Classification(Kind.Identity)
    lam = -g[0]
    q, _ = _pdivmod(p, [g[0], QuadExt(1)])
    q2, _ = _pdivmod(q, [g[0], QuadExt(1)])
    mu = -q2[0]
    L = Isometry([[lam, 0, 0], [0, lam, 0], [0, 0, lam]])
    Mu = Isometry([[mu, 0, 0], [0, mu, 0], [0, 0, mu]])
    if ((M - L) @ (M - Mu)).is_scalar() == 0:
        return Classification(Kind.SpecialElliptic)
    return Classification(Kind.OtherParabolic)


# ---------------------------------------------------------------- coordinates


@dataclass(frozen=True)
class HeisPoint:
    z: Any
    t: Any

    def horo(self) -> "HoroPoint":
        return HoroPoint(self.z, self.t, 0 * self.t)


@dataclass(frozen=True)
class HoroPoint:
    z: Any
    t: Any
    u: Any = 0

    def heis(self) -> HeisPoint:
        return HeisPoint(self.z, self.t)


def _as_horo(p) -> HoroPoint:
    if isinstance(p, HoroPoint):
        return p
    if isinstance(p, HeisPoint):
        return HoroPoint(p.z, p.t, 0)
    raise TypeError(f"expected a point, got {p!r}")


def _m_for(*xs):
    for x in xs:
        if isinstance(x, (CInterval, Interval)) or hasattr(x, "delta"):
            return None
    return EXACT


def standard_lift(p) -> tuple:
    """((-|z|^2 - u + i t)/2, z, 1)."""
    p = _as_horo(p)
    if _m_for(p.z, p.t, p.u) is EXACT:
        z, t, u = lift(p.z), lift(p.t), lift(p.u)
        return ((-z.abs2() - u + cplx(0, t)) / 2, z, QuadExt(1))
    m = IntervalMath()
    z = m.as_complex(p.z)
    t = m._r(p.t)
    u = m._r(p.u)
    half = m.c(Fraction(1, 2))
    q0 = CInterval((-(z.abs2()) - u) * half, t * half)
    return (q0, z, CInterval(m.c(1), m.c(0)))


def horospherical_coords(v):
    """Inverse of standard_lift; AtInfinity for multiples of q_inf."""
    if all(_is_exact(x) for x in v):
        v = tuple(lift(x) for x in v)
        s = herm_inner(v, v).real().sign()
        if s > 0:
            raise OutsideClosure("outside closure: positive vector")
        if v[2].is_zero():
            if v[1].is_zero():
                return AtInfinity
            raise OutsideClosure("outside closure")
        w = tuple(x / v[2] for x in v)
        z = w[1]
        t = 2 * w[0].imag()
        u = -2 * w[0].real() - z.abs2()
        return HoroPoint(z, t, u)
    # interval: divide by the last coordinate
    c = v[2]
    w0 = v[0] / c
    z = v[1] / c
    two = 2
    return HoroPoint(z, w0.im * two, -(w0.re * two) - z.abs2())


def heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    """(z,t)*(w,s) = (z+w, t+s+2 Im(z conj w))."""
    return HeisPoint(p.z + q.z, p.t + q.t + 2 * _im(p.z * _conj(q.z)))


def _im(x):
    return x.imag() if hasattr(x, "imag") and callable(x.imag) else x.im


def _re(x):
    return x.real() if hasattr(x, "real") and callable(x.real) else x.re


def translation(z, t) -> Isometry:
    """Heisenberg translation T_[z,t]."""
    z, t = lift(z), lift(t)
    return Isometry([[1, -z.conj(), -(z.abs2() - cplx(0, t)) / 2], [0, 1, z], [0, 0, 1]])


def rotation(e) -> Isometry:
    """Heisenberg rotation z -> e z for an exact unit complex e."""
    return Isometry([[1, 0, 0], [0, lift(e), 0], [0, 0, 1]])


def dilation(lam) -> Isometry:
    """(z, t) -> (lam z, lam^2 t), lam real positive."""
    lam = lift(lam)
    return Isometry([[lam, 0, 0], [0, 1, 0], [0, 0, 1 / lam]])


def heis_act(M: Isometry, p):
    """Action on a boundary point through lifts."""
    p = _as_horo(p)
    v = M.apply(standard_lift(p))
    h = horospherical_coords(v)
    if h is AtInfinity:
        return AtInfinity
    if isinstance(p, HoroPoint) and not _is_zero(p.u):
        return h
    return HeisPoint(h.z, h.t)


def _is_zero(x):
    if isinstance(x, int):
        return x == 0
    if isinstance(x, Fraction):
        return x == 0
    if isinstance(x, QuadExt):
        return x.is_zero()
    return False


def act_point(M: Isometry, p):
    """Act on any HeisPoint/HoroPoint and return the same kind."""
    p0 = _as_horo(p)
    h = horospherical_coords(M.apply(standard_lift(p0)))
    if h is AtInfinity or isinstance(p, HoroPoint):
        return h
    return HeisPoint(h.z, h.t)


# ---------------------------------------------------------------- Cygan metric


def cygan_distance4(p, q):
    """(|z-w|^2 + |u-v|)^2 + (t - s + 2 Im(z conj w))^2."""
    p, q = _as_horo(p), _as_horo(q)
    if _m_for(p.z, p.t, p.u, q.z, q.t, q.u) is EXACT:
        z, t, u = lift(p.z), lift(p.t), lift(p.u)
        w, s, v = lift(q.z), lift(q.t), lift(q.u)
        du = u - v
        if du.sign() < 0:
            du = -du
        a = (z - w).abs2() + du
        b = t - s + 2 * (z * w.conj()).imag()
        return a * a + b * b
    m = IntervalMath()
    z, w = m.as_complex(p.z), m.as_complex(q.z)
    t, s = m._r(p.t), m._r(q.t)
    u, v = m._r(p.u), m._r(q.u)
    a = (z - w).abs2() + abs(u - v)
    b = t - s + (z * w.conj()).im * 2
    return a.sqr() + b.sqr()


def cygan_distance(p, q):
    """Exact when the fourth root stays in the tower, else an interval."""
    d4 = cygan_distance4(p, q)
    if isinstance(d4, QuadExt):
        try:
            return tower_sqrt(tower_sqrt(d4))
        except ValueError:
            d4 = Interval.enclose(d4)
    return d4.sqrt().sqrt()


@dataclass(frozen=True)
class CyganSphere:
    """Cygan sphere with exact center and squared radius."""
    center: HeisPoint
    radius_sq: Any

    @property
    def radius(self):
        try:
            return tower_sqrt(self.radius_sq)
        except ValueError:
            return Interval.enclose(self.radius_sq).sqrt()


class Side(str, Enum):
    Interior = "Interior"
    On = "On"
    Exterior = "Exterior"
    Undecided = "Undecided"


def sphere_residual(s: CyganSphere, p):
    """|X|^2 - r^4 with X = |z-z0|^2 + u + i(t - t0 + 2 Im(z conj z0)).

    Negative inside, zero on the sphere, positive outside.
    """
    d4 = cygan_distance4(p, s.center.horo())
    r4 = lift(s.radius_sq) * lift(s.radius_sq)
    if isinstance(d4, QuadExt):
        return d4 - r4
    return d4 - Interval.enclose(r4)


def sphere_side(s: CyganSphere, p) -> Side:
    r = sphere_residual(s, p)
    if isinstance(r, QuadExt):
        k = r.sign()
        return Side.Interior if k < 0 else Side.Exterior if k > 0 else Side.On
    lo_, hi_ = (r.lo, r.hi) if isinstance(r, Interval) else (float(r.a), float(r.b))
    if hi_ < 0:
        return Side.Interior
    if lo_ > 0:
        return Side.Exterior
    return Side.Undecided


# ---------------------------------------------------------------- geographic coordinates


@dataclass(frozen=True)
class GeoPoint:
    """alpha in [-pi/2, pi/2], beta in [0, pi), w in [-sqrt(cos alpha), sqrt(cos alpha)]."""
    alpha: Any
    beta: Any
    w: Any


class GeoDomainError(ValueError):
    pass


def _check_geo_exact(g: GeoPoint):
    a, b = g.alpha, g.beta
    if isinstance(a, PiAngle) and not (-Fraction(1, 2) <= a.q <= Fraction(1, 2)):
        raise GeoDomainError("alpha out of [-pi/2, pi/2]")
    if isinstance(b, PiAngle) and not (0 <= b.q < 1):
        raise GeoDomainError("beta out of [0, pi)")
    ca = EXACT.cos(a)
    w = lift(g.w)
    if (w * w - ca).sign() > 0:
        raise GeoDomainError("|w| exceeds sqrt(cos alpha)")


def geographic_lift(s: CyganSphere, g: GeoPoint, m=None):
    """T_[center] (-r^2 e^{-i alpha}/2, r w e^{i(-alpha/2 + beta)}, 1)."""
    exact = m is None and isinstance(g.alpha, (PiAngle, AcosAngle)) and isinstance(g.beta, PiAngle) \
        and _is_exact(g.w)
    T = translation(s.center.z, s.center.t)
    if exact:
        _check_geo_exact(g)
        r2 = lift(s.radius_sq)
        E = EXACT.expi(-g.alpha)
        w = lift(g.w)
        # w e^{-i alpha/2} as a signed principal root of w^2 e^{-i alpha}
        if w.is_zero():
            wh = QuadExt(0)
        else:
            wh = csqrt_principal(w * w * E)
            if w.sign() < 0:
                wh = -wh
        r = tower_sqrt(r2)
        v = (-r2 * E / 2, r * wh * EXACT.expi(g.beta), QuadExt(1))
        return T.apply(v)
    m = m or IntervalMath()
    a = m._a(g.alpha)
    b = m._a(g.beta)
    w = m._r(g.w)
    r2 = m.c(s.radius_sq)
    r = m.sqrt(r2)
    E = m.expi(-a)
    half = m.c(Fraction(1, 2))
    v = (E * (-(r2) * half), m.expi(b - a * half) * (r * w), m.cplx(1, 0))
    return _apply_iv(T, v, m)


def _apply_iv(T: Isometry, v, m):
    out = []
    for i in range(3):
        acc = None
        for k in range(3):
            c = m.as_complex(T.m[i][k])
            term = c * v[k]
            acc = term if acc is None else acc + term
        out.append(acc)
    return tuple(out)


def geo_heis(s: CyganSphere, alpha, theta, m, radius=None):
    """Heisenberg coordinates (x, y, t) of the boundary point of s at (alpha, theta).

    theta merges beta and the sign of w: w e^{i beta} = sqrt(cos alpha) e^{i theta}.
    Returns interval coordinates without going through lifts.
    """
    r = radius if radius is not None else m.sqrt(m.c(s.radius_sq))
    r2 = m.c(s.radius_sq)
    half = m.c(Fraction(1, 2))
    ca = m.cos(alpha)
    rho = r * m.sqrt(ca)
    ang = theta - alpha * half
    x0 = rho * m.cos(ang)
    y0 = rho * m.sin(ang)
    t0 = r2 * m.sin(alpha)
    cz = lift(s.center.z)
    cx, cy, ct = m.c(cz.real()), m.c(cz.imag()), m.c(s.center.t)
    # (cz, ct) * (z0, t0): t = ct + t0 + 2 Im(cz conj z0)
    x = cx + x0
    y = cy + y0
    t = ct + t0 + (cy * x0 - cx * y0) * 2
    return x, y, t


def bergman_cosh2(p, q):
    """cosh^2(rho/2) = <p,q><q,p> / (<p,p><q,q>) for negative exact vectors (validation helper)."""
    pq = herm_inner(p, q)
    return (pq * pq.conj()) / (herm_inner(p, p) * herm_inner(q, q))
