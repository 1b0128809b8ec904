"""Interval exclusion of spinal spheres from parameterized patches.

A patch is a map (u, v) in [0, 1]^2 -> (x, y, t). A sphere S is excluded
from a box when the mean-value enclosure of its Cygan residual is positive.
Edges of the unit square that lie on S (residual identically zero there)
are handled by the inward derivative: a box touching such an edge is
certified when the derivative normal to the edge is positive on the box.
Corners where that argument degenerates are excised as eps-squares.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F

from ..bnp import EXCLUDED, UNKNOWN, branch_and_prune
from ..numeric.dual import DualBackend, variables, variables2
from ..numeric.interval import Interval
from ..numeric.scalars import lift
from ..report import Undecided
from ..trig import IntervalMath, PiAngle, AcosAngle

MI = IntervalMath()
MD = IntervalMath(DualBackend())


def enclose_exact(x) -> Interval:
    if isinstance(x, (PiAngle, AcosAngle)):
        return x.enclose()
    return Interval.enclose(x)


def affine(lo, hi):
    """u in [0, 1] -> lo + u (hi - lo) with enclosed endpoints."""
    L, H = enclose_exact(lo), enclose_exact(hi)
    W = H - L
    return lambda u: L + u * W


def sphere_consts(S):
    z = lift(S.center.z)
    return (Interval.enclose(z.real()), Interval.enclose(z.imag()), Interval.enclose(S.center.t),
            Interval.enclose(lift(S.radius_sq) * lift(S.radius_sq)))


def residual_of(xyt, K):
    cx, cy, ct, r4 = K
    x, y, t = xyt
    dx, dy = x - cx, y - cy
    a = dx.sqr() + dy.sqr()
    b = t - ct + (y * cx - x * cy) * 2
    return a.sqr() + b.sqr() - r4


def enclose_fn(f, box):
    """Mean-value enclosure and gradient enclosure of a scalar map on a box.

    f(u, v, m) must accept both Interval and Dual arguments.
    """
    B = [Interval(lo, hi) for lo, hi in box]
    try:
        xs = variables(B)
        full = f(xs[0], xs[1], MD)
    except (ZeroDivisionError, ValueError):
        return f(B[0], B[1], MI), None
    mids = [Interval(b.mid) for b in B]
    mv = f(mids[0], mids[1], MI)
    for g, b, c in zip(full.d, B, mids):
        mv = mv + g * (b - c)
    lo, hi = max(mv.lo, full.v.lo), min(mv.hi, full.v.hi)
    if lo > hi:
        lo, hi = full.v.lo, full.v.hi
    return Interval(lo, hi), full.d


def _subtract(box, rect):
    """box minus the open interior of rect, as a list of boxes."""
    (u0, u1), (v0, v1) = box
    (a0, a1), (b0, b1) = rect
    if a1 <= u0 or a0 >= u1 or b1 <= v0 or b0 >= v1:
        return [box]
    out = []
    if u0 < a0:
        out.append(((u0, a0), (v0, v1)))
    if a1 < u1:
        out.append(((a1, u1), (v0, v1)))
    cu0, cu1 = max(u0, a0), min(u1, a1)
    if v0 < b0:
        out.append(((cu0, cu1), (v0, b0)))
    if b1 < v1:
        out.append(((cu0, cu1), (b1, v1)))
    return out


@dataclass
class Exclusion:
    """Parameters of one exclusion run."""
    name: str
    fn: object                      # (u, v, m) -> scalar, positive means separated
    edges: tuple = ()               # ("u"|"v", 0|1) edges on which fn vanishes
    points: tuple = ()              # extra (u, v) touching points
    eps: float = 2.0 ** -10
    strict_edges: bool = True       # corner squares at every vanishing-edge endpoint

    def corners(self):
        pts = list(self.points)
        if self.strict_edges:
            for ax, val in self.edges:
                for w in (0.0, 1.0):
                    pts.append((float(val), w) if ax == "u" else (w, float(val)))
        return sorted(set(pts))


def run_exclusion(ex: Exclusion, depth: int, max_boxes: int = 400_000):
    """Certify fn > 0 on the unit square minus eps-corners, edges allowed to vanish."""
    e = ex.eps
    rects = [((u - e, u + e), (v - e, v + e)) for u, v in ex.corners()]
    stats = {"edge": 0, "value": 0}

    def pred(box):
        pieces = [box]
        for r in rects:
            pieces = [q for p in pieces for q in _subtract(p, r)]
        for p in pieces:
            enc, grad = enclose_fn(ex.fn, p)
            if enc.lo > 0:
                stats["value"] += 1
                continue
            if not _edge_ok(ex, p, grad):
                return UNKNOWN
            stats["edge"] += 1
        return EXCLUDED

    res = branch_and_prune(((0.0, 1.0), (0.0, 1.0)), pred, depth, max_boxes=max_boxes)
    ev = {"name": ex.name, "eps": e, "excised": [list(c) for c in ex.corners()],
          "vanishing_edges": [list(x) for x in ex.edges], **res.summary(), **stats}
    if not res.empty:
        raise Undecided(f"{ex.name}: {len(res.survivors)} boxes undecided", ev)
    return ev


def grad_mean_value(f, box, k):
    """Second-order enclosure of d_k f: d_k f(mid) + Hessian(box) . (box - mid)."""
    B = [Interval(lo, hi) for lo, hi in box]
    mids = [Interval(b.mid) for b in B]
    try:
        gc = f(*variables(mids), MD).d[k]
        full = f(*variables2(B), MD)
    except (ZeroDivisionError, ValueError):
        return None
    row = full.d[k]
    g = gc
    for h, b, c in zip(row.d, B, mids):
        g = g + h * (b - c)
    lo, hi = max(g.lo, row.v.lo), min(g.hi, row.v.hi)
    return Interval(lo, hi) if lo <= hi else row.v


def _edge_ok(ex, p, grad):
    if grad is None:
        return False
    (u0, u1), (v0, v1) = p
    touching = []
    for ax, val in ex.edges:
        k = 0 if ax == "u" else 1
        lo, hi = (u0, u1) if k == 0 else (v0, v1)
        if val == 0 and lo == 0.0:
            touching.append((k, 1))
        elif val == 1 and hi == 1.0:
            touching.append((k, -1))
    for k, sg in touching:
        if (grad[k].lo > 0) if sg > 0 else (grad[k].hi < 0):
            return True
    # first order too loose next to a corner where two vanishing edges meet
    for k, sg in touching:
        g = grad_mean_value(ex.fn, p, k)
        if g is not None and ((g.lo > 0) if sg > 0 else (g.hi < 0)):
            return True
    return False
