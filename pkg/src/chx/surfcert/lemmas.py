"""Projection, distance and inequality lemmas for the ruled patch E_B^l.

Three kinds of evidence:

* exact polynomial certificates after x = sin s (cos s = -sqrt(1 - x^2) on
  [5pi/6, pi]), with the trigonometric reductions checked as identities in
  Q[x, y]/(y^2 + x^2 - 1);
* interval exclusions over the (s, a) square (``cert.run_exclusion``);
* finite differences of the quartic-in-a distance functions, which a
  five-point stencil differentiates exactly up to rounding.
"""
from __future__ import annotations

from fractions import Fraction as F

from ..chgeom import geo_heis
from ..config import Config
from ..fordcert import sid, sphere_for
from ..numeric.interval import Interval
from ..numeric.poly import (NonNegative, NonPositive, Negative, Positive, Poly, SqrtPoly,
                            certify_sign)
from ..numeric.scalars import QuadExt
from ..report import run_check
from ..trig import PiAngle
from .cert import MI, Exclusion, affine, residual_of, run_exclusion, sphere_consts
from .surfaces import surface_xyt

P = PiAngle
S_LO, S_HI = P(F(5, 6)), P(1)
s_of = affine(S_LO, S_HI)


# ---------------------------------------------------------------- helpers


def patch_fn(pid, g, s_map=s_of):
    """(u, v, m) -> g(x, y, t) on a ruled patch with s = s_map(u), a = v."""
    return lambda u, v, m: g(surface_xyt(pid, s_map(u), v, m))


def sphere_residual_fn(kind, k):
    K = sphere_consts(sphere_for(sid(kind, k)))
    return lambda xyt: residual_of(xyt, K)


def disk_fn(cx, cy, r2, inside=False):
    """|z - c|^2 - r^2 (or its negative)."""
    c = (Interval.enclose(cx), Interval.enclose(cy), Interval.enclose(r2))

    def g(xyt):
        x, y, _ = xyt
        d = (x - c[0]).sqr() + (y - c[1]).sqr() - c[2]
        return -d if inside else d
    return g


def chart_fn(kind, k, g):
    """g on the spinal sphere of I_k^kind, alpha = pi (u - 1/2), theta = 2 pi v."""
    S = sphere_for(sid(kind, k))

    def f(u, v, m):
        a = (u - F(1, 2)) * m.pi
        th = v * m.pi * 2
        return g(geo_heis(S, a, th, m))
    return f


def _ex(name, fn, edges=(), points=(), cfg=None, strict=True):
    cfg = cfg or Config()
    ex = Exclusion(name, fn, tuple(edges), tuple(points), eps=cfg.touch_eps, strict_edges=strict)
    ev = run_exclusion(ex, cfg.depth)
    return True, ev


def samples(lo, hi, n):
    """n interval points evenly spread over [lo, hi] (exact endpoints enclosed)."""
    L, H = affine(lo, hi)(Interval(0.0)), affine(lo, hi)(Interval(1.0))
    out = []
    for j in range(n):
        w = j / (n - 1)
        out.append(L * (1 - w) + H * w)
    return out


# ---------------------------------------------------------------- trig as Q[x, y]


def trig_tables(kmax=8):
    """cos(ks), sin(ks) as SqrtPoly in x = sin s with cos s = -y."""
    X, Y = SqrtPoly.x(), SqrtPoly.y()
    C = -Y
    cs, sn = [SqrtPoly(1), C], [SqrtPoly(0), X]
    for _ in range(2, kmax + 1):
        c, s = cs[-1], sn[-1]
        cs.append(c * C - s * X)
        sn.append(s * C + c * X)
    return cs, sn


def lemma43_data():
    """Every polynomial the inequality lemma rests on."""
    x = Poly.x()
    X, Y = SqrtPoly.x(), SqrtPoly.y()
    cs, sn = trig_tables()
    # f1 = 4(P - Q), P = 4 cos^{3/2}(2s)(sin s/2 - cos s/2), P^2 = 16 cos^3 2s (1 - sin s)
    P2_1 = 16 * cs[2] * cs[2] * cs[2] * (1 - X)
    Q1 = -sn[3] + cs[4] - sn[1] + 3
    rhs1 = (-21 + 9 * cs[6] - 10 * cs[4] + 6 * sn[5] - 2 * sn[3] + 22 * sn[1] + 23 * cs[2]
            - cs[8] - 2 * sn[7])
    F1 = -32 * x * (2 * x - 1) * (2 * x ** 6 - x ** 5 + 2 * x ** 3 - 2 * x ** 2 - x + 1)
    # f2 = 4(P2 + Q2), P2 = (24c^3 + 3c + s') sqrt(cos 2s), c = cos s/2, s' = sin s/2
    c2, s2, cs_ = (1 - Y) * F(1, 2), (1 + Y) * F(1, 2), X * F(1, 2)
    P2_2 = (576 * c2 * c2 * c2 + 144 * c2 * c2 + 9 * c2 + 48 * c2 * cs_ + 6 * cs_ + s2) * cs[2]
    Q2_shown = 13 * cs[1] - 7 * sn[1] + 4 * cs[2] + cs[3] - 2 * sn[2] + 10
    Q2 = 13 * cs[1] - 7 * sn[1] + 3 * cs[2] + cs[3] - 2 * sn[2] + 10
    rhs2 = (-306 + 32 * sn[4] - cs[6] + 248 * sn[2] + 95 * cs[4] + 4 * sn[5] + 109 * sn[3]
            - 268 * cs[1] + 271 * sn[1] + 212 * cs[2] + 256 * cs[3] + 12 * cs[5])
    G = (39 - 6 * X * X + 5 * X) * Y + X ** 4 + F(5, 2) * X ** 3 + F(47, 2) * X * X - F(35, 8) * X - F(309, 8)
    F2 = 32 * (X - F(1, 2)) * X * G
    low = 1 - x ** 2 * F(1, 2) - x ** 4 * F(1, 6)
    m = x ** 6 - x ** 5 * F(5, 6) - x ** 4 * F(5, 2) - 2 * x ** 2 + x * F(5, 8) + F(3, 8)
    coef = 39 - 6 * x ** 2 + 5 * x
    rest = x ** 4 + x ** 3 * F(5, 2) + x ** 2 * F(47, 2) - x * F(35, 8) - F(309, 8)
    return dict(P2_1=P2_1, Q1=Q1, rhs1=rhs1, F1=F1, P2_2=P2_2, Q2=Q2, Q2_shown=Q2_shown,
                rhs2=rhs2, F2=F2, low=low, m=m, coef=coef, rest=rest)


def _cert(p, claim, roots=(), note=""):
    return certify_sign(p, 0, F(1, 2), claim, roots, note).to_dict()


def lemma43_checks() -> list:
    D = lemma43_data()
    x = Poly.x()
    half = F(1, 2)

    def f1_identities():
        ok1 = 2 * (D["P2_1"] - D["Q1"] * D["Q1"]) == D["rhs1"]
        ok2 = D["rhs1"] == SqrtPoly(D["F1"])
        return ok1 and ok2, {"product_identity": ok1, "substitution_identity": ok2,
                             "F1": repr(D["F1"]), "note": "(sin s/2 - cos s/2)^2 = 1 - sin s"}

    def f1_sign():
        # P >= 0 because cos 2s >= 1/2 and s/2 in [5pi/12, pi/2]; Q > 0 by Sturm
        q = D["Q1"]
        if not q.q.is_zero():
            return False, {"error": "cofactor Q is not a polynomial in sin s"}
        c_q = _cert(q.p, Positive, note="cofactor -sin3s+cos4s-sin s+3")
        c_f = _cert(D["F1"], NonNegative, (0, half), "F1 on [0, 1/2]")
        return c_q["ok"] and c_f["ok"] and c_f["allowedRoots"] == ["0", "1/2"], \
            {"cofactor": c_q, "F1": c_f, "zero_set_s": ["5pi/6", "pi"]}

    def f2_identities():
        shown = 2 * (D["P2_2"] - D["Q2_shown"] * D["Q2_shown"]) == D["rhs2"]
        fixed = 2 * (D["P2_2"] - D["Q2"] * D["Q2"]) == D["rhs2"]
        sub = D["rhs2"] == D["F2"]
        return fixed and sub, {"product_identity_with_3cos2s": fixed,
                               "product_identity_as_displayed_4cos2s": shown,
                               "substitution_identity": sub,
                               "discrepancy": None if shown else
                               "the displayed cofactor needs 3cos(2s) (f2/4), not 4cos(2s)"}

    def f2_sign():
        Q2 = D["Q2"]
        A, B = Q2.p, Q2.q                      # Q2 = A + B y
        certs = {
            "A_positive": _cert(A, Positive, note="rational part of the cofactor"),
            "minusB_positive": _cert(-B, Positive, note="minus the sqrt part of the cofactor"),
            # A <= -B y  <=>  A^2 - (1 - x^2) B^2 < 0 (both sides positive)
            "cofactor_negative": _cert(A * A - (1 - x * x) * B * B, Negative,
                                       note="Q2 < 0, so P2 + Q2 has the sign of P2^2 - Q2^2"),
            "sqrt_lower_bound_nonneg": _cert(D["low"], Positive, note="1 - x^2/2 - x^4/6 > 0"),
            "sqrt_lower_bound": _cert((1 - x * x) - D["low"] * D["low"], NonNegative, (0,),
                                      "sqrt(1-x^2) >= 1 - x^2/2 - x^4/6"),
            "coef_positive": _cert(D["coef"], Positive, note="39 - 6x^2 + 5x > 0"),
            "minorant_positive": _cert(D["m"], Positive, note="G(x) >= m(x) > 0"),
            "outer_factor": _cert(x * (x - half), NonPositive, (0, half), "x(x - 1/2) <= 0"),
        }
        minorant_ok = D["coef"] * D["low"] + D["rest"] == D["m"]
        ok = minorant_ok and all(c["ok"] for c in certs.values())
        return ok, {**certs, "minorant_identity": minorant_ok, "zero_set_s": ["5pi/6", "pi"]}

    return [
        run_check("lemma4.3.F1.identities", "f1 reduces to F1(sin s) through a positive cofactor",
                  f1_identities),
        run_check("lemma4.3.F1.sign", "F1 >= 0 on [0, 1/2] with zeros exactly {0, 1/2}", f1_sign),
        run_check("lemma4.3.F2.identities", "f2 reduces to F2(sin s) through a positive cofactor",
                  f2_identities),
        run_check("lemma4.3.F2.sign", "F2 <= 0 on [0, 1/2] with zeros exactly {0, 1/2}", f2_sign),
    ]


# ---------------------------------------------------------------- closed forms f1, f2, g, h


def f1_closed(s, m=MI):
    c2 = m.cos(s * 2)
    return (c2 * m.sqrt(c2) * (m.sin(s * F(1, 2)) - m.cos(s * F(1, 2))) * 16
            + (m.sin(s * 3) - m.cos(s * 4) + m.sin(s)) * 4 - 12)


def f2_closed(s, m=MI):
    c, sh = m.cos(s * F(1, 2)), m.sin(s * F(1, 2))
    return ((c * c * c * 96 + c * 12 + sh * 4) * m.sqrt(m.cos(s * 2)) + m.cos(s) * 52 - m.sin(s) * 28
            + m.cos(s * 2) * 12 + m.cos(s * 3) * 4 - m.sin(s * 2) * 8 + 40)


def g_shown(xyt):
    x, y, t = xyt
    return (x.sqr() + (y - 1).sqr()).sqr() + (t - x * 2).sqr()


def h_shown(xyt):
    x, y, t = xyt
    return ((x + 2).sqr() + y.sqr()).sqr() + (t - y * 2).sqr()


def h_true(xyt):
    """Cygan d^4 to the I_1^* center (-2, 0)."""
    x, y, t = xyt
    return ((x + 2).sqr() + y.sqr()).sqr() + (t - y * 4).sqr()


def fd5(fun, s, a0, h=F(1, 1024)):
    """Five-point central difference in a; exact for quartics up to rounding."""
    H = Interval.enclose(h)
    vals = [fun(surface_xyt("EB_l", s, Interval.enclose(a0) + H * k, MI)) for k in (-2, -1, 1, 2)]
    return (vals[0] - vals[1] * 8 + vals[2] * 8 - vals[3]) / (H * 12)


def fd_checks(cfg: Config) -> list:
    n = cfg.samples

    def agree(fun, a0, closed):
        worst, bad = 0.0, []
        for s in samples(S_LO, S_HI, n):
            d = fd5(fun, s, a0)
            c = closed(s)
            worst = max(worst, abs(d.mid - c.mid))
            if not d.overlaps(c):
                bad.append(repr(s.mid))
        return bad, worst

    def g_fd():
        bad, worst = agree(g_shown, 0, f1_closed)
        return not bad, {"samples": n, "max_mid_gap": worst, "disagree_at": bad[:5],
                         "center": "B^-1(q_inf) = center of I_0^+", "stencil": "5-point, h = 2^-10"}

    def g_is_cygan():
        # the displayed g is the Cygan d^4 to the I_0^+ center: compare at samples
        K = sphere_consts(sphere_for(sid("+", 0)))
        r4 = K[3]
        bad = 0
        for s in samples(S_LO, S_HI, 50):
            for a in (0.0, 0.5, 1.0):
                p = surface_xyt("EB_l", s, Interval(a), MI)
                if not (g_shown(p) - r4).overlaps(residual_of(p, K)):
                    bad += 1
        return bad == 0, {"mismatches": bad}

    def h_fd():
        bad, worst = agree(h_shown, 1, f2_closed)
        return not bad, {"samples": n, "max_mid_gap": worst, "disagree_at": bad[:5],
                         "stencil": "5-point, h = 2^-10"}

    def h_form():
        # the displayed h uses t - 2y; the I_1^* center (-2, 0) gives t - 4y
        gaps, neg = [], True
        for s in samples(S_LO, S_HI, 101):
            d_true = fd5(h_true, s, 1)
            d_shown = fd5(h_shown, s, 1)
            gaps.append(abs(d_true.mid - d_shown.mid))
            neg = neg and d_true.hi <= 1e-9
        K = sphere_consts(sphere_for(sid("*", 1)))
        p = surface_xyt("EB_l", Interval(2.9), Interval(0.5), MI)
        matches_true = (h_true(p) - K[3]).overlaps(residual_of(p, K))
        return matches_true and neg, {
            "discrepancy": "displayed h has (t - 2y)^2; the Cygan distance to (-2, 0, 0) has (t - 4y)^2",
            "max_derivative_gap": max(gaps), "true_derivative_nonpositive_at_samples": neg,
            "f2_matches": "the displayed h"}

    return [
        run_check("lemma4.fd.g", "dg/da at a=0 equals f1 (finite differences, 10^3 samples)", g_fd),
        run_check("lemma4.fd.g_center", "g is the Cygan distance to the I_0^+ center", g_is_cygan),
        run_check("lemma4.fd.h", "dh/da at a=1 equals f2 (finite differences, 10^3 samples)", h_fd),
        run_check("lemma4.fd.h_center", "displayed h differs from the Cygan distance to the I_1^* center",
                  h_form),
    ]


# ---------------------------------------------------------------- lemma4.1: spinal curves


def lemma41_checks(cfg: Config) -> list:
    from .curves import base_xyt

    def c5_vs_circle():
        fn = lambda u, v, m: disk_fn(0, 0, 1)(base_xyt("C5", s_of(u), m))
        return _ex("Pi(C5) vs unit circle", fn, [("u", 0), ("u", 1)], (), cfg, strict=False)

    def contained(cx, cy):
        def fn():
            f = patch_fn("EB_l", disk_fn(cx, cy, 2, inside=True))
            return _ex(f"Pi(EB_l) in D({cx}+{cy}i)", f, [("u", 1)], (), cfg)
        return fn

    def avoids(cx, cy, r2, edges):
        def fn():
            f = patch_fn("EB_l", disk_fn(cx, cy, r2))
            return _ex(f"Pi(EB_l) vs D({cx}+{cy}i)", f, edges, (), cfg)
        return fn

    def inner_product_display():
        # -d_l . d_u with d_l = d(x, y)/da at a = 1 and d_u = (cos s, sin s)
        bad = 0
        for s in samples(S_LO, S_HI, cfg.samples):
            x1, y1, _ = base_xyt("C1", s, MI)
            x5, y5, _ = base_xyt("C5", s, MI)
            ip = -((x1 - x5) * MI.cos(s) + (y1 - y5) * MI.sin(s))
            c2 = MI.cos(s * 2)
            l1 = (MI.sin(s * F(1, 2)) - MI.cos(s * F(1, 2))) * MI.sqrt(c2) + MI.sin(s) - 1
            w = MI.sin(MI.pi * F(1, 4) - s * F(1, 2))
            sq2 = MI.sqrt(MI.c(2))
            l2 = -(sq2 * w) * (sq2 * w + MI.sqrt(c2))
            if not (ip.overlaps(l1) and l1.overlaps(l2)):
                bad += 1
        return bad == 0, {"samples": cfg.samples, "mismatches": bad}

    def inner_product_sign():
        # -sqrt2 sin(pi/4 - s/2) > 0 on the range; the second factor >= 0 iff
        # cos 2s >= 2 sin^2(pi/4 - s/2) = 1 - sin s, i.e. x - 2x^2 >= 0
        x = Poly.x()
        c = certify_sign(x - 2 * x * x, 0, F(1, 2), NonNegative, (0, F(1, 2)),
                         "cos 2s - (1 - sin s) with x = sin s").to_dict()
        return c["ok"], {"certificate": c, "first_factor": "pi/4 - s/2 in [-pi/4, -pi/6]"}

    def far_disks():
        # the lens D(i, sqrt2) & D(-2+i, sqrt2) has x in [-sqrt2, -2+sqrt2]
        s2 = QuadExt.sqrt(2)
        right = (-4 + s2) - (-s2)          # rightmost point of any disk with k >= 2, minus lens left
        left = (2 - s2) - (-2 + s2)        # leftmost point of any disk with k <= -1, minus lens right
        ok = right.sign() < 0 and left.sign() > 0
        return ok, {"k>=2_gap": float(right.base.re) + float(right.coeff.re) * 2 ** 0.5,
                    "k<=-1_gap": float(left.base.re) + float(left.coeff.re) * 2 ** 0.5,
                    "note": "every projected disk has radius <= sqrt2 and center x = -2k"}

    def proj_avoids_interior():
        f = patch_fn("EB_l", disk_fn(0, 0, 1))
        return _ex("Pi(EB_l) vs closed unit disk", f, [("v", 1), ("u", 0), ("u", 1)], (), cfg)

    return [
        run_check("lemma4.1.curve", "Pi(C5) meets the unit circle only at Pi(y1), Pi(x1)", c5_vs_circle),
        run_check("lemma4.1.contain.I0p", "Pi(EB_l) lies in the projected disk of I_0^+", contained(0, 1)),
        run_check("lemma4.1.contain.I1p", "Pi(EB_l) lies in the projected disk of I_1^+", contained(-2, 1)),
        run_check("lemma4.1.i.I0m", "Pi(EB_l) meets Pi(I_0^-) only at Pi(x1)", avoids(0, -1, 2, [("u", 1)])),
        run_check("lemma4.1.i.I1m", "Pi(EB_l) meets Pi(I_1^-) only at Pi(x1)", avoids(-2, -1, 2, [("u", 1)])),
        run_check("lemma4.1.ii.display", "displayed inner product equals -d_l . d_u (10^3 samples)",
                  inner_product_display),
        run_check("lemma4.1.ii.sign", "inner product >= 0 on [5pi/6, pi]", inner_product_sign),
        run_check("lemma4.1.ii.meet", "Pi(EB_l) meets Pi(I_0^*) exactly in Pi(C1)", proj_avoids_interior),
        run_check("lemma4.1.iii", "Pi(EB_l) misses every projected disk with k not in {0, 1}", far_disks),
    ]


# ---------------------------------------------------------------- lemma4.2: distance functionals


def _L1(xyt):
    x, y, t = xyt
    return t - (x + 1 + y) * 3


def lemma42_checks(cfg: Config) -> list:

    def plane_patch():
        f = patch_fn("EB_l", lambda p: -_L1(p))
        return _ex("plane vs EB_l", f, (), [(1.0, 1.0)], cfg)

    def plane_sphere():
        f = chart_fn("+", 1, _L1)
        return _ex("plane vs I_1^+", f, (), (), cfg)

    def plane_display():
        # the displayed parameterization of I_1^+ and the displayed value of the functional
        S = sphere_for(sid("+", 1))
        K = sphere_consts(S)
        bad_on, bad_val = 0, 0
        n = int(round(cfg.samples ** 0.5))
        for al in samples(-P(F(1, 2)), P(F(1, 2)), n):
            for be in samples(P(0), P(1), n):
                for sg in (1, -1):
                    r = MI.sqrt(MI.cos(al) * 2) * sg
                    ang = be - al * F(1, 2)
                    ca, sa = MI.cos(ang), MI.sin(ang)
                    # v0 = 2i - e^{-i al} + (2 + i) r e^{i ang} - 5/2, z = -2 + i + r e^{i ang}
                    x = r * ca - 2
                    y = r * sa + 1
                    t = (MI.sin(al) + 2 + r * (ca + sa * 2)) * 2
                    res = residual_of((x, y, t), K)
                    if res.lo > 1e-9 or res.hi < -1e-9:
                        bad_on += 1
                    u = al * F(1, 2) - be
                    shown = -(r * (MI.cos(u) + MI.sin(u))) + MI.sin(al) * 2 + 4
                    if not shown.overlaps(_L1((x, y, t))):
                        bad_val += 1
        return bad_on == 0 and bad_val == 0, {"off_sphere": bad_on, "value_mismatch": bad_val,
                                              "samples": 2 * n * n}

    def plane_bound():
        f = lambda u, v, m: (lambda al: m.sin(al) * 2 + 4 - m.sqrt(m.cos(al)) * 2)((u - F(1, 2)) * m.pi)
        return _ex("4 + 2 sin a - 2 sqrt(cos a)", f, (), (), cfg, strict=False)

    return [
        run_check("lemma4.2.i", "EB_l meets I_0^+ exactly in C5",
                  lambda: _ex("EB_l vs I_0^+", patch_fn("EB_l", sphere_residual_fn("+", 0)),
                              [("v", 0), ("u", 0)], (), cfg)),
        run_check("lemma4.2.ii", "EB_l meets I_1^* exactly at x2",
                  lambda: _ex("EB_l vs I_1^*", patch_fn("EB_l", sphere_residual_fn("*", 1)),
                              (), [(1.0, 1.0)], cfg)),
        run_check("lemma4.2.iii.patch", "t - 3(x + 1 + y) <= 0 on EB_l, zero only at x2", plane_patch),
        run_check("lemma4.2.iii.sphere", "t - 3(x + 1 + y) > 0 on I_1^+", plane_sphere),
        run_check("lemma4.2.iii.display", "displayed chart of I_1^+ and functional value agree (samples)",
                  plane_display),
        run_check("lemma4.2.iii.bound", "-2 sqrt(cos a) + 2 sin a + 4 > 0 on [-pi/2, pi/2]", plane_bound),
    ]


def run_lemma4(cfg: Config) -> list:
    return lemma41_checks(cfg) + lemma42_checks(cfg) + lemma43_checks() + fd_checks(cfg)
