"""Exact scalars, intervals, Sturm certificates and dual numbers."""
import math
from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from chx.numeric.dual import Dual, mean_value, variables, variables2
from chx.numeric.interval import Interval, MPBackend
from chx.numeric.poly import (NonNegative, Poly, Positive, SignClaimError, certify_sign,
                              count_closed, sturm_count)
from chx.numeric.scalars import GaussianRational, MixedRadicandError, QuadExt, tower_sqrt

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40)
gauss = st.builds(GaussianRational, rats, rats)
quad2 = st.builds(lambda a, b: QuadExt(a, b, 2 if b != 0 else None), gauss, gauss)
small = st.floats(min_value=-20, max_value=20, allow_nan=False)


@given(quad2, quad2, quad2)
def test_quadext_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(quad2)
def test_quadext_inverse(a):
    assume(not a.is_zero())
    assert a * a.inverse() == 1


def test_sqrt_identities():
    r2 = QuadExt.sqrt(2)
    assert r2 * r2 == 2
    assert tower_sqrt(8) == 2 * r2
    with pytest.raises(MixedRadicandError):
        _ = QuadExt.sqrt(2) + QuadExt.sqrt(3)


@given(rats, rats)
def test_real_quad_sign_matches_float(p, q):
    x = QuadExt(p, q, 2 if q else None)
    v = float(p) + float(q) * math.sqrt(2)
    assume(abs(v) > 1e-9)
    assert x.sign() == (1 if v > 0 else -1)


@given(small, small, small, small)
def test_interval_mul_contains(a, b, c, d):
    x, y = Interval(min(a, b), max(a, b)), Interval(min(c, d), max(c, d))
    z = x * y
    for u in (x.lo, x.hi, x.mid):
        for v in (y.lo, y.hi, y.mid):
            assert z.contains(u * v)


@given(st.floats(min_value=-10, max_value=10), st.floats(min_value=0, max_value=3))
def test_interval_trig_encloses_mpmath(lo, w):
    x = Interval(lo, lo + w)
    for t in (x.lo, x.mid, x.hi):
        c, s = mpmath.cos(mpmath.mpf(t)), mpmath.sin(mpmath.mpf(t))
        assert x.cos().lo <= c <= x.cos().hi
        assert x.sin().lo <= s <= x.sin().hi


def test_fraction_enclosure_is_outward():
    x = Interval.enclose(F(1, 3))
    assert F(x.lo) < F(1, 3) < F(x.hi)


def test_mp_backend_sqrt2():
    bk = MPBackend(128)
    r = bk.sqrt(2)
    with mpmath.workdps(60):
        true = mpmath.sqrt(2)
        assert mpmath.mpf(r.a) <= true <= mpmath.mpf(r.b)
    assert float(r.b - r.a) < 1e-30


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=8), min_size=1, max_size=5))
def test_sturm_count_matches_sympy(roots):
    p = Poly.from_roots(roots) * Poly([1, 0, 1])   # x^2+1 adds no real roots
    x = sympy.Symbol("x")
    sp = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.c])), x)
    want = len(set(sympy.real_roots(sp)) & set(sympy.Rational(r.numerator, r.denominator)
                                                  for r in roots if -4 < r <= 4))
    assert sturm_count(p, -4, 4) == want


def test_certify_sign_fragment():
    p = Poly.x() * (2 * Poly.x() - 1) * -1          # -x(2x-1) >= 0 on [0, 1/2]
    c = certify_sign(p, 0, F(1, 2), NonNegative, (0, F(1, 2)))
    d = c.to_dict()
    assert set(d) == {"claim", "interval", "rootCount", "allowedRoots", "samplePoint", "sampleSign", "ok"}
    assert d["allowedRoots"] == ["0", "1/2"] and d["ok"]
    with pytest.raises(SignClaimError):
        certify_sign(Poly([-1, 4]), 0, 1, Positive)  # 4x - 1 changes sign at 1/4


def test_count_closed_endpoints():
    assert count_closed(Poly.from_roots([0, 1]), 0, 1) == 2


@given(st.floats(min_value=-2, max_value=2), st.floats(min_value=-2, max_value=2))
def test_dual_gradient_matches_finite_difference(a, b):
    f = lambda v: v[0] * v[0] * v[1] + v[1].cos() * 3 - v[0] / (v[1] * v[1] + 2)
    x, y = variables([Interval(a), Interval(b)])
    out = f([x, y])
    h = 1e-6
    g = lambda u, w: u * u * w + 3 * math.cos(w) - u / (w * w + 2)
    fd = ((g(a + h, b) - g(a - h, b)) / (2 * h), (g(a, b + h) - g(a, b - h)) / (2 * h))
    for k in range(2):
        assert out.d[k].lo - 1e-5 <= fd[k] <= out.d[k].hi + 1e-5


def test_hessian_from_nested_duals():
    x, y = variables2([Interval(1.5), Interval(-0.5)])
    out = x * x * y
    assert out.d[0].d[0].contains(2 * -0.5)
    assert out.d[0].d[1].contains(2 * 1.5)


def test_mean_value_contains_range():
    box = [Interval(0.0, 0.25), Interval(0.5, 0.75)]
    f = lambda v: v[0] * v[1] - v[0] * v[0]
    enc = mean_value(f, box)
    for u in (0.0, 0.1, 0.25):
        for w in (0.5, 0.75):
            assert enc.contains(u * w - u * u)
