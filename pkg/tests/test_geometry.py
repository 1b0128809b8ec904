"""Heisenberg geometry, the generator matrices and the isometric spheres."""
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from chx.chgeom import (CyganSphere, HeisPoint, Kind, Side, classify_isometry, cygan_distance4,
                        geo_heis, heis_act, heis_mul, sphere_side, translation)
from chx.fordcert import derived_center, sid, sphere_data_table, sphere_for, verify_pair, Tag
from chx.group4 import eval_word, group, verify_generators
from chx.numeric.scalars import cplx, lift
from chx.trig import FloatMath

rats = st.fractions(min_value=-6, max_value=6, max_denominator=6)
points = st.builds(lambda a, b, t: HeisPoint(cplx(a, b), lift(t)), rats, rats, rats)


@given(points, points)
def test_cygan_symmetric(p, q):
    assert cygan_distance4(p, q) == cygan_distance4(q, p)


@given(points, points, points)
def test_cygan_left_invariant(g, p, q):
    assert cygan_distance4(heis_mul(g, p), heis_mul(g, q)) == cygan_distance4(p, q)


@given(points, st.integers(-3, 3), st.integers(-3, 3))
def test_translation_matrix_agrees_with_group_law(p, a, b):
    T = translation(cplx(a, 0), lift(b))
    assert heis_act(T, p) == heis_mul(HeisPoint(cplx(a, 0), lift(b)), p)


def test_generators_all_ok():
    bad = [c.id for c in verify_generators() if not c.ok]
    assert bad == []


@pytest.mark.parametrize("word", ["A", "A B", "A B^2", "A B^-1", "I3 I1", "I1 I3 I2 I3", "I1 I2 I3 I2"])
def test_traces_equal_three(word):
    # [PAPER] tr = 3 for the parabolic words; I1 I2 I3 I2 is the accidental one
    X = eval_word(group(), word)
    assert X.trace() == 3
    assert classify_isometry(X).kind is Kind.Unipotent


def test_A_is_horizontal_translation():
    # [DERIVED] A(z, t) = (z - 2, t + 4 Im z), recomputed from the matrix entries
    A = group().A
    p = HeisPoint(cplx(F(1, 3), 2), lift(5))
    assert heis_act(A, p) == HeisPoint(cplx(F(1, 3) - 2, 2), lift(5 + 8))


@pytest.mark.parametrize("kind,k", [("+", 0), ("+", 3), ("-", -2), ("*", 5), ("-", 10)])
def test_sphere_centers_from_matrices(kind, k):
    S = sphere_for(sid(kind, k))
    assert S.center == derived_center(sid(kind, k))
    assert lift(S.radius_sq) == (1 if kind == "*" else 2)


def test_sphere_table_reports_t_sign():
    t = sphere_data_table(10)
    assert t["ok"]
    disagree = {r["sphere"] for r in t["rows"] if not r["stated_form_agrees"]}
    assert "I1+" in disagree and "I0+" not in disagree and "I3*" not in disagree


@pytest.mark.parametrize("a,b,tag", [
    (("+", 0), ("+", 2), Tag.DisjointByDistance),
    (("+", 0), ("-", 1), Tag.TangentAt),
    (("-", 0), ("+", 1), Tag.TangentAt),
])
def test_pair_tags(a, b, tag, cfg):
    rel = verify_pair(sid(*a), sid(*b), cfg, corroborate=False)
    assert rel.tag == tag


def test_geographic_points_lie_on_sphere():
    from chx.surfcert.mesh import Mesh, sphere_deviation
    S = sphere_for(sid("+", 1))
    m = FloatMath()
    mesh = Mesh([geo_heis(S, a, th, m) for a in (-1.2, 0.0, 0.7) for th in (0.0, 2.0, 5.5)])
    assert sphere_deviation(S, mesh) < 1e-12


def test_sphere_side_exact():
    S = CyganSphere(HeisPoint(cplx(0), lift(0)), lift(1))
    assert sphere_side(S, HeisPoint(cplx(0), lift(0))) is Side.Interior
    assert sphere_side(S, HeisPoint(cplx(1), lift(0))) is Side.On
    assert sphere_side(S, HeisPoint(cplx(0), lift(2))) is Side.Exterior
