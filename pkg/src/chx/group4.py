"""The (4, oo, oo; oo) triangle group: matrices, named points, exact checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction as F
from functools import lru_cache
from importlib import resources

from .chgeom import (Isometry, Kind, Classification, classify_isometry, herm_inner,
                     proj_equal_vec, normalize_vec, vec, Q_INF, horospherical_coords, HeisPoint)
from .numeric.scalars import QuadExt, cplx, lift, to_json, from_json
from .report import run_check, Check

i = cplx(0, 1)
R2 = QuadExt(0, 1, 2)
R3 = QuadExt(0, 1, 3)


class GroupConsistencyError(ValueError):
    pass


@dataclass(frozen=True)
class GroupData:
    mats: dict          # name -> Isometry
    points: dict        # name -> lift (tuple)

    def __getattr__(self, k):
        m = object.__getattribute__(self, "mats")
        if k in m:
            return m[k]
        p = object.__getattribute__(self, "points")
        if k in p:
            return p[k]
        raise AttributeError(k)

    def to_json(self) -> dict:
        return {
            "matrices": {k: v.to_json() for k, v in self.mats.items()},
            "points": {k: [to_json(x) for x in v] for k, v in self.points.items()},
        }

    @classmethod
    def from_json(cls, d) -> "GroupData":
        return cls({k: Isometry.from_json(v) for k, v in d["matrices"].items()},
                   {k: tuple(from_json(x) for x in v) for k, v in d["points"].items()})


def j3_polar(x, y, z) -> Isometry:
    """Complex reflection with polar vector (x, y + z i, 1)."""
    x, y, z = F(x), F(y), F(z)
    d = y * y + z * z + 2 * x
    w, wb = cplx(y, z), cplx(y, -z)
    return Isometry([
        [(-y * y - z * z) / d, 2 * x * wb / d, 2 * x * x / d],
        [2 * w / d, (y * y + z * z - 2 * x) / d, 2 * x * w / d],
        [F(2) / d, 2 * wb / d, (-y * y - z * z) / d],
    ])


def _raw_matrices() -> dict:
    M = {}
    M["J1"] = Isometry([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    M["J2"] = Isometry([[-1, -2, 2], [0, 1, -2], [0, 0, -1]])
    M["J3"] = Isometry([[-1, 0, 0], [1 + i, 1, 0], [1, 1 - i, -1]])
    M["T"] = Isometry([[1, 1, (-1 - 2 * i) / 2], [0, 1, -1], [0, 0, 1]])
    M["I1"] = Isometry([[-1, 2, 2], [0, 1, 2], [0, 0, -1]])
    M["I2"] = Isometry([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    M["I3"] = Isometry([[F(-1, 2), -i / 2, F(1, 4)], [i, 0, i / 2], [1, -i, F(-1, 2)]])
    M["A"] = Isometry([[1, 2, -2], [0, 1, -2], [0, 0, 1]])
    M["B"] = Isometry([[F(1, 2), i / 2, F(-1, 4)], [i, 0, i / 2], [-1, i, F(1, 2)]])
    return M


def _raw_points() -> dict:
    P = {}
    P["qinf"] = vec(1, 0, 0)
    P["x1"] = vec(-(1 + 2 * i) / 2, -1, 1)
    P["x2"] = vec(F(-1, 2), -1, 1)
    P["x3"] = vec((-1 + 2 * i) / 2, -1, 1)
    P["pB"] = vec(F(-1, 2), 0, 1)
    P["w1"] = vec(-(1 + 2 * R2 * i) / 6, -(R2 + i) / 3, 1)
    P["w2"] = vec(-(1 - 2 * R2 * i) / 6, -(R2 - i) / 3, 1)
    P["w3"] = vec(-(1 - 2 * R2 * i) / 6, (R2 - i) / 3, 1)
    P["w4"] = vec(-(1 + 2 * R2 * i) / 6, (R2 + i) / 3, 1)
    P["y1"] = vec(F(-1, 2), -(R3 - i) / 2, 1)
    P["y2"] = vec(F(-1, 2), -(R3 + i) / 2, 1)
    return P


def build_group(check=True) -> GroupData:
    """All matrices and named points; raises GroupConsistencyError on a broken invariant."""
    g = GroupData(_raw_matrices(), _raw_points())
    if check:
        M = g.mats
        for name, cond in (
            ("A = I1 I2", M["A"] == M["I1"] @ M["I2"]),
            ("B = I2 I3", M["B"] == M["I2"] @ M["I3"]),
            *((f"I{k}^2 projectively trivial", (M[f"I{k}"] ** 2).is_proj_identity()) for k in (1, 2, 3)),
            *((f"I{k} = T J{k} T^-1", M[f"I{k}"] == M["T"] @ M[f"J{k}"] @ M["T"].inverse()) for k in (1, 2, 3)),
        ):
            if not cond:
                raise GroupConsistencyError(f"violated invariant: {name}")
    return g


@lru_cache(maxsize=1)
def group() -> GroupData:
    return build_group()


def load_fixture() -> GroupData:
    txt = resources.files("chx.data").joinpath("group4.json").read_text()
    return GroupData.from_json(json.loads(txt))


# ---------------------------------------------------------------- words

_ALPHA = ("I1", "I2", "I3", "A", "B", "T", "J1", "J2", "J3")


def parse_word(w) -> list:
    """'I1 I2 B^-1 A^2' -> [(name, exp), ...]."""
    if isinstance(w, (list, tuple)):
        return [(a, int(e)) for a, e in w]
    out = []
    for tok in w.split():
        name, _, e = tok.partition("^")
        out.append((name, int(e) if e else 1))
    return out


def eval_word(g: GroupData, w) -> Isometry:
    """Left-to-right product; the empty word is the identity."""
    out = Isometry.identity()
    for name, e in parse_word(w):
        if name not in g.mats:
            raise KeyError(f"unknown generator {name}")
        out = out @ (g.mats[name] ** e)
    return out


def parabolic_fixed_point(M: Isometry):
    """Null eigenvector of a unipotent map, normalized (last nonzero coordinate 1)."""
    c = classify_isometry(M)
    if c.kind is not Kind.Unipotent:
        raise ValueError(f"not parabolic: {c}")
    N = M - Isometry.identity()
    # image of N^2 is the fixed line when N^2 != 0, else take ker N from N's image
    N2 = N @ N
    for Z in (N2, N):
        for j in range(3):
            col = tuple(Z.m[r][j] for r in range(3))
            if any(not x.is_zero() for x in col):
                v = normalize_vec(col)
                if herm_inner(v, v).is_zero() and proj_equal_vec(M.apply(v), v):
                    return v
    raise ValueError("no null fixed vector found")


# ---------------------------------------------------------------- verification


def _trace_is_3(M):
    t = M.trace()
    return t == 3, {"trace": t}


def _classify(M, want: Classification):
    c = classify_isometry(M)
    return c == want, {"class": str(c), "expected": str(want)}


TRACE_WORDS = {
    "A": "A", "AB": "A B", "AB2": "A B^2", "ABinv": "A B^-1",
    "I3I1": "I3 I1", "I1I3I2I3": "I1 I3 I2 I3", "I1I2I3I2": "I1 I2 I3 I2",
}

UNIPOTENT_WORDS = {
    "I3I1": "I3 I1", "I1I2": "I1 I2", "I1I3I2I3": "I1 I3 I2 I3", "I1I2I3I2": "I1 I2 I3 I2",
    "A": "A", "AB": "A B", "AB2": "A B^2", "ABinv": "A B^-1",
    "J3J1": "J3 J1", "J1J2": "J1 J2", "J1J3J2J3": "J1 J3 J2 J3",
}


def verify_generators(g: GroupData | None = None) -> list:
    g = g or group()
    M = g.mats
    out: list[Check] = []
    add = lambda cid, claim, fn: out.append(run_check(cid, claim, fn))

    for name in ("J1", "J2", "J3", "T", "I1", "I2", "I3", "A", "B"):
        X = M[name]
        add(f"gen.unitary.{name}", f"{name}* H {name} = H",
            lambda X=X: (X.preserves_form(), {"det": X.det()}))
    for k in (1, 2, 3):
        add(f"gen.involution.I{k}", f"I{k}^2 is projectively trivial",
            lambda k=k: ((M[f"I{k}"] ** 2).is_proj_identity(), {"square": (M[f"I{k}"] ** 2).to_json()}))
        add(f"gen.conjugate.I{k}", f"I{k} = T J{k} T^-1",
            lambda k=k: (M[f"I{k}"] == M["T"] @ M[f"J{k}"] @ M["T"].inverse(), {}))
    add("gen.product.A", "A = I1 I2", lambda: M["A"] == M["I1"] @ M["I2"])
    add("gen.product.B", "B = I2 I3", lambda: M["B"] == M["I2"] @ M["I3"])
    add("gen.gaussian_integers", "entries of J1, J2, J3 lie in Z[i]", lambda: _zi_check(M))
    add("gen.j3_polar", "J3 is the polar-vector reflection at (x, y, z) = (0, 1, 1)",
        lambda: (j3_polar(0, 1, 1) == M["J3"], {}))
    add("gen.j3_trace_j3j1", "tr(J3 J1) = 3 forces x = 0 in the polar family",
        lambda: _j3_x_constraint())
    add("gen.B4", "B^4 = identity exactly", lambda: (M["B"] ** 4) == Isometry.identity())
    for key, w in TRACE_WORDS.items():
        X = eval_word(g, w)
        add(f"gen.trace.{key}", f"tr({w}) = 3", lambda X=X: _trace_is_3(X))
    for key, w in UNIPOTENT_WORDS.items():
        X = eval_word(g, w)
        add(f"gen.classify.{key}", f"{w} is unipotent",
            lambda X=X: _classify(X, Classification(Kind.Unipotent)))
    add("gen.classify.B", "B = I2 I3 is elliptic of order 4",
        lambda: _classify(M["B"], Classification(Kind.EllipticOfOrder, 4)))
    add("gen.classify.J2J3", "J2 J3 is elliptic of order 4",
        lambda: _classify(M["J2"] @ M["J3"], Classification(Kind.EllipticOfOrder, 4)))
    for k in (1, 2, 3):
        add(f"gen.classify.I{k}", f"I{k} is elliptic of order 2",
            lambda k=k: _classify(M[f"I{k}"], Classification(Kind.EllipticOfOrder, 2)))
    for word, pt in (("A B", "x1"), ("A B^2", "x2"), ("A B^-1", "x3")):
        X = eval_word(g, word)
        add(f"gen.fixed_point.{pt}", f"the fixed point of {word} is {pt}",
            lambda X=X, pt=pt: _fp(X, g.points[pt]))
    add("gen.fixed_point.pB", "pB is a negative vector fixed by B",
        lambda: (proj_equal_vec(M["B"].apply(g.pB), g.pB) and herm_inner(g.pB, g.pB) == -1, {}))
    add("gen.w_cycle", "B: w1 -> w4 -> w3 -> w2 -> w1", lambda: _w_cycle(g))
    add("gen.null_points", "x1, x2, x3, w1..w4, y1, y2 are null vectors",
        lambda: _null_points(g))
    add("gen.fixture", "shipped matrix fixture equals the rebuilt group", lambda: _fixture_matches(g))
    return out


def _zi_check(M):
    bad = []
    for name in ("J1", "J2", "J3"):
        for r in M[name].m:
            for x in r:
                if x.d is not None or x.base.re.denominator != 1 or x.base.im.denominator != 1:
                    bad.append((name, str(x)))
    return not bad, {"offending": bad}


def _j3_x_constraint():
    # tr(J3(x,y,z) J1) - 3 has the sign of -x (denominator positive) on sample grid
    g = _raw_matrices()
    vals = {}
    for x in (F(-1, 4), 0, F(1, 4)):
        t = (j3_polar(x, 1, 1) @ g["J1"]).trace()
        vals[str(x)] = t
    ok = vals["0"] == 3 and vals["1/4"] != 3 and vals["-1/4"] != 3
    return ok, {"traces": vals}


def _fp(X, want):
    v = parabolic_fixed_point(X)
    return proj_equal_vec(v, want), {"fixed": list(v), "expected": list(want)}


def _w_cycle(g):
    B = g.B
    chain = [("w1", "w4"), ("w4", "w3"), ("w3", "w2"), ("w2", "w1")]
    res = {f"B({a})={b}": proj_equal_vec(B.apply(g.points[a]), g.points[b]) for a, b in chain}
    return all(res.values()), res


def _null_points(g):
    res = {n: herm_inner(g.points[n], g.points[n]) for n in
           ("x1", "x2", "x3", "w1", "w2", "w3", "w4", "y1", "y2", "qinf")}
    return all(v.is_zero() for v in res.values()), res


def _fixture_matches(g):
    fx = load_fixture()
    diff = [k for k in g.mats if fx.mats.get(k) != g.mats[k]]
    diff += [k for k in g.points if fx.points.get(k) != g.points[k]]
    return not diff, {"mismatch": diff}


def write_fixture(path):
    with open(path, "w") as fh:
        json.dump(build_group().to_json(), fh, indent=1, sort_keys=True)
        fh.write("\n")
