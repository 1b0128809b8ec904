"""Triangle meshes and polylines of spheres, patches, F and curves, written as OBJ or PLY.

Vertices are Heisenberg coordinates (x, y, t) with t on the third axis.
Plain doubles throughout: meshes are for figures, never for certificates.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..chgeom import geo_heis
from ..fordcert import isometric_sphere, sid, sphere_for
from ..group4 import eval_word, group
from ..numeric.scalars import lift
from ..trig import FloatMath
from .curves import CURVES, curve_xyt, sorted_bounds, _fl
from .surfaces import E_B, E_BINV, PATCHES, VERTICAL, surface_xyt

FM = FloatMath()
F_HEIGHT = 4.0          # truncation of the vertical pieces of F
F3_REACH = 3.0          # F3 drawn for s in [1, F3_REACH], |t| <= F_HEIGHT


@dataclass
class Mesh:
    vertices: list = field(default_factory=list)
    faces: list = field(default_factory=list)       # 0-based triangles
    lines: list = field(default_factory=list)       # 0-based polylines

    def add_grid(self, fn, nu, nv):
        """(nu+1) x (nv+1) vertex grid of fn(i/nu, j/nv), two triangles per cell."""
        base = len(self.vertices)
        for i in range(nu + 1):
            for j in range(nv + 1):
                self.vertices.append(tuple(float(c) for c in fn(i / nu, j / nv)))
        idx = lambda i, j: base + i * (nv + 1) + j
        for i in range(nu):
            for j in range(nv):
                a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
                self.faces += [(a, b, c), (a, c, d)]
        return self

    def euler(self) -> int:
        edges = {tuple(sorted(e)) for f in self.faces for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0]))}
        return len(self.vertices) - len(edges) + len(self.faces)

    def watertight(self) -> bool:
        count = {}
        for f in self.faces:
            for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                k = tuple(sorted(e))
                count[k] = count.get(k, 0) + 1
        return bool(count) and all(c == 2 for c in count.values())


# ---------------------------------------------------------------- objects


def resolve_sphere(name: str):
    """'I1+' style ids, or a group word whose isometric sphere is meant ('B', 'A B^-1 A^-1')."""
    m = re.fullmatch(r"I(-?\d+)([+\-*])", name.strip())
    if m:
        return sphere_for(sid(m.group(2), int(m.group(1))))
    return isometric_sphere(eval_word(group(), name))


def spinal_mesh(S, n: int) -> Mesh:
    """UV sphere in geographic coordinates: alpha rings between the two poles, 2n meridians."""
    if n < 2:
        raise ValueError("resolution must be >= 2")
    mesh = Mesh()
    nth = 2 * n
    pt = lambda a, th: geo_heis(S, a, th, FM)
    mesh.vertices.append(pt(-math.pi / 2, 0.0))
    for i in range(1, n):
        a = -math.pi / 2 + math.pi * i / n
        for j in range(nth):
            mesh.vertices.append(pt(a, 2 * math.pi * j / nth))
    mesh.vertices.append(pt(math.pi / 2, 0.0))
    ring = lambda i, j: 1 + (i - 1) * nth + (j % nth)
    top = len(mesh.vertices) - 1
    for j in range(nth):
        mesh.faces.append((0, ring(1, j + 1), ring(1, j)))
        mesh.faces.append((top, ring(n - 1, j), ring(n - 1, j + 1)))
    for i in range(1, n - 1):
        for j in range(nth):
            a, b, c, d = ring(i, j), ring(i, j + 1), ring(i + 1, j + 1), ring(i + 1, j)
            mesh.faces += [(a, b, c), (a, c, d)]
    return mesh


def patch_mesh(pid: str, n: int, mesh: Mesh | None = None) -> Mesh:
    mesh = mesh or Mesh()
    lo, hi = (_fl(b) for b in sorted_bounds(CURVES[PATCHES[pid].lower]))
    return mesh.add_grid(lambda u, v: surface_xyt(pid, lo + (hi - lo) * u, v, FM), n, n)


def f_mesh(n: int) -> Mesh:
    mesh = Mesh()
    for pid in ("F1", "F2"):
        V = VERTICAL[pid]
        lo, hi = (_fl(b) for b in V.s_range)
        mesh.add_grid(lambda u, v, pid=pid, lo=lo, hi=hi, d=V.direction:
                      surface_xyt(pid, lo + (hi - lo) * u, d * F_HEIGHT * v, FM), n, n)
    mesh.add_grid(lambda u, v: surface_xyt("F3", 1 + (F3_REACH - 1) * u, F_HEIGHT * (2 * v - 1), FM), n, n)
    return mesh


def curve_mesh(cid: str, n: int) -> Mesh:
    c = CURVES[cid]
    lo, hi = (_fl(b) for b in sorted_bounds(c))
    if c.param == "sigma":
        lo = max(lo, 1.0 / F3_REACH)          # sigma = 0 is q_inf
    mesh = Mesh()
    mesh.vertices = [curve_xyt(cid, lo + (hi - lo) * k / n, FM) for k in range(n + 1)]
    mesh.lines = [list(range(n + 1))]
    return mesh


def build(obj: str, n: int) -> Mesh:
    """obj is 'spinal:NAME', 'ruled:EB|EBinv|<patch id>', 'disk:F' or 'curve:<id>'."""
    if n < 2:
        raise ValueError("resolution must be >= 2")
    kind, _, name = obj.partition(":")
    if kind == "spinal":
        return spinal_mesh(resolve_sphere(name), n)
    if kind == "ruled":
        pids = {"EB": E_B, "EBinv": E_BINV}.get(name, (name,))
        if any(p not in PATCHES for p in pids):
            raise ValueError(f"unknown patch {name!r}")
        mesh = Mesh()
        for p in pids:
            patch_mesh(p, n, mesh)
        return mesh
    if kind == "disk" and name == "F":
        return f_mesh(n)
    if kind == "curve" and name in CURVES:
        return curve_mesh(name, n)
    raise ValueError(f"unknown mesh object {obj!r}")


# ---------------------------------------------------------------- writers


def to_obj(mesh: Mesh) -> str:
    out = [f"v {x:.17g} {y:.17g} {t:.17g}" for x, y, t in mesh.vertices]
    out += ["f " + " ".join(str(i + 1) for i in f) for f in mesh.faces]
    out += ["l " + " ".join(str(i + 1) for i in ln) for ln in mesh.lines]
    return "\n".join(out) + "\n"


def to_ply(mesh: Mesh) -> str:
    head = ["ply", "format ascii 1.0", f"element vertex {len(mesh.vertices)}",
            "property double x", "property double y", "property double z",
            f"element face {len(mesh.faces)}", "property list uchar int vertex_indices"]
    if mesh.lines:
        head += [f"element edge {sum(len(l) - 1 for l in mesh.lines)}",
                 "property int vertex1", "property int vertex2"]
    head.append("end_header")
    body = [f"{x:.17g} {y:.17g} {t:.17g}" for x, y, t in mesh.vertices]
    body += ["3 " + " ".join(map(str, f)) for f in mesh.faces]
    body += [f"{a} {b}" for ln in mesh.lines for a, b in zip(ln, ln[1:])]
    return "\n".join(head + body) + "\n"


def export_mesh(obj: str, n: int, path, fmt: str = "obj") -> Mesh:
    mesh = build(obj, n)
    text = {"obj": to_obj, "ply": to_ply}[fmt](mesh)
    Path(path).write_text(text)
    return mesh


def sphere_deviation(S, mesh: Mesh) -> float:
    """max |d_Cygan(v, center) - r| over the mesh vertices."""
    cz = complex(float(lift(S.center.z).real()), float(lift(S.center.z).imag()))
    ct = float(S.center.t)
    r = math.sqrt(float(S.radius_sq))
    worst = 0.0
    for x, y, t in mesh.vertices:
        w = complex(x, y)
        d4 = abs(w - cz) ** 4 + (t - ct + 2 * (w * cz.conjugate()).imag) ** 2
        worst = max(worst, abs(d4 ** 0.25 - r))
    return worst
