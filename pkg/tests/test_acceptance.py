"""Acceptance criteria 1-9, one PASS/FAIL line each (run with -s or -v to see them)."""
import time
from fractions import Fraction as F

import pytest

from chx.config import Config
from chx.report import OK

LINES = []


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, wall, limit, detail=""):
        ok = ok and wall < limit
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({wall:.2f} s, limit {limit} s){'  ' + detail if detail else ''}"
        LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _bad(checks):
    return [(c.id, c.status) for c in checks if c.status != OK]


def test_criterion_1_generators(report):
    from chx.group4 import verify_generators
    checks, wall = _timed(verify_generators)
    ids = {c.id: c for c in checks}
    need = [f"gen.unitary.{m}" for m in ("J1", "J2", "J3", "T", "I1", "I2", "I3", "A", "B")]
    need += [f"gen.involution.I{k}" for k in (1, 2, 3)] + ["gen.B4", "gen.w_cycle"]
    need += [f"gen.trace.{w}" for w in ("A", "AB", "AB2", "ABinv", "I3I1", "I1I3I2I3", "I1I2I3I2")]
    ok = all(ids[n].ok for n in need) and not _bad(checks)
    assert report(1, "generator matrices: unitary, involutions, B^4 = 1, traces 3, w-cycle", ok, wall, 1,
                  f"{len(need)} named checks")


def test_criterion_2_sphere_data(report):
    from chx.fordcert import sphere_data_table
    t, wall = _timed(lambda: sphere_data_table(10))
    disagree = [r["sphere"] for r in t["rows"] if not r["stated_form_agrees"]]
    n_pm = sum(1 for r in t["rows"] if r["sphere"][-1] in "+-" and not r["sphere"].startswith("I0"))
    ok = t["ok"] and len(t["rows"]) == 63 and len(disagree) == n_pm
    assert report(2, "sphere centers/radii for |k| <= 10 from matrices; t-sign discrepancy reported", ok, wall, 1,
                  f"{len(disagree)} spheres with the opposite stated t-sign")


def test_criterion_3_pair_battery(report):
    from chx.fordcert import prop34_battery
    cfg = Config()
    checks, wall = _timed(lambda: prop34_battery(cfg))
    tangent = [c for c in checks if c.evidence.get("tag") == "TangentAt"]
    radii = [F(str(c.evidence["evidence"]["enclosure_radius"])) for c in tangent]
    depths = [c.evidence["evidence"].get("bnp", {}).get("depth", 0) for c in tangent]
    ok = not _bad(checks) and tangent and max(radii) <= F(1, 2 ** 20) and max(depths) <= 14
    assert report(3, "pair battery |k| <= 3, tangency enclosures <= 2^-20 at depth <= 14", ok, wall, 60,
                  f"{len(checks)} pairs, {len(tangent)} tangencies, max radius {max(radii)}")


def test_criterion_4_triple(report):
    from chx.fordcert import verify_triple
    checks, wall = _timed(lambda: verify_triple(Config()))
    ids = {c.id: c for c in checks}
    ends = {e["matches"] for e in ids["prop3.triple.endpoints"].evidence["endpoints"]}
    n = ids["prop3.triple.expressions"].evidence["samples"]
    ok = not _bad(checks) and ends == {"w1", "w2", "w3", "w4"} and n >= 1000
    assert report(4, "triple intersection endpoints = {w1..w4}, expressions agree", ok, wall, 30,
                  f"{n} samples")


def test_criterion_5_sturm(report):
    from chx.surfcert.lemmas import lemma43_checks
    checks, wall = _timed(lemma43_checks)
    roots = [c.evidence["F1"]["allowedRoots"] for c in checks if c.id == "lemma4.3.F1.sign"]
    roots += [c.evidence["outer_factor"]["allowedRoots"] for c in checks if c.id == "lemma4.3.F2.sign"]
    ok = not _bad(checks) and roots == [["0", "1/2"], ["0", "1/2"]]
    assert report(5, "Sturm certificates, roots exactly {0, 1/2}", ok, wall, 2)


def test_criterion_6_surfaces(report):
    from chx.surfcert import run_lemma4, run_prop4
    cfg = Config()
    checks, wall = _timed(lambda: [c for c in run_lemma4(cfg) if not c.id.startswith("lemma4.3")]
                          + run_prop4(cfg))
    fd = [c for c in checks if c.id in ("lemma4.fd.g", "lemma4.fd.h")]
    ok = not _bad(checks) and fd and all(c.evidence["samples"] >= 1000 for c in fd)
    ok = ok and cfg.touch_eps == F(1, 2 ** 10) and cfg.depth <= 14
    assert report(6, "surface lemmas and curve-system propositions certified, finite differences agree",
                  ok, wall, 300, f"{len(checks)} checks, bad {_bad(checks)}")


def test_criterion_7_cycles(report):
    from chx.fpgroups import edge_cycles, load_complex, presentation_from, same_relators, standard_presentations

    def run():
        c = load_complex()
        cyc = edge_cycles(c)
        return c, cyc, presentation_from(c)
    (c, cyc, p), wall = _timed(run)
    covered = sorted(e for o, _ in cyc for e in o)
    ok = (len(cyc) == 13 and covered == list(range(1, 50)) and len(p.generators) == 11
          and len(p.relators) == 13 and same_relators(p.relators, standard_presentations()["cycle_table"].relators))
    assert report(7, "13 edge cycles over 49 edges, relators match the cycle table", ok, wall, 1)


def test_criterion_8_invariants(report):
    from chx.fpgroups import (AbelianInvariants, abelianize, compose_images, count_homs,
                              identity_on_abelianization, load_data, probe_group,
                              standard_presentations, verify_hom, words_of)

    def run():
        P = standard_presentations()
        pi, lk = P["pi1"], P["link"]
        ab = abelianize(pi) == abelianize(lk) == AbelianInvariants(4, ())
        counts = {g: (count_homs(pi, probe_group(g)), count_homs(lk, probe_group(g)))
                  for g in ("Z2", "Z3", "S3", "S4")}
        probes = [probe_group(g) for g in ("Z2", "Z3", "S3")]
        d = load_data("phi.json")
        phi, psi = words_of(d["phi"], pi, lk), words_of(d["phi_inv"], lk, pi)
        verify_hom(pi, lk, phi, probes)
        verify_hom(lk, pi, psi, probes)
        inv = (identity_on_abelianization(compose_images(phi, psi), pi)
               and identity_on_abelianization(compose_images(psi, phi), lk))
        return ab, counts, inv
    (ab, counts, inv), wall = _timed(run)
    ok = ab and inv and all(a == b for a, b in counts.values())
    assert report(8, "Z^4 abelianizations, hom counts agree (with S4), phi and inverse pass probes",
                  ok, wall, 120, str(counts))


def test_criterion_9_meshes(report):
    from chx.surfcert.mesh import build, resolve_sphere, sphere_deviation

    def run():
        worst, good = 0.0, True
        for name in ("I0+", "I0-", "I0*", "I1+", "I-1-", "I2*"):
            S = resolve_sphere(name)
            for n in (8, 16, 32, 64):
                m = build(f"spinal:{name}", n)
                good &= m.watertight() and m.euler() == 2
                worst = max(worst, sphere_deviation(S, m))
        return good, worst
    (good, worst), wall = _timed(run)
    ok = good and worst < 1e-9
    assert report(9, "spinal-sphere meshes watertight, chi = 2, on the sphere", ok, wall, 10,
                  f"max deviation {worst:.1e}")
