"""Cell complex, edge cycles, Tietze moves, abelianization and hom counts."""
import copy
import itertools

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from chx.fpgroups import (AbelianInvariants, ComplexError, HomRefuted, Presentation, abelianize,
                          canonical_cyclic, count_homs, cyclic_group, cyclic_reduce, edge_cycles,
                          format_word, free_reduce, load_complex, load_data, parse_word,
                          presentation_from, probe_group, same_relators, smith_normal_form as snf,
                          standard_presentations, symmetric_group, tietze_simplify, verify_hom,
                          words_of)


def pres(gens, *rels):
    return Presentation(list(gens), [parse_word(r, gens) for r in rels])


# ---------------------------------------------------------------- words


def test_free_reduce_examples():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((2, 1, -1, 2)) == (2, 2)
    assert cyclic_reduce((1, 2, 3, -1)) == (2, 3)


def test_parse_format_roundtrip():
    g = ["x1", "x2", "x3", "x4"]
    s = "x4 x2 x1 x3 x2 x4^-1 x2^-2 x3^-1 x1^-1"
    assert format_word(parse_word(s, g), g) == s


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=14).map(tuple)


@given(words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))


@given(words, st.integers(0, 20))
def test_canonical_cyclic_rotation_and_inverse(w, k):
    w = cyclic_reduce(w)
    if not w:
        return
    k %= len(w)
    rot = w[k:] + w[:k]
    assert canonical_cyclic(rot) == canonical_cyclic(w)
    assert canonical_cyclic(tuple(-x for x in reversed(w))) == canonical_cyclic(w)


# ---------------------------------------------------------------- complex


def test_complex_loads_with_expected_counts():
    c = load_complex()
    assert (len(c.vertices), len(c.edges), len(c.faces), len(c.pairings)) == (29, 49, 22, 11)
    assert c.euler == 2


def test_complex_rejects_edge_in_three_faces(data):
    doc = data("complex.json")
    doc["faces"][0]["boundary"] = doc["faces"][0]["boundary"] + [1, -1]
    with pytest.raises(ComplexError, match="e1"):
        load_complex(doc)


def test_complex_rejects_bad_pairing(data):
    doc = data("complex.json")
    em = doc["pairings"][0]["edgeMap"]
    em[0][1], em[1][1] = em[1][1], em[0][1]
    with pytest.raises(ComplexError, match="f1"):
        load_complex(doc)


def test_edge_cycles_partition_and_table():
    c = load_complex()
    cyc = edge_cycles(c)
    edges = sorted(e for orbit, _ in cyc for e in orbit)
    assert len(cyc) == 13 and edges == sorted(c.edges)
    gens = [p[0] for p in c.pairings]
    by_start = {orbit[0]: w for orbit, w in cyc}
    # [PAPER] cycle-table rows for e1 and e13
    assert canonical_cyclic(by_start[1]) == canonical_cyclic(parse_word("f8^-1 f7 f9", gens))
    assert canonical_cyclic(by_start[13]) == canonical_cyclic(parse_word("f6 f10 f5^-1 f10^-1", gens))
    t3 = standard_presentations()["cycle_table"]
    assert same_relators([w for _, w in cyc], t3.relators)
    assert sorted(by_start) == load_data("presentation_cycles.json")["cycleEdges"]


def test_presentation_from_complex():
    p = presentation_from(load_complex())
    assert len(p.generators) == 11 and len(p.relators) == 13
    assert any(canonical_cyclic(r) == canonical_cyclic(p.word("f7 f8^-1 f9")) for r in p.relators)


# ---------------------------------------------------------------- abelianization


def test_abelianize_examples():
    assert abelianize(pres("a", "a^2")) == AbelianInvariants(0, (2,))
    assert abelianize(pres("ab", "a b a^-1 b^-1")) == AbelianInvariants(2, ())


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=4))
def test_snf_matches_sympy(rows):
    d, _ = snf(rows, 4)
    ref = smith_normal_form(sympy.Matrix(rows), domain=ZZ)
    want = [abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert d == want


def test_abelianization_of_named_presentations():
    # [DERIVED] sympy SNF oracle: the 13 x 11 matrix has rank 7; both 4-generator matrices vanish
    P = standard_presentations()
    z4 = AbelianInvariants(4, ())
    assert abelianize(P["cycle_table"]) == abelianize(P["pi1"]) == abelianize(P["link"]) == z4


# ---------------------------------------------------------------- homs


def test_finite_groups_validate():
    assert symmetric_group(4).order == 24
    with pytest.raises(ValueError):
        from chx.fpgroups import FiniteGroupTable
        FiniteGroupTable("bad", [0, 1], [[0, 1], [1, 1]])


def test_count_homs_examples():
    assert count_homs(pres("a", "a^2"), probe_group("S3")) == 4
    assert count_homs(pres("ab"), probe_group("Z2")) == 4


def brute_count(p, G):
    n = len(p.generators)
    return sum(all(G.evaluate(r, v) == G.identity for r in p.relators)
               for v in itertools.product(range(G.order), repeat=n))


@given(st.lists(words, min_size=1, max_size=3), st.sampled_from(["Z2", "Z3", "S3"]))
def test_count_homs_matches_brute_force(rels, gname):
    p = Presentation(["a", "b", "c"], list(rels))
    G = probe_group(gname)
    assert count_homs(p, G) == brute_count(p, G)


@given(st.lists(words, min_size=1, max_size=3), st.permutations([0, 1, 2]), st.integers(0, 9))
def test_count_homs_invariant_under_reordering_and_rotation(rels, perm, k):
    p = Presentation(["a", "b", "c"], list(rels))
    G = probe_group("S3")
    ren = lambda w: tuple((perm[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in w)
    rot = lambda w: w[k % len(w):] + w[:k % len(w)] if w else w
    q = Presentation(["a", "b", "c"], [rot(ren(r)) for r in p.relators])
    assert count_homs(p, G) == count_homs(q, G)


def test_hom_counts_frozen():
    # [DERIVED] plain itertools enumeration over permutation tuples (sympy permutations)
    P = standard_presentations()
    want = {"Z2": 16, "Z3": 81, "S3": 222}
    for g, n in want.items():
        G = probe_group(g)
        assert count_homs(P["pi1"], G) == count_homs(P["link"], G) == n
    assert count_homs(P["cycle_table"], probe_group("S3")) == 222


def test_hom_counts_s4():
    # [DERIVED] brute force over 24^4 tuples: 6384 for both presentations
    P = standard_presentations()
    G = probe_group("S4")
    assert count_homs(P["pi1"], G) == count_homs(P["link"], G) == 6384
    assert count_homs(P["cycle_table"], G) == 6384


# ---------------------------------------------------------------- Tietze


def test_tietze_trivial_example():
    s = tietze_simplify(pres("ab", "a b"))
    assert s.generators == ["a"] and s.relators == []


def test_tietze_on_cycle_presentation(cfg):
    p = presentation_from(load_complex())
    s = tietze_simplify(p)
    assert not s.partial and len(s.generators) <= 5
    assert abelianize(s) == abelianize(p)
    for g in cfg.probes:
        G = probe_group(g)
        assert count_homs(s, G) == count_homs(p, G)


def test_tietze_deterministic():
    p = presentation_from(load_complex())
    assert tietze_simplify(p).to_doc() == tietze_simplify(p).to_doc()


def test_tietze_trace_composes_down(cfg):
    # images of the original generators are a homomorphism onto the simplified group
    p = presentation_from(load_complex())
    s = tietze_simplify(p)
    ev = verify_hom(p, s, s.images_of_original, [probe_group("S3")])
    assert ev["label"].startswith("consistency evidence")


def test_tietze_keep_reaches_stated_generators():
    p = presentation_from(load_complex())
    k = tietze_simplify(p, keep=("f1", "f2", "f3", "f7"))
    assert sorted(k.generators) == ["f1", "f2", "f3", "f7"]


# ---------------------------------------------------------------- verify_hom


def test_verify_hom_identity_passes():
    p = standard_presentations()["link"]
    ident = [(i + 1,) for i in range(4)]
    verify_hom(p, p, ident, [probe_group("S3")])


def test_verify_hom_refutes_bad_map():
    src = pres("ab", "a b a^-1 b^-1")
    dst = pres("xy")                     # free group: the commutator is nontrivial
    verify_hom(src, dst, [(1,), (2,)], [probe_group("Z2")])      # abelian probes cannot see it
    with pytest.raises(HomRefuted) as e:
        verify_hom(src, dst, [(1,), (2,)], [probe_group("S3")])
    assert e.value.witness["group"] == "S3"


def test_phi_and_inverse(data):
    P = standard_presentations()
    d = data("phi.json")
    probes = [probe_group(g) for g in ("Z2", "Z3", "S3")]
    phi = words_of(d["phi"], P["pi1"], P["link"])
    psi = words_of(d["phi_inv"], P["link"], P["pi1"])
    assert verify_hom(P["pi1"], P["link"], phi, probes)["probes"]["S3"] == 222
    assert verify_hom(P["link"], P["pi1"], psi, probes)["probes"]["S3"] == 222
