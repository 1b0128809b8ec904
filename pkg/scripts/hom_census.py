"""Homomorphism counts into small groups for the three presentations of the fundamental group.

Equal counts are necessary for isomorphism; they are evidence, not proof.
"""
import argparse
import time

from chx.fpgroups import abelianize, count_homs, probe_group, standard_presentations


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--groups", default="Z2,Z3,S3,S4")
    args = ap.parse_args()
    groups = args.groups.split(",")
    P = standard_presentations()
    print(f"{'presentation':14s} {'gens':>4s} {'rels':>4s} {'H1':>10s} " + " ".join(f"{g:>8s}" for g in groups))
    for name, p in P.items():
        t0 = time.perf_counter()
        ab = abelianize(p)
        h1 = f"Z^{ab.rank}" + "".join(f"+Z{t}" for t in ab.torsion)
        counts = [count_homs(p, probe_group(g)) for g in groups]
        print(f"{name:14s} {len(p.generators):4d} {len(p.relators):4d} {h1:>10s} "
              + " ".join(f"{c:8d}" for c in counts) + f"   ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
