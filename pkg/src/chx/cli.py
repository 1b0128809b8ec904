"""Command line: certification suites and mesh export.

    chx run --suite all --format text
    chx mesh --object spinal:I1+ --resolution 32 --out s.obj

Exit codes: 0 all ok, 1 any failed, 2 undecided with none failed.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import PROBE_GROUPS, Config
from .report import ReportDocument, emit_report, exit_code

log = logging.getLogger("chx")

SUITES = ("gen", "prop3", "lemma4", "prop4", "pi1")


def _gen(cfg):
    from .group4 import verify_generators
    return verify_generators()


def _prop3(cfg):
    from .fordcert import run_prop3
    return run_prop3(cfg)


def _lemma4(cfg):
    from .surfcert import run_lemma4
    return run_lemma4(cfg)


def _prop4(cfg):
    from .surfcert import run_prop4
    return run_prop4(cfg)


def _pi1(cfg):
    from .fpgroups import run_pi1
    return run_pi1(cfg)


RUNNERS = {"gen": _gen, "prop3": _prop3, "lemma4": _lemma4, "prop4": _prop4, "pi1": _pi1}


def run_suite(suite: str, cfg: Config | None = None) -> ReportDocument:
    cfg = cfg or Config()
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        log.info("suite %s", name)
        checks += RUNNERS[name](cfg)
    return ReportDocument(suite, checks, cfg.snapshot())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chx")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="run a certification suite")
    r.add_argument("--suite", choices=SUITES + ("all",), default="all")
    r.add_argument("--depth", type=int, default=14)
    r.add_argument("--precision", type=int, choices=(53, 128, 256), default=53)
    r.add_argument("--k-range", type=int, default=3)
    r.add_argument("--probes", default="Z2,Z3,S3",
                   help=f"comma separated subset of {','.join(PROBE_GROUPS)}")
    r.add_argument("--out")
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.add_argument("--timings", action="store_true", help="include wall times in the report")

    m = sub.add_parser("mesh", help="export a mesh")
    m.add_argument("--object", required=True, help="spinal:NAME | ruled:EB|EBinv|PATCH | disk:F | curve:ID")
    m.add_argument("--resolution", type=int, default=16)
    m.add_argument("--out", required=True)
    m.add_argument("--format", choices=("obj", "ply"), default="obj")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cmd == "mesh":
        from .surfcert.mesh import export_mesh
        try:
            mesh = export_mesh(args.object, args.resolution, args.out, args.format)
        except ValueError as e:
            print(f"chx mesh: {e}", file=sys.stderr)
            return 1
        print(f"{args.object}: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces -> {args.out}")
        return 0
    try:
        cfg = Config(depth=args.depth, precision=args.precision, k_range=args.k_range,
                     probes=tuple(p for p in args.probes.split(",") if p), fmt=args.format)
    except ValueError as e:
        print(f"chx run: {e}", file=sys.stderr)
        return 1
    doc = run_suite(args.suite, cfg)
    text = emit_report(doc, args.format, args.out, timings=args.timings)
    if args.out:
        print(f"{args.suite}: {doc.status} -> {args.out}")
    else:
        sys.stdout.write(text)
    return exit_code(doc.status)


if __name__ == "__main__":
    sys.exit(main())
