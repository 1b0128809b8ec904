"""Run every certification suite and write one JSON and one text report per suite.

    python scripts/run_all.py --outdir reports --k-range 3
"""
import argparse
import pathlib
import time

from chx.cli import SUITES, run_suite
from chx.config import Config
from chx.report import emit_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--depth", type=int, default=14)
    ap.add_argument("--k-range", type=int, default=3)
    ap.add_argument("--suites", default=",".join(SUITES))
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = Config(depth=args.depth, k_range=args.k_range)
    for name in args.suites.split(","):
        t0 = time.perf_counter()
        doc = run_suite(name, cfg)
        emit_report(doc, "json", str(out / f"{name}.json"))
        emit_report(doc, "text", str(out / f"{name}.txt"), timings=True)
        bad = [c.id for c in doc.checks if c.status != "ok"]
        print(f"{name:7s} {doc.status:10s} {len(doc.checks):4d} checks  {time.perf_counter() - t0:6.1f} s"
              + (f"  not ok: {bad}" if bad else ""))


if __name__ == "__main__":
    main()
