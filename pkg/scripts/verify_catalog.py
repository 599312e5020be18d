"""Run every check over a slice of the catalog and write a JSON report.

    python scripts/verify_catalog.py --max-crossings 8 --out report.json
    python scripts/verify_catalog.py --names 3_1 4_1 8_19
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from khtorsion.catalog import lookup, select
from khtorsion.cli import CHECKS, report_failed, verify_record

log = logging.getLogger("verify_catalog")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-crossings", type=int, default=9)
    ap.add_argument("--names", nargs="*")
    ap.add_argument("--checks", default=",".join(CHECKS))
    ap.add_argument("--cache", type=Path)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    recs = [lookup(n) for n in args.names] if args.names else select(max_crossings=args.max_crossings)
    checks = args.checks.split(",")
    reports = []
    start = time.perf_counter()
    for rec in recs:
        t0 = time.perf_counter()
        rep = verify_record(rec, checks, args.cache)
        rep["seconds"] = round(time.perf_counter() - t0, 3)
        reports.append(rep)
        log.info("%-12s %5.2fs  lemma19=%s theorem7=%s", rec.name, rep["seconds"], rep["lemma19"], rep["theorem7"])
    failing = [r["knot"] for r in reports if report_failed(r)]
    log.info("%d diagrams in %.1fs, failing: %s", len(reports), time.perf_counter() - start, failing or "none")
    if args.out:
        args.out.write_text(json.dumps(reports, indent=1, sort_keys=True) + "\n")
    return 1 if failing else 0


if __name__ == "__main__":
    sys.exit(main())
