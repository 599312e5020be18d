"""Thinness of 16n_197566 and its mirror over Q, Z and Z/2.

The diagram is not bundled; pass its PD code (this package's convention, or
KnotInfo's nested list which is converted) as a string or a file:

    python scripts/stretch_16n197566.py --pd pd.txt --out stretch.json

Expect hours of CPU time and several GB of memory.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from khtorsion.complex import build_complex
from khtorsion.diagram import make_diagram, mirror, parse_pd, pd_from_knotinfo
from khtorsion.homology import classify_thinness, khovanov_homology, torsion_counts
from khtorsion.linalg import Ring

log = logging.getLogger("stretch")


def read_pd(text: str):
    path = Path(text)
    if path.is_file():
        text = path.read_text()
    text = text.strip()
    if text.startswith("[["):
        return make_diagram(pd_from_knotinfo(json.loads(text)))
    return parse_pd(text)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--pd", required=True)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    D = read_pd(args.pd)
    results = {}
    for label, diagram in (("knot", D), ("mirror", mirror(D))):
        t0 = time.perf_counter()
        C = build_complex(diagram)
        log.info("%s: complex built in %.0fs", label, time.perf_counter() - t0)
        tables = {r: khovanov_homology(diagram, Ring.parse(r), C, jobs=args.jobs) for r in ("Q", "Z", "Z2")}
        report = classify_thinness(tables)
        results[label] = {**report.to_json(), "labels": report.labels(), "torsion": torsion_counts(tables["Z"])}
        log.info("%s: %s torsion %s", label, ", ".join(report.labels()), results[label]["torsion"])
        for t in tables.values():
            print(t.render(), end="\n\n")
    if args.out:
        args.out.write_text(json.dumps(results, indent=1, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
