"""Regenerate the bundled knot catalog from the KnotInfo / LinkInfo tables.

Needs the ``database_knotinfo`` package (``pip install khtorsion[catalog]``).
Writes ``src/khtorsion/data/catalog.jsonl`` and a fixture with the published
Khovanov tables used by the test-suite for external cross-checks.

    python scripts/build_catalog.py
    python scripts/build_catalog.py --max-knot-crossings 9 --max-link-crossings 7
"""

from __future__ import annotations

import argparse
import ast
import json
import logging
import re
from pathlib import Path

import database_knotinfo

from khtorsion.diagram import DiagramError, KnotRecord, make_diagram, mirror, parse_pd, pd_from_knotinfo

ROOT = Path(__file__).resolve().parents[1]
log = logging.getLogger("build_catalog")

EXTRA = [
    # name, pd, signature, components, alternating
    ("0_1", "PD[]", 0, 1, True),
    ("0_1_kink", "PD[X(1,1,2,2)]", 0, 1, True),
    ("unlink2", "PD[];unknots=2", 0, 2, True),
    ("unlink3", "PD[];unknots=3", 0, 3, True),
]


def _knot_records(max_crossings: int):
    for row in database_knotinfo.link_list():
        name = row["name"]
        m = re.fullmatch(r"(\d+)_(\d+)", name)
        if not m or not 3 <= int(m.group(1)) <= max_crossings:
            continue
        pd = pd_from_knotinfo(ast.literal_eval(row["pd_notation"]))
        yield name, pd, int(row["signature"]), 1, row["alternating"] == "Y", row


def _link_records(max_crossings: int):
    seen = set()
    for row in database_knotinfo.link_list(proper_links=True)[1:]:
        if int(row["crossing_number"]) > max_crossings:
            continue
        base = row["name_unoriented"]
        # one orientation per link, plus both orientations of the Hopf link
        if base in seen and base != "L2a1":
            continue
        seen.add(base)
        vec = row["pd_notation_vector"].replace("{", "[").replace("}", "]")
        pd = pd_from_knotinfo(ast.literal_eval(vec))
        yield row["name"], pd, int(row["signature"]), int(row["components"]), row["alternating"] == "Y", row


def _khovanov_vector(row) -> list[list[int]] | None:
    """Published table as [i, j, free, [torsion orders]] rows."""
    raw = row.get("khovanov_unreduced_integral_vector")
    if raw:
        entries: dict[tuple[int, int], list] = {}
        for order, mult, i, j in ast.literal_eval(raw):
            e = entries.setdefault((i, j), [0, []])
            if order == 0:
                e[0] += mult
            else:
                e[1].extend([order] * mult)
        return [[i, j, f, sorted(t)] for (i, j), (f, t) in sorted(entries.items())]
    raw = row.get("khovanov_polynomial")
    if raw:
        import sympy

        q, t = sympy.symbols("q t")
        poly = sympy.expand(sympy.sympify(raw.replace("^", "**"), locals={"q": q, "t": t}))
        out = []
        for term, coeff in poly.as_coefficients_dict().items():
            powers = term.as_powers_dict()
            out.append([int(powers.get(t, 0)), int(powers.get(q, 0)), int(coeff), []])
        return sorted(out)
    return None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-knot-crossings", type=int, default=9)
    ap.add_argument("--max-link-crossings", type=int, default=7)
    ap.add_argument("--out", type=Path, default=ROOT / "src" / "khtorsion" / "data" / "catalog.jsonl")
    ap.add_argument("--fixture", type=Path, default=ROOT / "tests" / "data" / "published_khovanov.json")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    records: list[KnotRecord] = []
    published: dict[str, dict] = {}
    for name, pd, sig, comps, alt in EXTRA:
        records.append(KnotRecord(name, parse_pd(pd), sig, comps, alt))
    sources = list(_knot_records(args.max_knot_crossings)) + list(_link_records(args.max_link_crossings))
    for name, pd, sig, comps, alt, row in sources:
        try:
            D = make_diagram(pd)
            rec = KnotRecord(name, D, sig, comps, alt)
        except DiagramError as exc:
            log.warning("skipping %s: %s", name, exc)
            continue
        records.append(rec)
        table = _khovanov_vector(row)
        if table is not None:
            ring = "Z" if row.get("khovanov_unreduced_integral_vector") else "Q"
            published[name] = {"ring": ring, "entries": table}

    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
    args.fixture.parent.mkdir(parents=True, exist_ok=True)
    args.fixture.write_text(json.dumps(published, indent=1, sort_keys=True) + "\n")
    log.info("wrote %d records to %s", len(records), args.out)
    log.info("wrote %d published tables to %s", len(published), args.fixture)
    # sanity: mirroring must round-trip on every entry
    for rec in records:
        mirror(mirror(rec.pd))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
