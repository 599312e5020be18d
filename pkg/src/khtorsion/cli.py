"""Command line interface.

    khtorsion compute --knot 3_1 --coeffs Z,Z2
    khtorsion verify --max-crossings 8 --checks lemma19
    khtorsion classify --knot 4_1
    khtorsion jones --pd "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
    khtorsion catalog list --max-crossings 6

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .catalog import is_split_diagram, load_catalog, lookup, select
from .complex import build_complex
from .diagram import DiagramError, KnotRecord, parse_pd
from .diffops import (
    DiffOps,
    bockstein_page_dims,
    bockstein_page_direct,
    turner_pages,
    verify_main_theorem,
    verify_turner_lemma,
)
from .homology import HomologyTable, classify_thinness, khovanov_homology
from .jones import graded_euler, reduced_eval_at_i, reduced_jones, state_sum_jones
from .linalg import Ring
from .statecube import DEFAULT_MAX_CROSSINGS, CrossingCapError

log = logging.getLogger("khtorsion")

RINGS = ("Z", "Q", "Z2", "Z4", "Z8")
CHECKS = ("lemma19", "theorem7", "euler", "pages")
STRETCH_THRESHOLD = 12
DEFAULT_VERIFY_CROSSINGS = 9


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    knot: str | None = None
    pd: str | None = None
    rings: list[str] = field(default_factory=lambda: ["Z"])
    fmt: str = "text"
    cache: Path | None = None
    max_crossings: int | None = None
    jobs: int = 1
    stretch: bool = False
    checks: list[str] = field(default_factory=lambda: list(CHECKS))

    def __post_init__(self):
        if self.max_crossings is not None and self.max_crossings < 1:
            raise UsageError("--max-crossings must be at least 1")
        if self.command == "compute" and not self.rings:
            raise UsageError("select at least one coefficient ring")
        bad = [r for r in self.rings if r not in RINGS]
        if bad:
            raise UsageError(f"unsupported coefficients {bad}; choose from {', '.join(RINGS)}")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")

    @property
    def cap(self) -> int:
        return self.max_crossings or DEFAULT_MAX_CROSSINGS


# --------------------------------------------------------------------------
# inputs


def _records(cfg: RunConfig, batch: bool = False) -> list[KnotRecord]:
    if cfg.knot and cfg.pd:
        raise UsageError("give either --knot or --pd, not both")
    if cfg.knot:
        try:
            recs = [lookup(cfg.knot)]
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    elif cfg.pd:
        try:
            D = parse_pd(cfg.pd)
        except DiagramError as exc:
            raise UsageError(str(exc)) from None
        recs = [KnotRecord("<pd>", D, 0, D.n_components, False)]
    elif batch:
        recs = select(max_crossings=cfg.max_crossings or DEFAULT_VERIFY_CROSSINGS)
    else:
        raise UsageError("select a diagram with --knot or --pd")
    for rec in recs:
        n = rec.pd.n_crossings
        if n > STRETCH_THRESHOLD and not cfg.stretch:
            raise UsageError(f"{rec.name} has {n} crossings; pass --stretch to run it anyway")
        if n > cfg.cap and not batch:
            raise UsageError(f"{rec.name} has {n} crossings, above the cap of {cfg.cap}")
    return recs


# --------------------------------------------------------------------------
# cache


def _cache_key(rec: KnotRecord, ring: str) -> str:
    text = f"{rec.pd.render()}|{ring}|{__version__}"
    return hashlib.sha256(text.encode()).hexdigest()[:32]


def _cached_table(rec: KnotRecord, ring: str, cache: Path | None, complex_=None) -> HomologyTable:
    path = cache / f"{_cache_key(rec, ring)}.json" if cache else None
    if path is not None and path.exists():
        try:
            table = HomologyTable.from_json(json.loads(path.read_text()))
            table.writhe, table.n_crossings = sum(rec.pd.signs), rec.pd.n_crossings
            return table
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", path, exc)
    C = complex_ if complex_ is not None else build_complex(rec.pd)
    table = khovanov_homology(rec.pd, Ring.parse(ring), C)
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(table.dumps())
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s: %s", path, exc)
    return table


# --------------------------------------------------------------------------
# commands


def cmd_compute(cfg: RunConfig) -> tuple[str, int]:
    rec = _records(cfg)[0]
    C = build_complex(rec.pd, max_crossings=cfg.cap)
    tables = [_cached_table(rec, ring, cfg.cache, C) for ring in cfg.rings]
    if cfg.fmt == "json":
        out = {"knot": rec.name, "pd": rec.pd.render(), "tables": [t.to_json() for t in tables]}
        return json.dumps(out, sort_keys=True, indent=1), 0
    parts = [f"{rec.name}  {rec.pd.render()}"] + [t.render() for t in tables]
    return "\n\n".join(parts), 0


def verify_record(rec: KnotRecord, checks: list[str], cache: Path | None = None) -> dict:
    """Run the requested checks on one diagram and return the report."""
    D = rec.pd
    report: dict = {"knot": rec.name, "lemma19": None, "theorem7": None, "euler": None, "pages": None, "ranks": None}
    CZ = build_complex(D)
    tables = {ring: _cached_table(rec, ring, cache, CZ) for ring in ("Q", "Z", "Z2")}
    ops = None
    if {"lemma19", "theorem7", "pages"} & set(checks):
        ops = DiffOps.build(D, CZ)
        report["ranks"] = {
            "dT_star": ops.dT_star.rank(),
            "beta": ops.beta.rank(),
            "nu_star": ops.nu_star.rank(),
        }
    if "lemma19" in checks:
        report["lemma19"] = "pass" if verify_turner_lemma(D, ops).holds else "fail"
    if "theorem7" in checks:
        report["theorem7"] = verify_main_theorem(D, ops, tables).status
    if "euler" in checks:
        ok = graded_euler(tables["Q"]) == state_sum_jones(D)
        report["euler"] = "pass" if ok else "fail"
    if "pages" in checks:
        pages = turner_pages(CZ, basis=ops.basis, dT_star=ops.dT_star)
        bock = [bockstein_page_dims(tables["Z"], r) for r in (1, 2, 3)]
        direct = [bockstein_page_direct(D, r, CZ) for r in (1, 2, 3)]
        consistent = all(a.dims == b.dims for a, b in zip(bock, direct))
        limit_ok = pages[-1].total == 2 ** rec.components
        report["pages"] = {
            "turner": [p.total for p in pages],
            "bockstein": [p.total for p in bock],
            "bockstein_collapse": next((p.r for p in bock if p.collapsed), None),
            "status": "pass" if consistent and limit_ok else "fail",
        }
    return report


def report_failed(rep: dict) -> bool:
    if rep["lemma19"] == "fail" or rep["theorem7"] == "fail" or rep["euler"] == "fail":
        return True
    return rep["pages"] is not None and rep["pages"]["status"] == "fail"


def _verify_one(args) -> dict:
    rec, checks, cache = args
    return verify_record(rec, checks, cache)


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    recs = _records(cfg, batch=True)
    work = [(rec, cfg.checks, cfg.cache) for rec in recs]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_verify_one, work))
    else:
        reports = [_verify_one(w) for w in work]
    status = 1 if any(report_failed(r) for r in reports) else 0
    if cfg.fmt == "json":
        return json.dumps(reports if len(reports) > 1 else reports[0], sort_keys=True, indent=1), status
    lines = []
    for rep in reports:
        bits = [rep["knot"]]
        for name in ("lemma19", "theorem7", "euler"):
            if rep[name] is not None:
                bits.append(f"{name}={rep[name]}")
        if rep["pages"] is not None:
            pg = rep["pages"]
            bits.append("turner=" + ",".join(map(str, pg["turner"])))
            bits.append("bockstein=" + ",".join(map(str, pg["bockstein"])))
            bits.append(f"B-collapse={pg['bockstein_collapse']}")
            bits.append(f"pages={pg['status']}")
        lines.append("  ".join(bits))
    failed = sum(report_failed(r) for r in reports)
    lines.append(f"{len(reports)} diagrams, {failed} failing")
    return "\n".join(lines), status


def cmd_classify(cfg: RunConfig) -> tuple[str, int]:
    rec = _records(cfg)[0]
    C = build_complex(rec.pd, max_crossings=cfg.cap)
    tables = {ring: _cached_table(rec, ring, cfg.cache, C) for ring in ("Q", "Z", "Z2")}
    report = classify_thinness(tables)
    if cfg.fmt == "json":
        out = {"knot": rec.name, **report.to_json(), "labels": report.labels()}
        return json.dumps(out, sort_keys=True, indent=1), 0
    diags = ", ".join(f"{k}: {list(v)}" for k, v in report.support_diagonals.items())
    return f"{rec.name}: {', '.join(report.labels())}\n  diagonals 2i-j  {diags}", 0


def cmd_jones(cfg: RunConfig) -> tuple[str, int]:
    rec = _records(cfg)[0]
    J = state_sum_jones(rec.pd, cfg.cap)
    value = reduced_eval_at_i(J, rec.pd.n_components)
    if cfg.fmt == "json":
        out = {
            "knot": rec.name,
            "jones": J.to_json(),
            "reduced": reduced_jones(J).to_json(),
            "abs_reduced_at_i": value,
        }
        return json.dumps(out, sort_keys=True, indent=1), 0
    return f"{rec.name}\n  J   = {J}\n  J~  = {reduced_jones(J)}\n  |J~(i)| = {value}", 0


def cmd_catalog_list(cfg: RunConfig) -> tuple[str, int]:
    recs = select(max_crossings=cfg.max_crossings) if cfg.max_crossings else list(load_catalog().values())
    if cfg.fmt == "json":
        return json.dumps([r.to_json() for r in recs], sort_keys=True, indent=1), 0
    lines = []
    for r in recs:
        flags = ("alt" if r.alternating else "non-alt") + (" split" if is_split_diagram(r) else "")
        lines.append(f"{r.name:<12} c={r.components} sigma={r.signature:>3}  n={r.pd.n_crossings:<2} {flags}")
    return "\n".join(lines), 0


# --------------------------------------------------------------------------
# argument parsing


def _split_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khtorsion", description="Khovanov homology, Bockstein and Turner data of links.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, coeffs=False, checks=False):
        p.add_argument("--knot", help="catalog name (e.g. 3_1, L2a1{0}, 4_1_mirror)")
        p.add_argument("--pd", help='PD code, e.g. "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"')
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--max-crossings", type=int, default=None)
        p.add_argument("--cache", type=Path, default=None, help="directory for cached tables")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--stretch", action="store_true", help=f"allow diagrams above {STRETCH_THRESHOLD} crossings")
        if coeffs:
            p.add_argument("--coeffs", action="append", default=None, help="Z, Q, Z2, Z4 or Z8 (comma separated)")
        if checks:
            p.add_argument("--checks", default=",".join(CHECKS), help="comma separated subset of " + ",".join(CHECKS))

    common(sub.add_parser("compute", help="homology tables"), coeffs=True)
    common(sub.add_parser("verify", help="run verification checks"), checks=True)
    common(sub.add_parser("classify", help="thinness classification"))
    common(sub.add_parser("jones", help="Jones polynomial from the state sum"))
    cat = sub.add_parser("catalog", help="bundled catalog")
    catsub = cat.add_subparsers(dest="action", required=True)
    lst = catsub.add_parser("list")
    lst.add_argument("--max-crossings", type=int, default=None)
    lst.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    rings = ["Z"]
    if getattr(args, "coeffs", None):
        rings = [r.upper() for chunk in args.coeffs for r in _split_list(chunk)]
    return RunConfig(
        command=args.command,
        knot=getattr(args, "knot", None),
        pd=getattr(args, "pd", None),
        rings=rings,
        fmt=args.fmt,
        cache=getattr(args, "cache", None),
        max_crossings=args.max_crossings,
        jobs=getattr(args, "jobs", 1),
        stretch=getattr(args, "stretch", False),
        checks=_split_list(getattr(args, "checks", ",".join(CHECKS))),
    )


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "jones": cmd_jones,
    "catalog": cmd_catalog_list,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
        text, status = COMMANDS[args.command](cfg)
    except (UsageError, CrossingCapError) as exc:
        print(f"khtorsion: error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
