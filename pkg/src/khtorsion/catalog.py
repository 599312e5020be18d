"""The bundled catalog of knots and links (JSON lines, validated at load)."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .diagram import KnotRecord, mirror

ALIASES = {"unknot": "0_1", "trefoil": "3_1", "figure8": "4_1", "hopf": "L2a1{0}"}
MIRROR_SUFFIX = "_mirror"


@lru_cache(maxsize=None)
def load_catalog(path: str | None = None) -> dict[str, KnotRecord]:
    if path is None:
        text = resources.files("khtorsion").joinpath("data/catalog.jsonl").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    out: dict[str, KnotRecord] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        rec = KnotRecord.from_json(json.loads(line))
        if rec.name in out:
            raise ValueError(f"catalog line {lineno}: duplicate name {rec.name}")
        out[rec.name] = rec
    return out


def crossing_number(rec: KnotRecord) -> int:
    return rec.pd.n_crossings


def lookup(name: str, catalog: dict[str, KnotRecord] | None = None) -> KnotRecord:
    """Find a record by name or alias; ``<name>_mirror`` gives the mirror image."""
    catalog = catalog if catalog is not None else load_catalog()
    name = ALIASES.get(name, name)
    if name in catalog:
        return catalog[name]
    if name.endswith(MIRROR_SUFFIX):
        base = lookup(name[: -len(MIRROR_SUFFIX)], catalog)
        return KnotRecord(name, mirror(base.pd), -base.signature, base.components, base.alternating)
    raise KeyError(f"unknown catalog entry {name!r}")


def select(max_crossings: int | None = None, min_crossings: int = 0, knots_only: bool = False, alternating: bool | None = None) -> list[KnotRecord]:
    out = []
    for rec in load_catalog().values():
        n = crossing_number(rec)
        if n < min_crossings or (max_crossings is not None and n > max_crossings):
            continue
        if knots_only and rec.components != 1:
            continue
        if alternating is not None and rec.alternating != alternating:
            continue
        out.append(rec)
    return out


def is_split_diagram(rec: KnotRecord) -> bool:
    """Whether the diagram falls apart into pieces (disjoint circles included)."""
    D = rec.pd
    pieces = D.unknots
    if D.crossings:
        parent = list(range(D.n_crossings))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        by_arc: dict[int, int] = {}
        for k, x in enumerate(D.crossings):
            for a in x:
                if a in by_arc:
                    parent[find(k)] = find(by_arc[a])
                else:
                    by_arc[a] = k
        pieces += len({find(k) for k in range(D.n_crossings)})
    return pieces > 1
