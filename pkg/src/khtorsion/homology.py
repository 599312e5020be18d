"""Khovanov homology tables and thinness classification."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import BigradedComplex, Key, build_complex
from .diagram import PlanarDiagram, writhe
from .linalg import (
    GroupDescription,
    QQ,
    Ring,
    SparseMatrix,
    Z2,
    ZZ,
    homology_prime_power,
    prime_power_split,
    rank_over_field,
    reduce_complex_local,
    smith_normal_form,
)
from .statecube import DEFAULT_MAX_CROSSINGS


@dataclass
class HomologyTable:
    ring: Ring
    entries: dict[Key, GroupDescription]
    writhe: int = 0
    n_crossings: int = 0

    def __post_init__(self):
        self.entries = {k: g for k, g in sorted(self.entries.items()) if not g.is_trivial()}

    def __getitem__(self, key: Key) -> GroupDescription:
        return self.entries.get(key, GroupDescription(0))

    def total_rank(self) -> int:
        return sum(g.free_rank for g in self.entries.values())

    def total_dimension(self) -> int:
        """Rank for fields and the number of cyclic summands otherwise."""
        return sum(g.free_rank + len(g.torsion) for g in self.entries.values())

    def diagonals(self) -> set[int]:
        return {2 * i - j for i, j in self.entries}

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "entries": [
                {"i": i, "j": j, "free": g.free_rank, "torsion": list(g.torsion)}
                for (i, j), g in self.entries.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HomologyTable":
        entries = {(e["i"], e["j"]): GroupDescription(e["free"], tuple(e["torsion"])) for e in obj["entries"]}
        return cls(Ring.parse(obj["ring"]), entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def render(self) -> str:
        """Grid with i across and j down (largest j on top)."""
        if not self.entries:
            return f"H over {self.ring.name}: 0"
        is_ = [i for i, _ in self.entries]
        js = [j for _, j in self.entries]
        cols = list(range(min(is_), max(is_) + 1))
        rows = list(range(max(js), min(js) - 1, -2))
        cells = {k: g.render() for k, g in self.entries.items()}
        width = max(4, *(len(s) for s in cells.values()))
        lines = [f"H over {self.ring.name}", "j\\i".rjust(5) + "".join(str(i).rjust(width + 2) for i in cols)]
        for j in rows:
            line = str(j).rjust(5)
            for i in cols:
                line += cells.get((i, j), ".").rjust(width + 2)
            lines.append(line)
        return "\n".join(lines)


def _block_invariants(args: tuple[SparseMatrix, str]) -> tuple[int, list[int]]:
    M, ring_name = args
    if ring_name == "Z":
        snf = smith_normal_form(M)
        return snf.rank, [d for d in snf.diagonal if d > 1]
    if ring_name == "Q":
        return rank_over_field(M, 0), []
    return rank_over_field(M, 2), []


def khovanov_homology(
    D: PlanarDiagram,
    ring: Ring = ZZ,
    complex_: BigradedComplex | None = None,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    jobs: int = 1,
) -> HomologyTable:
    """Homology of every cell.

    Over Z, Q and Z/2 each block of d is reduced once and the ranks are shared
    by the two cells it touches.  Over Z/p^r (r > 1) cells are handled
    directly in the local ring.
    """
    C = complex_ if complex_ is not None else build_complex(D, ZZ, max_crossings)
    if C.ring not in (ZZ, QQ):
        raise ValueError("pass an integral complex")
    keys = C.keys()
    entries: dict[Key, GroupDescription] = {}
    if ring.name in ("Z", "Q") or ring == Z2:
        work = [(C.d.block(k), ring.name) for k in keys]
        if jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_block_invariants, work, chunksize=1))
        else:
            results = [_block_invariants(w) for w in work]
        info = dict(zip(keys, results))
        for i, j in keys:
            rank_out = info[(i, j)][0]
            rank_in, factors = info.get((i - 1, j), (0, []))
            free = C.dim((i, j)) - rank_out - rank_in
            torsion = tuple(q for f in factors for q in prime_power_split(f))
            entries[(i, j)] = GroupDescription(free, torsion)
    else:
        p, r = ring.prime_power
        for j in sorted({j for _, j in keys}):
            degs = sorted(i for i, jj in keys if jj == j)
            lo, hi = degs[0], degs[-1]
            mats = [C.d.block((i, j)) for i in range(lo - 1, hi + 1)]
            small = reduce_complex_local(mats, p, r)
            for t, i in enumerate(range(lo, hi + 1)):
                exps = homology_prime_power(small[t], small[t + 1], p, r)
                entries[(i, j)] = GroupDescription(
                    sum(1 for e in exps if e == r), tuple(p ** e for e in exps if e < r)
                )
    return HomologyTable(ring, entries, writhe(D), D.n_crossings)


@dataclass(frozen=True)
class ThinnessReport:
    q_thin: bool
    z_thin: bool
    z2_thin: bool
    h_slim: bool
    support_diagonals: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def labels(self) -> list[str]:
        out = [
            "QH-thin" if self.q_thin else "QH-thick",
            "ZH-thin" if self.z_thin else "ZH-thick",
            "Z2H-thin" if self.z2_thin else "Z2H-thick",
        ]
        if self.h_slim:
            out.append("H-slim")
        return out

    def to_json(self) -> dict:
        return {
            "q_thin": self.q_thin,
            "z_thin": self.z_thin,
            "z2_thin": self.z2_thin,
            "h_slim": self.h_slim,
            "support_diagonals": {k: list(v) for k, v in self.support_diagonals.items()},
        }


def is_thin(diagonals: set[int]) -> bool:
    """Support on two adjacent diagonals.  2i - j has constant parity, so adjacent means 2 apart."""
    return not diagonals or max(diagonals) - min(diagonals) <= 2


def upper_diagonal(diagonals: set[int]) -> int | None:
    """The diagonal reached by raising j, i.e. the smaller value of 2i - j."""
    if len(diagonals) != 2:
        return None
    return min(diagonals)


def classify_thinness(tables: dict[str, HomologyTable]) -> ThinnessReport:
    missing = {"Q", "Z", "Z2"} - set(tables)
    if missing:
        raise ValueError(f"missing tables for {sorted(missing)}")
    diags = {name: tables[name].diagonals() for name in ("Q", "Z", "Z2")}
    z_thin = is_thin(diags["Z"])
    h_slim = False
    if z_thin:
        up = upper_diagonal(diags["Z"])
        ztab = tables["Z"]
        if up is None:
            h_slim = not torsion_summary(ztab)
        else:
            h_slim = all(not g.torsion for (i, j), g in ztab.entries.items() if 2 * i - j == up)
    return ThinnessReport(
        q_thin=is_thin(diags["Q"]),
        z_thin=z_thin,
        z2_thin=is_thin(diags["Z2"]),
        h_slim=h_slim,
        support_diagonals={k: tuple(sorted(v)) for k, v in diags.items()},
    )


def torsion_summary(table: HomologyTable) -> list[int]:
    """All torsion orders across the table, with multiplicity."""
    return sorted(q for g in table.entries.values() for q in g.torsion)


def torsion_counts(table: HomologyTable) -> dict[int, int]:
    return dict(sorted(Counter(torsion_summary(table)).items()))


def homology_tables(D: PlanarDiagram, rings=("Q", "Z", "Z2"), jobs: int = 1, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> dict[str, HomologyTable]:
    C = build_complex(D, ZZ, max_crossings)
    return {name: khovanov_homology(D, Ring.parse(name), C, jobs=jobs) for name in rings}
