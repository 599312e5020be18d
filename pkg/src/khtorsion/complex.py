"""The bigraded Khovanov chain complex and its auxiliary maps.

Each circle of a resolution carries a copy of A = R[X]/X^2 with deg 1 = +1,
deg X = -1.  A generator is a state together with a label bitset (bit k set
means X on circle k).  Cells are keyed by ``(i, q)`` where ``q`` is the
internal degree of the generator.

Three chain-level maps are assembled edge by edge over the state cube:

* ``d``   merge/split with the Frobenius maps, signed, bidegree (1, 0)
* ``nu``  lowers one X to 1 in every possible way, bidegree (0, 2)
* ``dT``  the deformed merge/split over Z/2, bidegree (1, 2)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator

from .diagram import PlanarDiagram, parse_pd
from .linalg import QQ, Ring, SparseMatrix, Z2, ZZ
from .statecube import DEFAULT_MAX_CROSSINGS, CubeEdge, ResolvedState, cube_edges, resolve_all

Key = tuple[int, int]

# local rules: input bits -> list of (output bits, coefficient)
# merge: (x_p, x_q) -> (x_r,) ; split: (x_p,) -> (x_r1, x_r2)
MERGE = {(0, 0): [((0,), 1)], (0, 1): [((1,), 1)], (1, 0): [((1,), 1)], (1, 1): []}
SPLIT = {(0,): [((0, 1), 1), ((1, 0), 1)], (1,): [((1, 1), 1)]}
MERGE_T = {(0, 0): [], (0, 1): [], (1, 0): [], (1, 1): [((1,), 1)]}
SPLIT_T = {(0,): [((0, 0), 1)], (1,): []}


@dataclass(frozen=True, order=True)
class Generator:
    state: int
    labels: int
    qdeg: int = field(compare=False)

    def letters(self, n_circles: int) -> str:
        return "⊗".join("X" if (self.labels >> k) & 1 else "1" for k in range(n_circles))


@dataclass(frozen=True)
class EdgeGeometry:
    """Where the circles of the source state go in the target state."""

    edge: CubeEdge
    src: tuple[int, ...]  # circles touching the crossing, ascending
    tgt: tuple[int, ...]
    untouched: tuple[tuple[int, int], ...]  # (source circle, target circle)


def edge_geometry(D: PlanarDiagram, rs: ResolvedState, rt: ResolvedState, edge: CubeEdge) -> EdgeGeometry:
    a, b, c, d = D.crossings[edge.crossing]
    src = tuple(sorted({rs.arc_to_circle[a - 1], rs.arc_to_circle[b - 1]}))
    tgt = tuple(sorted({rt.arc_to_circle[a - 1], rt.arc_to_circle[c - 1]}))
    pairs = {}
    for arc in range(len(rs.arc_to_circle)):
        cs = rs.arc_to_circle[arc]
        if cs not in src:
            pairs[cs] = rt.arc_to_circle[arc]
    n_arc_s = rs.circle_count - D.unknots
    n_arc_t = rt.circle_count - D.unknots
    for k in range(D.unknots):
        pairs[n_arc_s + k] = n_arc_t + k
    return EdgeGeometry(edge, src, tgt, tuple(sorted(pairs.items())))


def _local_images(geo: EdgeGeometry, labels: int, rule: dict) -> Iterator[tuple[int, int]]:
    base = 0
    for cs, ct in geo.untouched:
        if (labels >> cs) & 1:
            base |= 1 << ct
    local_in = tuple((labels >> cs) & 1 for cs in geo.src)
    for out, coeff in rule[local_in]:
        lab = base
        for ct, bit in zip(geo.tgt, out):
            if bit:
                lab |= 1 << ct
        yield lab, coeff


class GradedMap:
    """A bigraded linear map between cells of one complex, stored blockwise."""

    def __init__(self, name: str, bidegree: Key, dims: dict[Key, int], blocks: dict[Key, SparseMatrix] | None = None):
        self.name = name
        self.bidegree = bidegree
        self.dims = dims
        self.blocks = blocks or {}

    def target(self, key: Key) -> Key:
        return key[0] + self.bidegree[0], key[1] + self.bidegree[1]

    def block(self, key: Key) -> SparseMatrix:
        m = self.blocks.get(key)
        if m is None:
            m = SparseMatrix.zero(self.dims.get(self.target(key), 0), self.dims.get(key, 0))
        return m

    def keys(self) -> list[Key]:
        return sorted(self.dims)

    def then(self, other: "GradedMap", name: str | None = None) -> "GradedMap":
        """``other`` after ``self``."""
        bideg = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
        blocks = {}
        for key in self.keys():
            blocks[key] = other.block(self.target(key)) @ self.block(key)
        return GradedMap(name or f"{other.name}.{self.name}", bideg, self.dims, blocks)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if self.bidegree != other.bidegree:
            raise ValueError("bidegree mismatch")
        blocks = {k: self.block(k) + other.block(k) for k in self.keys()}
        return GradedMap(f"{self.name}+{other.name}", self.bidegree, self.dims, blocks)

    def reduce(self, modulus: int) -> "GradedMap":
        return GradedMap(self.name, self.bidegree, self.dims, {k: m.reduce(modulus) for k, m in self.blocks.items()})

    def is_zero(self, modulus: int = 0) -> bool:
        for m in self.blocks.values():
            if modulus:
                m = m.reduce(modulus)
            if not m.is_zero():
                return False
        return True

    def nonzero_entries(self) -> Iterator[tuple[Key, int, int, int]]:
        for key in self.keys():
            for r, c, v in self.block(key).triplets():
                yield key, r, c, v


@dataclass
class BigradedComplex:
    diagram: PlanarDiagram
    ring: Ring
    resolved: list[ResolvedState]
    cells: dict[Key, list[Generator]]
    d: GradedMap
    geometry: list[EdgeGeometry] = field(repr=False)
    _index: dict[tuple[int, int], tuple[Key, int]] = field(default=None, repr=False)

    def __post_init__(self):
        if self._index is None:
            self._index = {
                (g.state, g.labels): (key, pos) for key, gens in self.cells.items() for pos, g in enumerate(gens)
            }

    @property
    def dims(self) -> dict[Key, int]:
        return self.d.dims

    def dim(self, key: Key) -> int:
        return self.dims.get(key, 0)

    def locate(self, state: int, labels: int) -> tuple[Key, int]:
        return self._index[(state, labels)]

    def generator(self, state: int, labels: int) -> Generator:
        key, pos = self.locate(state, labels)
        return self.cells[key][pos]

    def keys(self) -> list[Key]:
        return sorted(self.cells)

    def homological_degrees(self) -> list[int]:
        return sorted({i for i, _ in self.cells})

    def over(self, ring: Ring) -> "BigradedComplex":
        """The same complex with coefficients reduced into ``ring``."""
        if self.ring not in (ZZ, QQ):
            raise ValueError("can only change rings from an integral complex")
        d = self.d.reduce(ring.modulus) if ring.modulus else self.d
        return BigradedComplex(self.diagram, ring, self.resolved, self.cells, d, self.geometry, self._index)

    def to_json(self) -> dict:
        return {
            "pd": self.diagram.render(),
            "ring": self.ring.name,
            "cells": [
                {"i": i, "j": j, "generators": [[g.state, g.labels] for g in self.cells[(i, j)]]}
                for i, j in self.keys()
            ],
            "d": [
                {"i": i, "j": j, "triplets": [list(t) for t in self.d.block((i, j)).triplets()]}
                for i, j in self.keys()
                if (i, j) in self.d.blocks and not self.d.blocks[(i, j)].is_zero()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _assemble(
    index: dict[tuple[int, int], tuple[Key, int]],
    dims: dict[Key, int],
    resolved: list[ResolvedState],
    geometry: list[EdgeGeometry],
    rules: Callable[[EdgeGeometry], dict],
    signed: bool,
    name: str,
    bidegree: Key,
) -> GradedMap:
    trip: dict[Key, list[tuple[int, int, int]]] = {}
    for geo in geometry:
        e = geo.edge
        rule = rules(geo)
        sign = e.sign if signed else 1
        for labels in range(1 << resolved[e.source].circle_count):
            key, col = index[(e.source, labels)]
            for lab, coeff in _local_images(geo, labels, rule):
                tkey, row = index[(e.target, lab)]
                assert tkey == (key[0] + bidegree[0], key[1] + bidegree[1]), (name, key, tkey)
                trip.setdefault(key, []).append((row, col, sign * coeff))
    blocks = {}
    for key, ts in trip.items():
        tgt = (key[0] + bidegree[0], key[1] + bidegree[1])
        blocks[key] = SparseMatrix.from_triplets(dims[tgt], dims[key], ts)
    return GradedMap(name, bidegree, dims, blocks)


def build_complex(D: PlanarDiagram, ring: Ring = ZZ, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> BigradedComplex:
    resolved = resolve_all(D, max_crossings)
    gens: dict[Key, list[Generator]] = {}
    for rs in resolved:
        k = rs.circle_count
        for labels in range(1 << k):
            q = rs.j + k - 2 * bin(labels).count("1")
            gens.setdefault((rs.i, q), []).append(Generator(rs.state, labels, q))
    cells = {key: sorted(g) for key, g in sorted(gens.items())}
    index = {(g.state, g.labels): (key, pos) for key, gs in cells.items() for pos, g in enumerate(gs)}
    dims = {key: len(gs) for key, gs in cells.items()}
    geometry = [edge_geometry(D, resolved[e.source], resolved[e.target], e) for e in cube_edges(D, resolved)]
    d = _assemble(
        index, dims, resolved, geometry,
        lambda g: MERGE if g.edge.kind == "merge" else SPLIT,
        True, "d", (1, 0),
    )
    C = BigradedComplex(D, ZZ, resolved, cells, d, geometry, index)
    return C if ring == ZZ else C.over(ring)


def complex_from_json(obj: dict) -> BigradedComplex:
    """Rebuild a complex; generator encodings and triplets are checked against a fresh build."""
    D = parse_pd(obj["pd"])
    C = build_complex(D, Ring.parse(obj["ring"]))
    if C.dumps() != json.dumps(obj, sort_keys=True):
        raise ValueError("serialized complex does not match its diagram")
    return C


def nu_map(C: BigradedComplex) -> GradedMap:
    """Sum over X positions of the generator with that X turned into 1."""
    trip: dict[Key, list[tuple[int, int, int]]] = {}
    for key, gens in C.cells.items():
        for col, g in enumerate(gens):
            lab = g.labels
            while lab:
                low = lab & -lab
                tkey, row = C.locate(g.state, g.labels ^ low)
                trip.setdefault(key, []).append((row, col, 1))
                lab ^= low
    blocks = {}
    for key, ts in trip.items():
        blocks[key] = SparseMatrix.from_triplets(C.dim((key[0], key[1] + 2)), C.dim(key), ts)
    return GradedMap("nu", (0, 2), C.dims, blocks)


def turner_map(C: BigradedComplex) -> GradedMap:
    if C.ring != Z2:
        raise ValueError("the Turner differential is only defined over Z2")
    dT = _assemble(
        C._index, C.dims, C.resolved, C.geometry,
        lambda g: MERGE_T if g.edge.kind == "merge" else SPLIT_T,
        False, "dT", (1, 2),
    )
    return dT.reduce(2)


def delta_map(C: BigradedComplex) -> GradedMap:
    """delta = d nu + nu d over Z; every entry turns out even."""
    if C.ring != ZZ:
        raise ValueError("delta is built over Z")
    nu = nu_map(C)
    return C.d.then(nu, "nu.d") + nu.then(C.d, "d.nu")


# --------------------------------------------------------------------------
# local pair types


class PairType(Enum):
    A = "A"
    B = "B"
    C_M = "C_m"
    C_DELTA = "C_Δ"


_TYPE_BY_COUNTS = {(0, 0): PairType.A, (1, 1): PairType.B, (0, 2): PairType.C_M, (2, 0): PairType.C_DELTA}

Path = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class PairClassification:
    tag: PairType
    lower: tuple[Path, ...]  # x -> y -> z through d then nu
    upper: tuple[Path, ...]  # x -> y' -> z through nu then d

    @staticmethod
    def render_path(path: Path) -> str:
        return "→".join("⊗".join("X" if b else "1" for b in part) for part in path)


def _flips(bits: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [bits[:k] + (0,) + bits[k + 1:] for k, b in enumerate(bits) if b]


def classify_local(kind: str, x: tuple[int, ...], z: tuple[int, ...]) -> PairClassification:
    rule = MERGE if kind == "merge" else SPLIT
    lower = []
    for y, _ in rule[x]:
        for zz in _flips(y):
            if zz == z:
                lower.append((x, y, z))
    upper = []
    for y in _flips(x):
        for zz, _ in rule[y]:
            if zz == z:
                upper.append((x, y, z))
    tag = _TYPE_BY_COUNTS[(len(lower), len(upper))]
    return PairClassification(tag, tuple(lower), tuple(upper))


def classify_pair(C: BigradedComplex, x: Generator, z: Generator, edge: CubeEdge) -> PairClassification:
    if (edge.source, edge.target) != (x.state, z.state):
        raise ValueError(f"states {x.state} and {z.state} are not joined by this edge")
    geo = next(g for g in C.geometry if g.edge == edge)
    for cs, ct in geo.untouched:
        if (x.labels >> cs) & 1 != (z.labels >> ct) & 1:
            raise ValueError("labels on circles away from the crossing must agree")
    xl = tuple((x.labels >> c) & 1 for c in geo.src)
    zl = tuple((z.labels >> c) & 1 for c in geo.tgt)
    return classify_local(edge.kind, xl, zl)
