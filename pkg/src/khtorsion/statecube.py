"""Kauffman states, their circle resolutions, and the edges of the state cube.

States are integers: bit ``c`` set means a negative marker at crossing ``c``.
A positive marker at ``X(a, b, c, d)`` joins arcs ``a``-``d`` and ``b``-``c``;
a negative marker joins ``a``-``b`` and ``c``-``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .diagram import PlanarDiagram, writhe

DEFAULT_MAX_CROSSINGS = 24


class CrossingCapError(ValueError):
    pass


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


@dataclass(frozen=True)
class ResolvedState:
    state: int
    circle_count: int
    arc_to_circle: tuple[int, ...]  # index arc - 1
    sigma: int
    i: int
    j: int


@dataclass(frozen=True)
class CubeEdge:
    source: int
    target: int
    crossing: int
    sign: int
    kind: str  # "merge" | "split"


def check_cap(D: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> None:
    if D.n_crossings > max_crossings:
        raise CrossingCapError(
            f"diagram has {D.n_crossings} crossings, cap is {max_crossings}"
        )


def sigma(D: PlanarDiagram, s: int) -> int:
    return D.n_crossings - 2 * bin(s).count("1")


def gradings(D: PlanarDiagram, s: int) -> tuple[int, int]:
    w = writhe(D)
    sg = sigma(D, s)
    return (w - sg) // 2, (3 * w - sg) // 2


def resolve(D: PlanarDiagram, s: int) -> ResolvedState:
    """Resolve every crossing according to ``s`` and label the circles.

    Circles through arcs are numbered by ascending minimal arc; the extra
    crossingless components come after them.
    """
    n = D.n_crossings
    if s < 0 or s >> n:
        raise ValueError(f"state {s} does not fit {n} crossings")
    uf = UnionFind(2 * n + 1)
    for c, (a, b, cc, d) in enumerate(D.crossings):
        if (s >> c) & 1:
            uf.union(a, b)
            uf.union(cc, d)
        else:
            uf.union(a, d)
            uf.union(b, cc)
    index: dict[int, int] = {}
    arc_to_circle = []
    for arc in range(1, 2 * n + 1):
        root = uf.find(arc)
        if root not in index:
            index[root] = len(index)
        arc_to_circle.append(index[root])
    i, j = gradings(D, s)
    return ResolvedState(
        state=s,
        circle_count=len(index) + D.unknots,
        arc_to_circle=tuple(arc_to_circle),
        sigma=sigma(D, s),
        i=i,
        j=j,
    )


def resolve_all(D: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> list[ResolvedState]:
    check_cap(D, max_crossings)
    return [resolve(D, s) for s in range(1 << D.n_crossings)]


def edge_sign(s_plus: int, c: int) -> int:
    if (s_plus >> c) & 1:
        raise ValueError(f"crossing {c} carries a negative marker in state {s_plus}")
    return -1 if bin(s_plus & ((1 << c) - 1)).count("1") & 1 else 1


def iter_edges(n: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(source, target, crossing)`` for all n * 2^(n-1) cube edges."""
    for s in range(1 << n):
        for c in range(n):
            if not (s >> c) & 1:
                yield s, s | (1 << c), c


def cube_edges(D: PlanarDiagram, resolved: list[ResolvedState] | None = None) -> list[CubeEdge]:
    if resolved is None:
        resolved = resolve_all(D)
    edges = []
    for s, t, c in iter_edges(D.n_crossings):
        delta = resolved[t].circle_count - resolved[s].circle_count
        if abs(delta) != 1:
            raise ValueError(f"edge {s}->{t} does not merge or split circles; non-planar PD?")
        edges.append(CubeEdge(s, t, c, edge_sign(s, c), "merge" if delta < 0 else "split"))
    return edges
