"""Oriented link diagrams given as PD codes.

A crossing ``X(a, b, c, d)`` lists its four arcs starting from the incoming
under-strand.  The under-strand runs ``a -> c``; the over-strand runs either
``b -> d`` (a positive crossing) or ``d -> b`` (a negative one).  Which of the
two it is gets recovered from the orientation of the whole diagram: every arc
has exactly one head and one tail, so the known under-strand directions
propagate along the components.

Crossingless circles cannot be written as PD codes, so a diagram also carries
an explicit count of extra unknotted components (the ``;unknots=k`` suffix).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

Crossing = tuple[int, int, int, int]

_PD_RE = re.compile(r"^PD\[(?P<body>.*)\](?:;unknots=(?P<unknots>\d+))?$")
_X_RE = re.compile(r"X[\(\[](-?\d+),(-?\d+),(-?\d+),(-?\d+)[\)\]]")


class DiagramError(ValueError):
    """Raised for malformed or inconsistent PD codes."""


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    n_components: int
    unknots: int = 0

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_arcs(self) -> int:
        return 2 * len(self.crossings)

    def render(self) -> str:
        body = ",".join("X(%d,%d,%d,%d)" % x for x in self.crossings)
        text = f"PD[{body}]"
        default = 1 if not self.crossings else 0
        if self.unknots != default:
            text += f";unknots={self.unknots}"
        return text

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class KnotRecord:
    name: str
    pd: PlanarDiagram
    signature: int
    components: int
    alternating: bool

    def __post_init__(self):
        if self.components < 1:
            raise DiagramError(f"{self.name}: components must be >= 1")
        if self.pd.n_components != self.components:
            raise DiagramError(
                f"{self.name}: PD has {self.pd.n_components} components, "
                f"record says {self.components}"
            )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pd": self.pd.render(),
            "signature": self.signature,
            "components": self.components,
            "alternating": self.alternating,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "KnotRecord":
        return cls(
            name=obj["name"],
            pd=parse_pd(obj["pd"]),
            signature=int(obj["signature"]),
            components=int(obj["components"]),
            alternating=bool(obj["alternating"]),
        )


def _normalize_labels(crossings: list[Crossing]) -> list[Crossing]:
    """Relabel arcs to 1..2n, order-preserving; no-op if already so."""
    labels = sorted({a for x in crossings for a in x})
    if labels == list(range(1, len(labels) + 1)):
        return crossings
    relabel = {a: k + 1 for k, a in enumerate(labels)}
    return [tuple(relabel[a] for a in x) for x in crossings]


def _orient(crossings: list[Crossing]) -> list[int]:
    """Return +1 where the over-strand runs b -> d, -1 where it runs d -> b.

    Slot roles: True = the arc enters the crossing there.  Position 0 is
    always incoming and position 2 always outgoing; positions 1 and 3 depend
    on the unknown over-strand direction of that crossing.
    """
    n = len(crossings)
    slots: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(crossings):
        for pos, arc in enumerate(x):
            slots.setdefault(arc, []).append((k, pos))
    bad = sorted(a for a, s in slots.items() if len(s) != 2)
    if bad:
        raise DiagramError(f"arcs must occur exactly twice; offending arcs: {bad}")

    direction: list[int | None] = [None] * n

    def role(k: int, pos: int) -> bool | None:
        if pos == 0:
            return True
        if pos == 2:
            return False
        if direction[k] is None:
            return None
        # b -> d: b incoming, d outgoing
        b_in = direction[k] == 1
        return b_in if pos == 1 else not b_in

    def assign(k: int, pos: int, incoming: bool) -> bool:
        """Force slot (k, pos) to the given role; return True if newly set."""
        current = role(k, pos)
        if current is not None:
            if current != incoming:
                raise DiagramError("orientation inconsistency: no consistent arc successor")
            return False
        b_in = incoming if pos == 1 else not incoming
        direction[k] = 1 if b_in else -1
        return True

    def propagate(start: int) -> None:
        queue = deque([start])
        while queue:
            k = queue.popleft()
            for pos, arc in enumerate(crossings[k]):
                r = role(k, pos)
                if r is None:
                    continue
                (k1, p1), (k2, p2) = slots[arc]
                other = (k2, p2) if (k1, p1) == (k, pos) else (k1, p1)
                if other == (k, pos):
                    continue
                if assign(other[0], other[1], not r):
                    queue.append(other[0])

    for k in range(n):
        propagate(k)
    # Components that never pass under anything: orientation is a free choice,
    # fixed here as b -> d at the first undetermined crossing.
    for k in range(n):
        if direction[k] is None:
            direction[k] = 1
            propagate(k)
    return [int(s) for s in direction]


def _count_cycles(crossings: list[Crossing], signs: list[int]) -> int:
    succ: dict[int, int] = {}
    for (a, b, c, d), s in zip(crossings, signs):
        succ[a] = c
        if s == 1:
            succ[b] = d
        else:
            succ[d] = b
    if len(succ) != 2 * len(crossings):
        raise DiagramError("orientation inconsistency: arc successor is not a permutation")
    if sorted(succ.values()) != sorted(succ):
        raise DiagramError("orientation inconsistency: arc successor is not a permutation")
    seen: set[int] = set()
    cycles = 0
    for start in succ:
        if start in seen:
            continue
        cycles += 1
        a = start
        while a not in seen:
            seen.add(a)
            a = succ[a]
    return cycles


def make_diagram(crossings, unknots: int | None = None) -> PlanarDiagram:
    """Validate crossings and build a :class:`PlanarDiagram`.

    ``unknots`` defaults to 1 for an empty crossing list and 0 otherwise.
    """
    xs = [tuple(int(a) for a in x) for x in crossings]
    if any(len(x) != 4 for x in xs):
        raise DiagramError("every crossing needs exactly four arcs")
    if unknots is None:
        unknots = 0 if xs else 1
    if unknots < 0:
        raise DiagramError("unknot count must be nonnegative")
    if not xs:
        if unknots < 1:
            raise DiagramError("an empty diagram needs at least one unknot component")
        return PlanarDiagram((), (), unknots, unknots)
    xs = _normalize_labels(xs)
    signs = _orient(xs)
    cycles = _count_cycles(xs, signs)
    return PlanarDiagram(tuple(xs), tuple(signs), cycles + unknots, unknots)


def parse_pd(text: str) -> PlanarDiagram:
    """Parse ``PD[X(a,b,c,d),...]`` with an optional ``;unknots=k`` suffix."""
    compact = re.sub(r"\s+", "", text)
    m = _PD_RE.match(compact)
    if m is None:
        raise DiagramError(f"malformed PD code: {text!r}")
    body = m.group("body")
    crossings = []
    pos = 0
    while pos < len(body):
        xm = _X_RE.match(body, pos)
        if xm is None:
            raise DiagramError(f"malformed crossing near {body[pos:pos + 20]!r}")
        crossings.append(tuple(int(g) for g in xm.groups()))
        pos = xm.end()
        if pos < len(body):
            if body[pos] != ",":
                raise DiagramError(f"expected ',' at {body[pos:pos + 20]!r}")
            pos += 1
            if pos == len(body):
                raise DiagramError("trailing comma in PD code")
    if any(a <= 0 for x in crossings for a in x):
        raise DiagramError("arc identifiers must be positive integers")
    unknots = m.group("unknots")
    return make_diagram(crossings, None if unknots is None else int(unknots))


def writhe(D: PlanarDiagram) -> int:
    return sum(D.signs)


def mirror(D: PlanarDiagram) -> PlanarDiagram:
    """Switch every crossing.

    The old over-strand becomes the under-strand, so each tuple is rotated to
    start at the incoming end of the old over-strand.
    """
    if not D.crossings:
        return D
    flipped = []
    for (a, b, c, d), s in zip(D.crossings, D.signs):
        flipped.append((b, c, d, a) if s == 1 else (d, a, b, c))
    out = make_diagram(flipped, D.unknots)
    assert out.signs == tuple(-s for s in D.signs)
    return out


def pd_from_knotinfo(crossings) -> list[Crossing]:
    """Convert KnotInfo / KnotTheory PD tuples to this module's convention.

    Those tables list the arcs in the opposite rotational order, so the same
    diagram is obtained by swapping the second and fourth entries.
    """
    return [(a, d, c, b) for a, b, c, d in crossings]
