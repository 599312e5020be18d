"""Maps induced on Z/2 homology and the spectral sequences built from them.

* ``nu*`` and ``dT*`` are induced by chain maps commuting with d mod 2.
* ``beta`` is the Bockstein of 0 -> Z/2 -> Z/4 -> Z/2 -> 0, computed as
  half the integral differential of a {0, 1}-lift of a mod 2 cocycle.
* Turner pages come from the filtration of (C, d + dT) by the internal
  degree, reduced with the standard persistence algorithm.
* Bockstein pages B_r are read off the integral table and, independently,
  computed as the image of multiplication by 2^(r-1) on H(C; Z/2^r).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import BigradedComplex, GradedMap, Key, build_complex, delta_map, nu_map, turner_map
from .diagram import PlanarDiagram
from .homology import HomologyTable, is_thin, khovanov_homology, torsion_summary
from .linalg import GroupDescription, Mod2Echelon, Mod2Matrix, QQ, Ring, SparseMatrix, Z2, ZZ, iter_bits, z_mod
from .statecube import DEFAULT_MAX_CROSSINGS


# --------------------------------------------------------------------------
# homology bases over Z/2


def _mod2_blocks(f: GradedMap) -> dict[Key, Mod2Matrix]:
    return {k: f.block(k).to_mod2() for k in f.keys()}


@dataclass
class CellBasis:
    dim: int
    representatives: list[int]  # cocycles as bitsets over the cell's generators
    echelon: Mod2Echelon = field(repr=False)

    def project(self, vec: int) -> int:
        """Class of a cocycle as a bitset over the representatives."""
        rest, tag = self.echelon.reduce(vec)
        if rest:
            raise ValueError("vector is not a cocycle")
        return tag


class HomologyBasisMod2:
    """Representatives and projections for H(C; Z/2), one cell at a time.

    Boundaries are inserted into an echelon form first with tag 0; the
    kernel vectors that remain independent become representatives, tagged by
    their index.  Reducing any cocycle against the echelon form then leaves
    exactly the bitset of its class.
    """

    def __init__(self, C: BigradedComplex):
        if C.ring != Z2:
            C = C.over(Z2)
        self.complex = C
        self.d = _mod2_blocks(C.d)
        self.cells: dict[Key, CellBasis] = {}
        for key in C.keys():
            i, j = key
            ech = Mod2Echelon()
            for col in self.d_into(key).columns:
                ech.insert(col, 0)
            reps = []
            for z in self.d[key].kernel():
                vec, _ = ech.reduce(z)
                if vec:
                    ech.rows[vec.bit_length() - 1] = (vec, 1 << len(reps))
                    reps.append(vec)
            self.cells[key] = CellBasis(len(reps), reps, ech)

    def d_into(self, key: Key) -> Mod2Matrix:
        prev = (key[0] - 1, key[1])
        if prev in self.d:
            return self.d[prev]
        return Mod2Matrix.zero(self.complex.dim(key), 0)

    def dim(self, key: Key) -> int:
        cell = self.cells.get(key)
        return cell.dim if cell else 0

    def dims(self) -> dict[Key, int]:
        return {k: c.dim for k, c in self.cells.items() if c.dim}

    def total_dimension(self) -> int:
        return sum(c.dim for c in self.cells.values())

    def project(self, key: Key, vec: int) -> int:
        if key not in self.cells:
            if vec:
                raise ValueError(f"nonzero vector in empty cell {key}")
            return 0
        return self.cells[key].project(vec)

    def keys(self) -> list[Key]:
        return sorted(self.cells)


def homology_basis_mod2(C: BigradedComplex) -> HomologyBasisMod2:
    return HomologyBasisMod2(C)


# --------------------------------------------------------------------------
# induced maps


class InducedMap:
    """A bigraded map on H(C; Z/2) in the chosen basis."""

    def __init__(self, name: str, bidegree: Key, basis: HomologyBasisMod2, blocks: dict[Key, Mod2Matrix]):
        self.name = name
        self.bidegree = bidegree
        self.basis = basis
        self.blocks = blocks

    def target(self, key: Key) -> Key:
        return key[0] + self.bidegree[0], key[1] + self.bidegree[1]

    def block(self, key: Key) -> Mod2Matrix:
        m = self.blocks.get(key)
        if m is None:
            m = Mod2Matrix.zero(self.basis.dim(self.target(key)), self.basis.dim(key))
        return m

    def keys(self) -> list[Key]:
        return self.basis.keys()

    def then(self, other: "InducedMap") -> "InducedMap":
        bideg = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
        blocks = {k: other.block(self.target(k)) @ self.block(k) for k in self.keys()}
        return InducedMap(f"{other.name}.{self.name}", bideg, self.basis, blocks)

    def __add__(self, other: "InducedMap") -> "InducedMap":
        if self.bidegree != other.bidegree:
            raise ValueError("bidegree mismatch")
        blocks = {k: self.block(k) + other.block(k) for k in self.keys()}
        return InducedMap(f"{self.name}+{other.name}", self.bidegree, self.basis, blocks)

    def rank(self) -> int:
        return sum(self.block(k).rank() for k in self.keys())

    def rank_at(self, key: Key) -> int:
        return self.block(key).rank()

    def is_zero(self) -> bool:
        return all(self.block(k).is_zero() for k in self.keys())

    def differs_at(self, other: "InducedMap") -> list[Key]:
        return [k for k in self.keys() if self.block(k) != other.block(k)]


def _commutes_with_d(f: GradedMap, C: BigradedComplex) -> bool:
    d = C.d.reduce(2)
    return (d.then(f) + f.then(d)).is_zero(2)


def induced_map(basis: HomologyBasisMod2, f: GradedMap, check: bool = True) -> InducedMap:
    """Matrix of [c] -> [f c].

    ``f`` must commute with d mod 2.  The image of every boundary is checked
    to project to zero, so the result is well defined by construction.
    """
    C = basis.complex
    if check and not _commutes_with_d(f, C):
        raise ValueError(f"{f.name} does not commute with d mod 2")
    fm = _mod2_blocks(f)
    blocks = {}
    for key in basis.keys():
        tgt = f.target(key)
        fk = fm.get(key)
        if fk is None or basis.dim(key) == 0:
            continue
        cols = [basis.project(tgt, fk.apply(rep)) for rep in basis.cells[key].representatives]
        for b in basis.d_into(key).columns:
            if basis.project(tgt, fk.apply(b)):
                raise ValueError(f"{f.name}: image of a boundary is not a boundary at {key}")
        blocks[key] = Mod2Matrix(basis.dim(tgt), basis.dim(key), cols)
    return InducedMap(f.name + "*", f.bidegree, basis, blocks)


def _lift_image(d: SparseMatrix, vec: int) -> dict[int, int]:
    return d.apply({k: 1 for k in iter_bits(vec)})


def _half_mod2(image: dict[int, int]) -> int:
    out = 0
    for r, v in image.items():
        if v % 2:
            raise ValueError("odd entry in d(lift c): the vector is not a cocycle mod 2")
        if (v // 2) % 2:
            out |= 1 << r
    return out


def bockstein(basis: HomologyBasisMod2, CZ: BigradedComplex) -> InducedMap:
    """beta[c] = [d(lift c) / 2] with the lift taken entrywise in {0, 1}."""
    if CZ.ring != ZZ:
        raise ValueError("the Bockstein needs the integral complex")
    blocks = {}
    for key in basis.keys():
        if basis.dim(key) == 0:
            continue
        tgt = (key[0] + 1, key[1])
        dk = CZ.d.block(key)
        cols = [basis.project(tgt, _half_mod2(_lift_image(dk, rep))) for rep in basis.cells[key].representatives]
        for b in basis.d_into(key).columns:
            if basis.project(tgt, _half_mod2(_lift_image(dk, b))):
                raise ValueError(f"beta is not well defined at {key}")
        blocks[key] = Mod2Matrix(basis.dim(tgt), basis.dim(key), cols)
    return InducedMap("beta", (1, 0), basis, blocks)


# --------------------------------------------------------------------------
# the identity dT* = beta nu* + nu* beta


@dataclass
class DiffOps:
    """Everything induced on H(C; Z/2) for one diagram, built once."""

    CZ: BigradedComplex
    basis: HomologyBasisMod2
    nu: GradedMap
    dT: GradedMap
    nu_star: InducedMap
    dT_star: InducedMap
    beta: InducedMap

    @classmethod
    def build(cls, D: PlanarDiagram, CZ: BigradedComplex | None = None, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> "DiffOps":
        if CZ is None:
            CZ = build_complex(D, ZZ, max_crossings)
        C2 = CZ.over(Z2)
        basis = HomologyBasisMod2(C2)
        nu = nu_map(C2).reduce(2)
        dT = turner_map(C2)
        return cls(CZ, basis, nu, dT, induced_map(basis, nu), induced_map(basis, dT), bockstein(basis, CZ))


@dataclass
class LemmaReport:
    holds: bool
    discrepancies: list[Key]
    ranks: dict[str, int]

    def to_json(self) -> dict:
        return {"holds": self.holds, "discrepancies": [list(k) for k in self.discrepancies], "ranks": self.ranks}


def verify_turner_lemma(D: PlanarDiagram, ops: DiffOps | None = None) -> LemmaReport:
    ops = ops or DiffOps.build(D)
    rhs = ops.nu_star.then(ops.beta) + ops.beta.then(ops.nu_star)
    bad = ops.dT_star.differs_at(rhs)
    ranks = {"dT_star": ops.dT_star.rank(), "beta": ops.beta.rank(), "nu_star": ops.nu_star.rank()}
    return LemmaReport(not bad, bad, ranks)


def chain_identity_check(
    CZ: BigradedComplex,
    key: Key,
    c: int,
    delta: GradedMap | None = None,
    dT: GradedMap | None = None,
) -> bool:
    """Check delta(c)/2 = dT(c) mod 2 entry by entry for a mod 2 cocycle ``c`` at ``key``."""
    if CZ.ring != ZZ:
        raise ValueError("needs the integral complex")
    lift = {k: 1 for k in iter_bits(c)}
    if any(v % 2 for v in CZ.d.block(key).apply(lift).values()):
        raise ValueError("c is not a cocycle mod 2")
    delta = delta or delta_map(CZ)
    dT = dT or turner_map(CZ.over(Z2))
    half = _half_mod2(delta.block(key).apply(lift))
    return half == dT.block(key).to_mod2().apply(c)


# --------------------------------------------------------------------------
# spectral sequence pages


@dataclass
class PageReport:
    r: int
    dims: dict[Key, int]
    collapsed: bool = False
    differential_rank: int = 0  # rank of the differential leaving this page

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "total": self.total,
            "collapsed": self.collapsed,
            "differential_rank": self.differential_rank,
            "dims": [[i, j, n] for (i, j), n in sorted(self.dims.items())],
        }


@dataclass
class FilteredPairing:
    """Persistence of (C, d + dT) filtered by the internal degree."""

    essential: dict[Key, int]
    pairs: list[tuple[Key, Key]]  # (source, target) of each pair

    @staticmethod
    def gap(pair: tuple[Key, Key]) -> int:
        (_, js), (_, jt) = pair
        return (jt - js) // 2

    def max_gap(self) -> int:
        return max((self.gap(p) for p in self.pairs), default=0)

    def dims(self, r: int) -> dict[Key, int]:
        out = dict(self.essential)
        for p in self.pairs:
            if self.gap(p) >= r:
                for key in p:
                    out[key] = out.get(key, 0) + 1
        return {k: v for k, v in sorted(out.items()) if v}

    def rank_at_page(self, r: int) -> int:
        return sum(1 for p in self.pairs if self.gap(p) == r)


def filtered_pairing(C: BigradedComplex, dT: GradedMap | None = None) -> FilteredPairing:
    if C.ring != Z2:
        C = C.over(Z2)
    dT = dT or turner_map(C)
    d = C.d.reduce(2)
    essential: dict[Key, int] = {}
    pairs: list[tuple[Key, Key]] = []
    degrees = C.homological_degrees()
    order: dict[int, list[tuple[int, int, Key, int]]] = {}
    for i in degrees:
        gens = []
        for key in C.keys():
            if key[0] != i:
                continue
            for pos, g in enumerate(C.cells[key]):
                gens.append((-key[1], g.state, g.labels, key, pos))
        gens.sort()
        order[i] = [(g[1], g[2], g[3], g[4]) for g in gens]
    positive_rows: dict[int, set[int]] = {}
    for i in degrees:
        rows = order.get(i + 1, [])
        row_index = {(key, pos): n for n, (_, _, key, pos) in enumerate(rows)}
        pivots: dict[int, int] = {}
        zero_cols: set[int] = set()
        for n, (_, _, key, pos) in enumerate(order[i]):
            col = 0
            for f in (d, dT):
                tgt = f.target(key)
                for r in f.block(key).cols[pos]:
                    col ^= 1 << row_index[(tgt, r)]
            while col:
                low = col.bit_length() - 1
                hit = pivots.get(low)
                if hit is None:
                    pivots[low] = col
                    pairs.append((key, rows[low][2]))
                    break
                col ^= hit
            if not col:
                zero_cols.add(n)
        paired_rows = set(pivots)
        positive_rows[i + 1] = paired_rows
        if i in positive_rows:
            clash = positive_rows[i] - zero_cols
            if clash:
                raise AssertionError("a paired generator has a nonzero reduced column")
        for n in zero_cols:
            if n in positive_rows.get(i, set()):
                continue
            key = order[i][n][2]
            essential[key] = essential.get(key, 0) + 1
    return FilteredPairing(essential, pairs)


def turner_pages(
    C: BigradedComplex,
    r_max: int = 4,
    basis: HomologyBasisMod2 | None = None,
    dT_star: InducedMap | None = None,
) -> list[PageReport]:
    """Pages E_1 .. E_R with R = max(r_max, first page after the last nonzero d_r).

    E_1 is checked against H(C; Z/2) and rank d_1 against rank dT*.
    """
    if C.ring != Z2:
        C = C.over(Z2)
    dT = turner_map(C)
    pairing = filtered_pairing(C, dT)
    top = max(r_max, pairing.max_gap() + 1)
    limit = pairing.dims(top)
    pages = []
    for r in range(1, top + 1):
        dims = pairing.dims(r)
        pages.append(PageReport(r, dims, dims == limit, pairing.rank_at_page(r)))
    if basis is not None:
        if pages[0].dims != basis.dims():
            raise AssertionError("E_1 differs from H(C; Z/2)")
        if dT_star is not None and dT_star.rank() != pages[0].differential_rank:
            raise AssertionError("rank of d_1 differs from rank of dT*")
    return pages


def bockstein_page_dims(ztable: HomologyTable, r: int) -> PageReport:
    """dim B_r from the integral table.

    Over Z/2^r the homology at (i, j) is H^{i,j} (x) Z/2^r plus
    Tor(H^{i+1,j}, Z/2^r); multiplication by 2^(r-1) survives on the free
    summands and on every cyclic 2-group of order at least 2^r.
    """
    if r < 1:
        raise ValueError("pages start at r = 1")
    if ztable.ring != ZZ:
        raise ValueError("needs the integral table")

    def big(g: GroupDescription) -> int:
        return sum(1 for q in g.torsion if q % 2 == 0 and q >= 2 ** r)

    keys = set(ztable.entries) | {(i - 1, j) for i, j in ztable.entries}
    dims = {}
    for i, j in sorted(keys):
        n = ztable[(i, j)].free_rank + big(ztable[(i, j)]) + big(ztable[(i + 1, j)])
        if n:
            dims[(i, j)] = n
    free = {k: g.free_rank for k, g in ztable.entries.items() if g.free_rank}
    return PageReport(r, dims, dims == free)


def bockstein_page_direct(D: PlanarDiagram, r: int, CZ: BigradedComplex | None = None) -> PageReport:
    """dim B_r as the image of multiplication by 2^(r-1) on H(C; Z/2^r)."""
    if r < 1:
        raise ValueError("pages start at r = 1")
    CZ = CZ or build_complex(D, ZZ)
    table = khovanov_homology(D, z_mod(2 ** r), CZ)
    dims = {k: g.free_rank for k, g in table.entries.items() if g.free_rank}
    qtable = khovanov_homology(D, QQ, CZ)
    free = {k: g.free_rank for k, g in qtable.entries.items()}
    return PageReport(r, dims, dims == free)


# --------------------------------------------------------------------------
# acyclicity of nu and nu*


def nu_chain_acyclic(C: BigradedComplex, nu: GradedMap | None = None) -> bool:
    nu = (nu or nu_map(C)).reduce(2)
    for key in C.keys():
        into = nu.block((key[0], key[1] - 2)).to_mod2().rank()
        out = nu.block(key).to_mod2().rank()
        if C.dim(key) != into + out:
            return False
    return True


def induced_acyclic(f: InducedMap) -> bool:
    basis = f.basis
    for key in basis.keys():
        src = (key[0] - f.bidegree[0], key[1] - f.bidegree[1])
        if basis.dim(key) != f.rank_at(key) + f.rank_at(src):
            return False
    return True


# --------------------------------------------------------------------------
# the main theorem on thin knots


@dataclass
class TheoremReport:
    applicable: bool
    torsion_only_order_two: bool = True
    rank_identity: bool = True
    nu_star_iso: bool = True
    beta_vanishes_lower: bool = True
    bockstein_collapse: bool = True
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.applicable and all(
            (
                self.torsion_only_order_two,
                self.rank_identity,
                self.nu_star_iso,
                self.beta_vanishes_lower,
                self.bockstein_collapse,
            )
        )

    @property
    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.holds else "fail"


def verify_main_theorem(
    D: PlanarDiagram,
    ops: DiffOps | None = None,
    tables: dict[str, HomologyTable] | None = None,
) -> TheoremReport:
    """Torsion of order 2^k, k > 1, is absent when H(L; Z/2) is thin.

    Checks the torsion itself, the rank bookkeeping rank dT* = 2 rank beta,
    that nu* maps the lower diagonal isomorphically onto the upper one while
    beta kills the lower diagonal, and that B_2 computed over Z/4 already
    has the rational dimensions.
    """
    ops = ops or DiffOps.build(D)
    CZ = ops.CZ
    if tables is None:
        tables = {name: khovanov_homology(D, Ring.parse(name), CZ) for name in ("Q", "Z", "Z2")}
    z2_diags = tables["Z2"].diagonals()
    if not is_thin(z2_diags):
        return TheoremReport(False, details={"z2_diagonals": sorted(z2_diags)})
    torsion = torsion_summary(tables["Z"])
    rk_dT, rk_beta = ops.dT_star.rank(), ops.beta.rank()
    lower = max(z2_diags) if z2_diags else None
    nu_iso = True
    beta_low = True
    for key in ops.basis.keys():
        i, j = key
        if 2 * i - j != lower or ops.basis.dim(key) == 0:
            continue
        blk = ops.nu_star.block(key)
        if not (blk.nrows == blk.ncols == blk.rank()):
            nu_iso = False
        if not ops.beta.block(key).is_zero():
            beta_low = False
    if len(z2_diags) == 2:
        # every class on the upper diagonal must be hit
        upper = min(z2_diags)
        hit = sum(ops.nu_star.block(k).rank() for k in ops.basis.keys() if 2 * k[0] - k[1] == lower)
        total_upper = sum(ops.basis.dim(k) for k in ops.basis.keys() if 2 * k[0] - k[1] == upper)
        nu_iso = nu_iso and hit == total_upper
    direct = bockstein_page_direct(D, 2, CZ)
    qdims = {k: g.free_rank for k, g in tables["Q"].entries.items()}
    return TheoremReport(
        applicable=True,
        torsion_only_order_two=set(torsion) <= {2},
        rank_identity=rk_dT == 2 * rk_beta,
        nu_star_iso=nu_iso,
        beta_vanishes_lower=beta_low,
        bockstein_collapse=direct.dims == qdims,
        details={"torsion": torsion, "rank_dT_star": rk_dT, "rank_beta": rk_beta},
    )
