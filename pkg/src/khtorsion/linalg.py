"""Exact sparse linear algebra over Z, Q, Z/2 and Z/p^r.

Integer matrices are stored column-sparse.  Mod-2 matrices keep each column
as a Python int used as a bitset, which makes Gaussian elimination a sequence
of XORs on machine-word chunks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np


# --------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class Ring:
    name: str
    modulus: int  # 0 for Z and Q

    @property
    def is_field(self) -> bool:
        return self.name == "Q" or self.modulus == 2

    @property
    def prime_power(self) -> tuple[int, int]:
        """(p, r) with modulus = p**r."""
        m = self.modulus
        if m < 2:
            raise ValueError(f"{self.name} is not a finite ring")
        p = _smallest_prime_factor(m)
        r = 0
        while m % p == 0:
            m //= p
            r += 1
        if m != 1:
            raise ValueError(f"{self.name}: modulus is not a prime power")
        return p, r

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Ring":
        t = text.strip().upper().replace("ℤ", "Z").replace("ℚ", "Q")
        if t == "Z":
            return ZZ
        if t == "Q":
            return QQ
        if t.startswith("Z") and t[1:].isdigit():
            m = int(t[1:])
            ring = cls(f"Z{m}", m)
            ring.prime_power  # validates
            return ring
        raise ValueError(f"unknown coefficient ring {text!r}")


ZZ = Ring("Z", 0)
QQ = Ring("Q", 0)
Z2 = Ring("Z2", 2)


def z_mod(m: int) -> Ring:
    return Ring.parse(f"Z{m}")


# --------------------------------------------------------------------------
# sparse integer matrices


@dataclass(frozen=True)
class SparseMatrix:
    nrows: int
    ncols: int
    cols: tuple[dict[int, int], ...] = field(repr=False)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, tuple({} for _ in range(ncols)))

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable[tuple[int, int, int]]) -> "SparseMatrix":
        cols: list[dict[int, int]] = [{} for _ in range(ncols)]
        for r, c, v in triplets:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            col = cols[c]
            val = col.get(r, 0) + v
            if val:
                col[r] = val
            else:
                col.pop(r, None)
        return cls(nrows, ncols, tuple(cols))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls.from_triplets(
            nrows, ncols, ((r, c, int(v)) for r, row in enumerate(rows) for c, v in enumerate(row) if v)
        )

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, tuple({k: 1} for k in range(n)))

    def triplets(self) -> Iterator[tuple[int, int, int]]:
        for c, col in enumerate(self.cols):
            for r in sorted(col):
                yield r, c, col[r]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.cols)

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.triplets():
            out[r][c] = v
        return out

    def to_numpy(self, modulus: int = 0) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r, c] = v % modulus if modulus else v
        return out

    def apply(self, vec: dict[int, int]) -> dict[int, int]:
        """Multiply by a sparse column vector given as {index: value}."""
        out: dict[int, int] = {}
        for c, x in vec.items():
            for r, v in self.cols[c].items():
                val = out.get(r, 0) + x * v
                if val:
                    out[r] = val
                else:
                    del out[r]
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, tuple(self.apply(col) for col in other.cols))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for r, v in b.items():
                val = col.get(r, 0) + v
                if val:
                    col[r] = val
                else:
                    del col[r]
            cols.append(col)
        return SparseMatrix(self.nrows, self.ncols, tuple(cols))

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, tuple({r: -v for r, v in col.items()} for col in self.cols))

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __hash__(self):
        return hash((self.shape, tuple(self.triplets())))

    def reduce(self, modulus: int) -> "SparseMatrix":
        """Entries reduced into [0, modulus); zeros dropped."""
        cols = []
        for col in self.cols:
            cols.append({r: v % modulus for r, v in col.items() if v % modulus})
        return SparseMatrix(self.nrows, self.ncols, tuple(cols))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_triplets(self.ncols, self.nrows, ((c, r, v) for r, c, v in self.triplets()))

    def to_mod2(self) -> "Mod2Matrix":
        columns = []
        for col in self.cols:
            bits = 0
            for r, v in col.items():
                if v & 1:
                    bits |= 1 << r
            columns.append(bits)
        return Mod2Matrix(self.nrows, self.ncols, columns)


# --------------------------------------------------------------------------
# mod 2


def iter_bits(v: int) -> Iterator[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def bits_to_list(v: int, n: int) -> list[int]:
    return [(v >> k) & 1 for k in range(n)]


def list_to_bits(values: Sequence[int]) -> int:
    out = 0
    for k, x in enumerate(values):
        if x % 2:
            out |= 1 << k
    return out


class Mod2Echelon:
    """Incremental echelon basis over Z/2, pivoting on the highest set bit.

    Every stored row carries a tag bitset recording which inserted vectors it
    is a combination of, so reductions double as solvers.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        rows = self.rows
        while vec:
            h = vec.bit_length() - 1
            hit = rows.get(h)
            if hit is None:
                return vec, tag
            vec ^= hit[0]
            tag ^= hit[1]
        return 0, tag

    def insert(self, vec: int, tag: int = 0) -> tuple[int, int]:
        """Insert; returns the reduced (vec, tag).  vec == 0 means dependent."""
        vec, tag = self.reduce(vec, tag)
        if vec:
            self.rows[vec.bit_length() - 1] = (vec, tag)
        return vec, tag


def gf2_rank(columns: Iterable[int]) -> int:
    ech = Mod2Echelon()
    return sum(1 for c in columns if ech.insert(c)[0])


@dataclass
class Mod2Matrix:
    nrows: int
    ncols: int
    columns: list[int]

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Mod2Matrix":
        return cls(nrows, ncols, [0] * ncols)

    @classmethod
    def identity(cls, n: int) -> "Mod2Matrix":
        return cls(n, n, [1 << k for k in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "Mod2Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [0] * ncols
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v % 2:
                    cols[c] |= 1 << r
        return cls(nrows, ncols, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def apply(self, v: int) -> int:
        out = 0
        cols = self.columns
        for k in iter_bits(v):
            out ^= cols[k]
        return out

    def __matmul__(self, other: "Mod2Matrix") -> "Mod2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mod2Matrix(self.nrows, other.ncols, [self.apply(c) for c in other.columns])

    def __add__(self, other: "Mod2Matrix") -> "Mod2Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mod2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.columns, other.columns)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mod2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def is_zero(self) -> bool:
        return not any(self.columns)

    def rank(self) -> int:
        return gf2_rank(self.columns)

    def kernel(self) -> list[int]:
        """Basis of the null space, as bitsets over the columns."""
        ech = Mod2Echelon()
        out = []
        for k, col in enumerate(self.columns):
            vec, tag = ech.insert(col, 1 << k)
            if not vec:
                out.append(tag)
        return out

    def to_dense(self) -> list[list[int]]:
        return [[(c >> r) & 1 for c in self.columns] for r in range(self.nrows)]


def solve_mod2(A, b):
    """Some x with A x = b over Z/2, or None.

    ``A`` is a :class:`Mod2Matrix` or :class:`SparseMatrix`; ``b`` is either a
    bitset int or a 0/1 sequence, and x is returned in the same form.
    """
    if isinstance(A, SparseMatrix):
        A = A.to_mod2()
    as_list = not isinstance(b, int)
    target = list_to_bits(b) if as_list else b
    if as_list and len(b) != A.nrows:
        raise ValueError("right-hand side has the wrong length")
    ech = Mod2Echelon()
    for k, col in enumerate(A.columns):
        ech.insert(col, 1 << k)
    rest, x = ech.reduce(target)
    if rest:
        return None
    return bits_to_list(x, A.ncols) if as_list else x


def rank_mod2(M: SparseMatrix) -> int:
    return gf2_rank(M.to_mod2().columns)


# --------------------------------------------------------------------------
# rank over Q


def _row_dicts(M: SparseMatrix) -> tuple[dict[int, dict[int, int]], dict[int, set[int]]]:
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for c, col in enumerate(M.cols):
        if col:
            cols[c] = set(col)
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
    return rows, cols


def _rank_rational(M: SparseMatrix) -> int:
    """Fraction-free elimination; rows are kept primitive to stop growth."""
    rows, cols = _row_dicts(M)
    rank = 0
    while cols:
        c = min(cols, key=lambda k: len(cols[k]))
        p = min(cols[c], key=lambda r: (abs(rows[r][c]) != 1, len(rows[r])))
        prow = rows.pop(p)
        pv = prow[c]
        for cc in prow:
            cols[cc].discard(p)
        for r in list(cols[c]):
            row = rows[r]
            f = row[c]
            new = {k: pv * v for k, v in row.items()}
            for k, v in prow.items():
                val = new.get(k, 0) - f * v
                if val:
                    new[k] = val
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            for k in row:
                if k not in new:
                    cols[k].discard(r)
            for k in new:
                cols.setdefault(k, set()).add(r)
            if new:
                rows[r] = new
            else:
                del rows[r]
        rank += 1
        for k in [k for k, s in cols.items() if not s]:
            del cols[k]
    return rank


def rank_over_field(M: SparseMatrix, characteristic: int) -> int:
    if characteristic == 2:
        return rank_mod2(M)
    if characteristic == 0:
        return _rank_rational(M)
    raise ValueError("only characteristic 0 and 2 are supported")


# --------------------------------------------------------------------------
# Smith normal form over Z


@dataclass
class SmithDecomposition:
    diagonal: list[int]
    left: list[list[int]] | None = None
    right: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _dense_snf(A: list[list[int]], track: bool):
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(r == c) for c in range(m)] for r in range(m)] if track else None
    V = [[int(r == c) for c in range(n)] for r in range(n)] if track else None

    def swap_rows(a, b):
        if a != b:
            A[a], A[b] = A[b], A[a]
            if track:
                U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        if a != b:
            for row in A:
                row[a], row[b] = row[b], row[a]
            if track:
                for row in V:
                    row[a], row[b] = row[b], row[a]

    def add_row(dst, src, f):  # row_dst += f * row_src
        rd, rs = A[dst], A[src]
        for k in range(n):
            if rs[k]:
                rd[k] += f * rs[k]
        if track:
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += f * us[k]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in A:
            if row[src]:
                row[dst] += f * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += f * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for r in range(t, m):
            row = A[r]
            for c in range(t, n):
                v = row[c]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), r, c)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            clean = True
            piv = A[t][t]
            for r in range(t + 1, m):
                if A[r][t]:
                    add_row(r, t, -(A[r][t] // piv))
                    if A[r][t]:
                        clean = False
            for c in range(t + 1, n):
                if A[t][c]:
                    add_col(c, t, -(A[t][c] // piv))
                    if A[t][c]:
                        clean = False
            if not clean:
                cand = [(abs(A[r][t]), r, t) for r in range(t, m) if A[r][t]]
                cand += [(abs(A[t][c]), t, c) for c in range(t, n) if A[t][c]]
                _, r, c = min(cand)
                swap_rows(t, r)
                swap_cols(t, c)
                continue
            bad = next(
                (r for r in range(t + 1, m) if any(A[r][c] % piv for c in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if track:
                U[t] = [-v for v in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def _unit_pivot_eliminate(
    rows: dict[int, dict[int, int]],
    cols: dict[int, set[int]],
    modulus: int = 0,
    prime: int = 0,
) -> list[tuple[int, int]]:
    """Eliminate unit pivots in place, fill-minimizing; returns the pivots.

    Over Z the units are +-1; over Z/p^r (``modulus``, ``prime`` given) any
    entry prime to p.  Each pivot contributes an invariant factor 1.  Columns
    are visited by increasing fill and the sparsest unit row is chosen.
    """
    if modulus:
        def is_unit(v):
            return v % prime != 0
    else:
        def is_unit(v):
            return v == 1 or v == -1
    pivots = []
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda k: len(cols[k])):
            if c not in cols:
                continue
            best = None
            for r in cols[c]:
                if is_unit(rows[r][c]) and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            prow = rows.pop(best)
            uinv = pow(prow[c], -1, modulus) if modulus else prow[c]
            for cc in prow:
                cols[cc].discard(best)
            for r in list(cols[c]):
                row = rows[r]
                f = row[c] * uinv
                for cc, v in prow.items():
                    val = row.get(cc, 0) - f * v
                    if modulus:
                        val %= modulus
                    if val:
                        if cc not in row:
                            cols[cc].add(r)
                        row[cc] = val
                    elif cc in row:
                        del row[cc]
                        cols[cc].discard(r)
                if not row:
                    del rows[r]
            for cc in prow:
                if cc in cols and not cols[cc]:
                    del cols[cc]
            cols.pop(c, None)
            pivots.append((best, c))
            progress = True
    return pivots


def smith_normal_form(M: SparseMatrix, transforms: bool = False) -> SmithDecomposition:
    """Nonzero invariant factors of an integer matrix, d1 | d2 | ...

    With ``transforms=True`` the dense algorithm runs on the whole matrix and
    returns unimodular ``left``, ``right`` with ``left @ M @ right`` diagonal.
    """
    if transforms:
        diag, U, V = _dense_snf(M.to_dense(), True)
        return SmithDecomposition(diag, U, V)
    rows, cols = _row_dicts(M)
    ones = len(_unit_pivot_eliminate(rows, cols))
    if not rows:
        return SmithDecomposition([1] * ones)
    rlist = sorted(rows)
    clist = sorted(cols)
    cindex = {c: k for k, c in enumerate(clist)}
    dense = [[0] * len(clist) for _ in rlist]
    for i, r in enumerate(rlist):
        for c, v in rows[r].items():
            dense[i][cindex[c]] = v
    diag, _, _ = _dense_snf(dense, False)
    return SmithDecomposition([1] * ones + diag)


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def prime_power_split(n: int) -> list[int]:
    """Split an invariant factor into its prime-power parts: 12 -> [3, 4]."""
    out = []
    while n > 1:
        p = _smallest_prime_factor(n)
        q = 1
        while n % p == 0:
            n //= p
            q *= p
        out.append(q)
    return sorted(out)


# --------------------------------------------------------------------------
# local rings Z/p^r


def _valuations(block: np.ndarray, p: int, r: int) -> np.ndarray:
    val = np.zeros(block.shape, dtype=np.int64)
    q = p
    for _ in range(1, r):
        val += (block % q == 0)
        q *= p
    val[block == 0] = r
    return val


def local_diagonalize(A: np.ndarray, p: int, r: int, companion: np.ndarray | None = None) -> list[int]:
    """Diagonalize ``A`` over Z/p^r in place; return pivot valuations.

    Any column operation ``A -> A Q`` is mirrored on ``companion`` as
    ``companion -> Q^-1 companion``, which keeps ``companion`` expressed in
    the coordinates of the new column basis.
    """
    m = p ** r
    A %= m
    k, n = A.shape
    vals: list[int] = []
    t = 0
    while t < min(k, n):
        sub = A[t:, t:]
        if not sub.any():
            break
        val = _valuations(sub, p, r)
        rr, cc = np.unravel_index(np.argmin(val), val.shape)
        v = int(val[rr, cc])
        rr += t
        cc += t
        if rr != t:
            A[[t, rr]] = A[[rr, t]]
        if cc != t:
            A[:, [t, cc]] = A[:, [cc, t]]
            if companion is not None:
                companion[[t, cc]] = companion[[cc, t]]
        pv = p ** v
        uinv = pow(int(A[t, t]) // pv, -1, m)
        col = A[t + 1:, t]
        nz = np.nonzero(col)[0]
        if nz.size:
            f = (col[nz] // pv) * uinv % m
            A[t + 1 + nz] = (A[t + 1 + nz] - np.outer(f, A[t])) % m
        row = A[t, t + 1:]
        nzc = np.nonzero(row)[0]
        if nzc.size:
            f = (row[nzc] // pv) * uinv % m
            if companion is not None:
                companion[t] = (companion[t] + f @ companion[t + 1 + nzc]) % m
            A[t, t + 1:] = 0
        vals.append(v)
        t += 1
    return vals


def homology_prime_power(d_in: SparseMatrix, d_out: SparseMatrix, p: int, r: int) -> list[int]:
    """Exponents e of the cyclic summands Z/p^e of ker(d_out) / im(d_in) over Z/p^r.

    The kernel of ``d_out`` is read off from its diagonal form: a pivot of
    valuation v forces the matching coordinate into p^(r-v) Z/p^r, which is
    isomorphic to Z/p^v.  The image of ``d_in``, rewritten in those
    coordinates, is then diagonalized against that product of cyclic groups.
    """
    m = p ** r
    n = d_out.ncols
    if d_in.nrows != n:
        raise ValueError("d_in and d_out do not compose")
    A = d_out.to_numpy(m)
    W = d_in.to_numpy(m)
    vals = local_diagonalize(A, p, r, companion=W)
    v = np.full(n, r, dtype=np.int64)
    v[: len(vals)] = vals
    t = p ** (r - v)
    if W.size and np.any(W % t[:, None]):
        raise ValueError("d_out * d_in is not zero modulo %d" % m)
    keep = v > 0
    Wk = (W // t[:, None])[keep]
    mods = p ** v[keep]
    nk = int(keep.sum())
    if nk == 0:
        return []
    M = np.concatenate([Wk % m, np.diag(mods % m)], axis=1)
    vals2 = local_diagonalize(M, p, r)
    exps = list(vals2) + [r] * (nk - len(vals2))
    return sorted(e for e in exps if e > 0)


def reduce_complex_local(mats: Sequence[SparseMatrix], p: int, r: int) -> list[SparseMatrix]:
    """Cancel every unit entry of a cochain complex over Z/p^r.

    ``mats[t]`` maps degree t to degree t + 1.  Cancelling a unit entry
    between x (degree t) and y (degree t + 1) removes both generators: the
    block of ``mats[t]`` is eliminated as in Gaussian elimination, while x
    simply disappears as a row of ``mats[t - 1]`` and y as a column of
    ``mats[t + 1]``.  The result is chain homotopy equivalent and all of its
    entries are divisible by p.
    """
    m = p ** r
    n = len(mats)
    dead_rows: list[set[int]] = [set() for _ in range(n + 1)]  # per degree
    reduced: list[tuple[dict[int, dict[int, int]], dict[int, set[int]]]] = []
    for t, M in enumerate(mats):
        rows, cols = _row_dicts(M.reduce(m))
        for c in dead_rows[t]:
            for rr in cols.pop(c, ()):
                rows[rr].pop(c)
                if not rows[rr]:
                    del rows[rr]
        pivots = _unit_pivot_eliminate(rows, cols, m, p)
        for y, x in pivots:
            dead_rows[t + 1].add(y)
            dead_rows[t].add(x)
        reduced.append((rows, cols))
    out = []
    for t, M in enumerate(mats):
        rows, _ = reduced[t]
        keep_c = [c for c in range(M.ncols) if c not in dead_rows[t]]
        keep_r = [x for x in range(M.nrows) if x not in dead_rows[t + 1]]
        cidx = {c: k for k, c in enumerate(keep_c)}
        ridx = {x: k for k, x in enumerate(keep_r)}
        trip = [(ridx[x], cidx[c], v) for x, row in rows.items() if x in ridx for c, v in row.items()]
        out.append(SparseMatrix.from_triplets(len(keep_r), len(keep_c), trip))
    return out


# --------------------------------------------------------------------------
# homology of one position


@dataclass(frozen=True)
class GroupDescription:
    """Z^free + sum of Z/q for q in torsion (prime powers, sorted).

    Over Z/p^r, ``free_rank`` counts summands Z/p^r and ``torsion`` lists the
    smaller cyclic orders.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(q <= 1 for q in self.torsion):
            raise ValueError("torsion orders must exceed 1")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def render(self) -> str:
        """Entry in the ``a, b₂, c₄`` notation: Z^a + Z2^b + Z4^c."""
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        parts = [str(self.free_rank)] if self.free_rank else []
        for q, k in sorted(Counter(self.torsion).items()):
            parts.append(f"{k}{str(q).translate(sub)}")
        return ",".join(parts) if parts else "0"


def _check_composition(d_in: SparseMatrix, d_out: SparseMatrix, modulus: int) -> None:
    prod = d_out @ d_in
    if modulus:
        prod = prod.reduce(modulus)
    if not prod.is_zero():
        raise ValueError("contract violation: d_out * d_in != 0")


def homology_group(d_in: SparseMatrix, d_out: SparseMatrix, ring: Ring) -> GroupDescription:
    """Homology ker(d_out) / im(d_in) at one position."""
    n = d_out.ncols
    if d_in.nrows != n:
        raise ValueError("d_in and d_out do not compose")
    _check_composition(d_in, d_out, ring.modulus)
    if ring.name == "Z":
        snf_in = smith_normal_form(d_in)
        rank_out = smith_normal_form(d_out).rank
        torsion = [q for d in snf_in.diagonal if d > 1 for q in prime_power_split(d)]
        return GroupDescription(n - rank_out - snf_in.rank, tuple(torsion))
    if ring.name == "Q":
        return GroupDescription(n - rank_over_field(d_out, 0) - rank_over_field(d_in, 0))
    if ring.modulus == 2:
        return GroupDescription(n - rank_mod2(d_out) - rank_mod2(d_in))
    p, r = ring.prime_power
    exps = homology_prime_power(d_in, d_out, p, r)
    return GroupDescription(sum(1 for e in exps if e == r), tuple(p ** e for e in exps if e < r))
