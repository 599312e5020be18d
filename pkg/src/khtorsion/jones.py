"""Jones polynomial from the state sum, and its evaluation at q = sqrt(-1).

Normalization: the unknot has J = q + q^-1, and the reduced polynomial
J / (q + q^-1) equals 1 on it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .diagram import PlanarDiagram
from .statecube import DEFAULT_MAX_CROSSINGS, resolve_all


@dataclass(frozen=True)
class LaurentPolynomial:
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {e: c for e, c in sorted(self.coeffs.items()) if c})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = Counter(self.coeffs)
        out.update(other.coeffs)
        return LaurentPolynomial(dict(out))

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        out = LaurentPolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def min_degree(self) -> int:
        return min(self.coeffs)

    @property
    def max_degree(self) -> int:
        return max(self.coeffs)

    def invert_variable(self) -> "LaurentPolynomial":
        """q -> q^-1."""
        return LaurentPolynomial({-e: c for e, c in self.coeffs.items()})

    def divmod_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact quotient; raises ValueError when the division leaves a remainder."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.coeffs)
        top_d = divisor.max_degree
        lead = divisor.coeffs[top_d]
        low_d = divisor.min_degree
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - min(rem) < top_d - low_d:
                break
            c, r = divmod(rem[top], lead)
            if r:
                break
            shift = top - top_d
            quot[shift] = c
            for e, v in divisor.coeffs.items():
                val = rem.get(e + shift, 0) - c * v
                if val:
                    rem[e + shift] = val
                else:
                    rem.pop(e + shift, None)
        if rem:
            raise ValueError(f"{self} is not divisible by {divisor}")
        return LaurentPolynomial(quot)

    def eval_gaussian(self, re: int, im: int) -> tuple[int, int]:
        """Exact value at the Gaussian integer ``re + im*i`` (must be a unit for negative powers)."""
        units = {(1, 0), (-1, 0), (0, 1), (0, -1)}
        if self.coeffs and self.min_degree < 0 and (re, im) not in units:
            raise ValueError("negative powers need a unit argument")

        def mul(a, b):
            return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]

        inv = (re, -im)  # conjugate = inverse for units
        total = (0, 0)
        for e, c in self.coeffs.items():
            p = (1, 0)
            base = (re, im) if e >= 0 else inv
            for _ in range(abs(e)):
                p = mul(p, base)
            total = (total[0] + c * p[0], total[1] + c * p[1])
        return total

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs.items():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{' ' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.coeffs.items()]

    @classmethod
    def from_json(cls, pairs) -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in pairs})


Q_PLUS_QINV = LaurentPolynomial({-1: 1, 1: 1})


def state_sum_jones(D: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPolynomial:
    """Sum over states of (-1)^i q^j (q + q^-1)^|D_s|, straight from the resolutions."""
    counts = Counter((rs.i, rs.j, rs.circle_count) for rs in resolve_all(D, max_crossings))
    powers: dict[int, LaurentPolynomial] = {}
    total = LaurentPolynomial()
    for (i, j, k), mult in counts.items():
        if k not in powers:
            powers[k] = Q_PLUS_QINV ** k
        sign = -1 if i % 2 else 1
        total = total + LaurentPolynomial.monomial(j, sign * mult) * powers[k]
    return total


def graded_euler(table) -> LaurentPolynomial:
    """Sum of (-1)^i q^j rank over the entries of a homology table."""
    out: dict[int, int] = {}
    for (i, j), group in table.entries.items():
        sign = -1 if i % 2 else 1
        out[j] = out.get(j, 0) + sign * group.free_rank
    return LaurentPolynomial(out)


def reduced_jones(J: LaurentPolynomial) -> LaurentPolynomial:
    return J.divmod_exact(Q_PLUS_QINV)


def reduced_eval_at_i(J: LaurentPolynomial, components: int = 1) -> int:
    """|J~(sqrt(-1))| in exact arithmetic.

    The value lands on the line i^(c-1) * R; anything else means the input
    was not the Jones polynomial of a c-component link.
    """
    re, im = reduced_jones(J).eval_gaussian(0, 1)
    if (components - 1) % 2 == 0:
        if im:
            raise ValueError(f"J~(i) = {re}+{im}i is not real")
        return abs(re)
    if re:
        raise ValueError(f"J~(i) = {re}+{im}i is not imaginary")
    return abs(im)
