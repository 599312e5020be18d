"""Khovanov homology over Z, Q, Z/2 and Z/2^r, with the Turner and Bockstein
spectral sequences and the maps nu*, dT*, beta on mod 2 homology."""

__version__ = "0.1.0"

from .diagram import PlanarDiagram, KnotRecord, parse_pd, writhe, mirror  # noqa: E402
from .complex import BigradedComplex, build_complex, nu_map, turner_map, delta_map  # noqa: E402
from .homology import HomologyTable, khovanov_homology, classify_thinness, torsion_summary  # noqa: E402
from .jones import LaurentPolynomial, state_sum_jones, reduced_eval_at_i  # noqa: E402
from .linalg import Ring, ZZ, QQ, Z2  # noqa: E402

__all__ = [
    "PlanarDiagram",
    "KnotRecord",
    "parse_pd",
    "writhe",
    "mirror",
    "BigradedComplex",
    "build_complex",
    "nu_map",
    "turner_map",
    "delta_map",
    "HomologyTable",
    "khovanov_homology",
    "classify_thinness",
    "torsion_summary",
    "LaurentPolynomial",
    "state_sum_jones",
    "reduced_eval_at_i",
    "Ring",
    "ZZ",
    "QQ",
    "Z2",
]
