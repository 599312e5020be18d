import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from khtorsion.catalog import lookup, select
from khtorsion.diagram import mirror
from khtorsion.homology import (
    HomologyTable,
    classify_thinness,
    is_thin,
    khovanov_homology,
    torsion_counts,
    torsion_summary,
    upper_diagonal,
)
from khtorsion.linalg import GroupDescription, QQ, ZZ, z_mod

import oracles
from shared import complex_of, table_of, tables_of

FROZEN = json.loads((Path(__file__).parent / "data" / "oracle_tables.json").read_text())


def _as_dict(table):
    return {k: (g.free_rank, list(g.torsion)) for k, g in table.entries.items()}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_oracle_tables(name):
    expected = {(i, j): (f, t) for i, j, f, t in FROZEN[name]}
    assert _as_dict(table_of(name, "Z")) == expected


@pytest.mark.parametrize("name", sorted(oracles.ORACLE_PDS))
def test_oracle_is_reproducible(name):
    live = oracles.khovanov_oracle(oracles.ORACLE_PDS[name])
    assert live == {(i, j): (f, t) for i, j, f, t in FROZEN[name]}
    assert lookup(name).pd.render() == oracles.ORACLE_PDS[name]


def test_oracle_on_a_five_crossing_knot():
    rec = lookup("5_2")
    assert oracles.khovanov_oracle(rec.pd.render()) == _as_dict(table_of("5_2", "Z"))


def _uct(ztable, p, r):
    """Expected H(C; Z/p^r) from the integral table."""
    out = {}
    keys = set(ztable.entries) | {(i - 1, j) for i, j in ztable.entries}
    for i, j in keys:
        exps = [r] * ztable[(i, j)].free_rank
        for q in ztable[(i, j)].torsion + ztable[(i + 1, j)].torsion:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if e:
                exps.append(min(e, r))
        if exps:
            out[(i, j)] = (exps.count(r), sorted(p ** e for e in exps if e < r))
    return out


@settings(max_examples=15)
@given(st.sampled_from([r.name for r in select(max_crossings=7)]), st.sampled_from([2, 3]))
def test_prime_power_coefficients_follow_universal_coefficients(name, r):
    C = complex_of(name)
    got = khovanov_homology(C.diagram, z_mod(2 ** r), C)
    assert _as_dict(got) == {k: (f, list(t)) for k, (f, t) in _uct(table_of(name, "Z"), 2, r).items()}


def test_z2_from_integral_table():
    for name in ("3_1", "4_1", "8_19", "L2a1{0}"):
        expected = {k: f for k, (f, _) in _uct(table_of(name, "Z"), 2, 1).items()}
        got = {k: g.free_rank for k, g in table_of(name, "Z2").entries.items()}
        assert got == expected


def test_parallel_blocks_give_the_same_table():
    C = complex_of("6_2")
    assert khovanov_homology(C.diagram, ZZ, C, jobs=2).entries == table_of("6_2", "Z").entries


def test_mirror_swaps_gradings_for_rational_ranks():
    C = complex_of("5_2")
    M = mirror(C.diagram)
    q = table_of("5_2", "Q")
    qm = khovanov_homology(M, QQ)
    assert {(-i, -j): g for (i, j), g in q.entries.items()} == qm.entries


@pytest.mark.parametrize(
    "name, labels",
    [
        ("3_1", ["QH-thin", "ZH-thin", "Z2H-thin", "H-slim"]),
        ("4_1", ["QH-thin", "ZH-thin", "Z2H-thin", "H-slim"]),
        ("8_19", ["QH-thick", "ZH-thick", "Z2H-thick"]),
        ("0_1", ["QH-thin", "ZH-thin", "Z2H-thin", "H-slim"]),
        ("unlink2", ["QH-thick", "ZH-thick", "Z2H-thick"]),
    ],
)
def test_thinness_labels(name, labels):
    assert classify_thinness(tables_of(name)).labels() == labels


def test_thinness_needs_three_tables():
    with pytest.raises(ValueError):
        classify_thinness({"Z": table_of("3_1", "Z")})


def test_diagonal_helpers():
    assert is_thin({-3, -1}) and is_thin(set()) and not is_thin({-3, 1})
    assert upper_diagonal({-3, -1}) == -3
    assert upper_diagonal({1}) is None


def test_table_json_and_render():
    t = table_of("4_1", "Z")
    back = HomologyTable.from_json(json.loads(t.dumps()))
    assert back.entries == t.entries and back.ring == t.ring
    text = t.render()
    assert "1₂" in text and text.splitlines()[0] == "H over Z"
    assert torsion_counts(t) == {2: 2}
    assert t.total_dimension() == 8 and t.total_rank() == 6


def test_trivial_entries_are_dropped():
    t = HomologyTable(ZZ, {(0, 0): GroupDescription(0), (0, 2): GroupDescription(1)})
    assert list(t.entries) == [(0, 2)]


def test_unknot_and_trefoil_basics():
    assert _as_dict(table_of("0_1", "Z")) == {(0, -1): (1, []), (0, 1): (1, [])}
    assert table_of("3_1", "Z2").total_rank() == 6
    assert torsion_summary(table_of("3_1", "Z")) == [2]
    assert torsion_summary(table_of("0_1", "Z")) == []
    rep = classify_thinness(tables_of("3_1"))
    assert rep.support_diagonals["Z"] == (-3, -1)

