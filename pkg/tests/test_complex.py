import json

import pytest
from hypothesis import given, strategies as st

from khtorsion.catalog import lookup, select
from khtorsion.complex import (
    MERGE,
    SPLIT,
    PairType,
    build_complex,
    classify_local,
    classify_pair,
    complex_from_json,
    delta_map,
    nu_map,
    turner_map,
)
from khtorsion.linalg import QQ, Z2, ZZ

from shared import complex_of

SMALL = [r.name for r in select(max_crossings=6)]


def test_frobenius_rules_preserve_degree():
    deg = lambda bits: sum(-1 if b else 1 for b in bits)
    for rule, shift in ((MERGE, -1), (SPLIT, -1)):
        for x, outs in rule.items():
            for y, _ in outs:
                assert deg(y) == deg(x) + shift


def test_trefoil_dimensions():
    C = complex_of("3_1")
    assert sum(C.dims.values()) == 4 + 3 * 2 + 3 * 4 + 8
    for key, gens in C.cells.items():
        assert all(g.qdeg == key[1] for g in gens)


@given(st.sampled_from(SMALL))
def test_d_squares_to_zero_and_has_bidegree_one_zero(name):
    C = complex_of(name)
    assert C.d.then(C.d).is_zero()
    for key in C.d.keys():
        assert C.d.target(key) == (key[0] + 1, key[1])


@given(st.sampled_from(SMALL))
def test_nu_and_turner_relations(name):
    C2 = complex_of(name).over(Z2)
    nu = nu_map(C2).reduce(2)
    dT = turner_map(C2)
    assert nu.then(nu).is_zero(2)
    assert (C2.d.then(nu) + nu.then(C2.d)).is_zero(2)
    assert dT.then(dT).is_zero(2)
    assert (C2.d.then(dT) + dT.then(C2.d)).is_zero(2)
    assert dT.bidegree == (1, 2) and nu.bidegree == (0, 2)


@given(st.sampled_from(SMALL))
def test_delta_is_even(name):
    delta = delta_map(complex_of(name))
    assert all(v % 2 == 0 for *_, v in delta.nonzero_entries())


def test_nu_squared_is_not_zero_over_z():
    nu = nu_map(complex_of("3_1"))
    assert not nu.then(nu).is_zero()
    assert nu.then(nu).is_zero(2)


def test_ring_guards():
    with pytest.raises(ValueError):
        turner_map(complex_of("3_1"))
    with pytest.raises(ValueError):
        delta_map(complex_of("3_1").over(Z2))
    with pytest.raises(ValueError):
        complex_of("3_1").over(Z2).over(ZZ)


def test_change_of_rings_keeps_generators():
    C = complex_of("4_1")
    assert C.over(QQ).dims == C.over(Z2).dims == C.dims


def test_json_round_trip():
    C = build_complex(lookup("3_1").pd)
    obj = json.loads(C.dumps())
    assert complex_from_json(obj).dumps() == C.dumps()
    obj["d"][0]["triplets"][0][2] += 2
    with pytest.raises(ValueError):
        complex_from_json(obj)


@pytest.mark.parametrize(
    "kind, x, z, tag",
    [
        ("merge", (0, 1), (0,), PairType.B),
        ("merge", (1, 1), (1,), PairType.C_M),
        ("split", (0,), (0, 0), PairType.C_DELTA),
        ("split", (1,), (0, 1), PairType.B),
        ("merge", (0, 0), (0,), PairType.A),
    ],
)
def test_local_pair_types(kind, x, z, tag):
    assert classify_local(kind, x, z).tag == tag


def test_pair_type_path_counts():
    c = classify_local("merge", (1, 1), (1,))
    assert len(c.lower) == 0 and len(c.upper) == 2
    assert c.render_path(c.upper[0]) == "X⊗X→1⊗X→X"


def test_classify_pair_on_the_trefoil():
    C = complex_of("3_1")
    edge = C.geometry[0].edge
    src = C.resolved[edge.source]
    tgt = C.resolved[edge.target]
    x = C.generator(edge.source, (1 << src.circle_count) - 1)
    z = C.generator(edge.target, (1 << tgt.circle_count) - 2)
    result = classify_pair(C, x, z, edge)
    assert result.tag in set(PairType)
    with pytest.raises(ValueError):
        classify_pair(C, z, x, edge)


def test_frobenius_examples():
    from khtorsion.complex import MERGE_T, SPLIT_T

    assert MERGE[(1, 1)] == []
    assert sorted(y for y, _ in SPLIT[(0,)]) == [(0, 1), (1, 0)]
    assert MERGE_T[(1, 1)] == [((1,), 1)]
    assert MERGE_T[(0, 1)] == MERGE_T[(1, 0)] == []
    assert SPLIT_T[(1,)] == []


def test_unknot_complex():
    C = complex_of("0_1")
    assert C.dims == {(0, -1): 1, (0, 1): 1}
    assert C.d.is_zero() and delta_map(C).is_zero()


def test_pair_witnesses():
    b = classify_local("merge", (0, 1), (0,))
    assert b.lower == (((0, 1), (1,), (0,)),) and b.upper == (((0, 1), (0, 0), (0,)),)
    cd = classify_local("split", (0,), (0, 0))
    assert len(cd.lower) == 2 and cd.upper == ()
