import pytest
from hypothesis import given, strategies as st

from khtorsion.catalog import lookup, select
from khtorsion.diagram import mirror
from khtorsion.jones import LaurentPolynomial as L, Q_PLUS_QINV, graded_euler, reduced_eval_at_i, reduced_jones, state_sum_jones

from shared import table_of

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(L)


def test_trefoil_polynomials():
    J = state_sum_jones(lookup("3_1").pd)
    assert J.render() == "q + q^3 + q^5 - q^9"
    assert reduced_jones(J).render() == "q^2 + q^6 - q^8"
    assert reduced_eval_at_i(J) == 3


def test_unknot_and_unlinks():
    assert state_sum_jones(lookup("0_1").pd) == Q_PLUS_QINV
    assert state_sum_jones(lookup("0_1_kink").pd) == Q_PLUS_QINV
    assert state_sum_jones(lookup("unlink2").pd) == Q_PLUS_QINV ** 2


def test_figure_eight_determinant():
    assert reduced_eval_at_i(state_sum_jones(lookup("4_1").pd)) == 5


def test_hopf_link_value():
    J = state_sum_jones(lookup("L2a1{0}").pd)
    assert reduced_eval_at_i(J, 2) == 2


@given(st.sampled_from(select(max_crossings=7)))
def test_mirror_inverts_the_variable(rec):
    assert state_sum_jones(mirror(rec.pd)) == state_sum_jones(rec.pd).invert_variable()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == L({})


@given(polys)
def test_exact_division(a):
    assert (a * Q_PLUS_QINV).divmod_exact(Q_PLUS_QINV) == a


def test_inexact_division_raises():
    with pytest.raises(ValueError):
        L({0: 1}).divmod_exact(Q_PLUS_QINV)


@given(polys)
def test_json_round_trip(a):
    assert L.from_json(a.to_json()) == a


def test_euler_characteristic_of_trefoil_table():
    assert graded_euler(table_of("3_1", "Q")) == state_sum_jones(lookup("3_1").pd)


def test_determinants_are_nonnegative_integers():
    for rec in select(knots_only=True):
        v = reduced_eval_at_i(state_sum_jones(rec.pd), 1)
        assert isinstance(v, int) and v > 0
