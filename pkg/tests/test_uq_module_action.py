import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalpha.errors import BadSpecializationError, DomainError
from qalpha.quantum_matrix_algebra import NCPolynomial, generator, quantum_alpha_det, quantum_det, z1, z2
from qalpha.scalar_field import Q
from qalpha.uq_module_action import (
    FUNDAMENTAL_RELATIONS,
    act,
    act_e,
    act_f,
    act_k,
    act_k_inv,
    act_on_word,
    action_compatibility_table,
    apply_word,
    cyclic_span_dimension,
    highest_weight_test,
    monomial_weight,
    verify_action_well_defined,
)
from qalpha.verify import random_nc_polynomial

q = Q.q
x11, x12, x21, x22 = (generator(g) for g in ("x11", "x12", "x21", "x22"))
ZERO = NCPolynomial()

seeds = st.integers(0, 10**6)


def test_k_action():
    assert act_k(x11 * x21) == x11 * x21 * q**2
    assert act_k(quantum_det()) == quantum_det()
    assert act_k_inv(x12) == x12 * q


def test_generator_rules():
    assert act_f(x11) == x12
    assert act_e(x12) == x11
    assert act_f(x12) == ZERO
    assert act_e(x11) == ZERO
    assert act_f(x21) == x22
    assert act_e(x22) == x21


def test_f_on_x11_x21():
    assert act_f(x11 * x21) == x11 * x22 + x12 * x21 * q**-1
    assert act_f(x11 * x21) == z1() + z2() * q**-1


def test_det_q_is_invariant():
    assert act_e(quantum_det()) == ZERO
    assert act_f(quantum_det()) == ZERO


def test_act_on_word_weights():
    (w,) = act_on_word("k", ["x11", "x12", "x21"])
    assert w.prefactor == q and w.weight == 1
    out = act_on_word("f", ["x11", "x21"])
    assert [ww.letters for ww in out] == [(1, 2), (0, 3)]
    assert [ww.prefactor for ww in out] == [q**-1, Q.one]


def test_compatibility_table():
    table = action_compatibility_table()
    assert len(table) == 24
    assert all(table.values())
    assert table[("k", "x12 x21 = x21 x12")]
    assert table[("f", "x11 x22 - x22 x11 = (q - q^-1) x12 x21")]
    assert verify_action_well_defined()
    assert len(FUNDAMENTAL_RELATIONS) == 6


def test_highest_weight():
    assert highest_weight_test((x11 * x21) ** 3) == (True, 6)
    assert highest_weight_test(quantum_det() ** 2) == (True, 0)
    assert highest_weight_test(z1() + z2() * q**-1) == (False, None)
    with pytest.raises(DomainError):
        highest_weight_test(ZERO)


def test_apply_word_order():
    p = x11 * x21
    assert apply_word(p, "ef") == act_e(act_f(p))
    assert apply_word(p, "") == p
    with pytest.raises(DomainError):
        act("h", p)


@given(seeds)
@settings(max_examples=40)
def test_operator_relations(seed):
    p = random_nc_polynomial(random.Random(seed))
    assert act_k(act_e(act_k_inv(p))) == act_e(p) * q**2
    assert act_k(act_f(act_k_inv(p))) == act_f(p) * q**-2
    assert act_e(act_f(p)) - act_f(act_e(p)) == (act_k(p) - act_k_inv(p)) * (q - q**-1).inverse()


@given(seeds)
@settings(max_examples=40)
def test_weight_shifts(seed):
    p = random_nc_polynomial(random.Random(seed))
    for m in act_e(p).terms:
        assert any(monomial_weight(m) == monomial_weight(n) + 2 for n in p.terms)
    for m in act_f(p).terms:
        assert any(monomial_weight(m) == monomial_weight(n) - 2 for n in p.terms)


@given(seeds)
@settings(max_examples=30)
def test_coproduct_leibniz(seed):
    rng = random.Random(seed)
    u = random_nc_polynomial(rng, max_degree=3)
    v = random_nc_polynomial(rng, max_degree=3)
    assert act_f(u * v) == act_f(u) * act_k_inv(v) + u * act_f(v)
    assert act_e(u * v) == act_e(u) * v + act_k(u) * act_e(v)
    assert act_k(u * v) == act_k(u) * act_k(v)


def test_span_dimensions():
    d = quantum_alpha_det()
    assert cyclic_span_dimension(quantum_det(), 2, 5) == 1
    assert cyclic_span_dimension(d, 2, 0) == 4
    assert cyclic_span_dimension(d, 2, -1) == 1
    assert cyclic_span_dimension(d, 2, q**-2) == 3
    for m in range(4):
        assert cyclic_span_dimension(d**m, 3, Fraction(1, 7)) == (m + 1) ** 2
    with pytest.raises(BadSpecializationError):
        cyclic_span_dimension(d, 1, 0)
