import json

import pytest

from qalpha.decomposition import (
    FTable,
    Q_from_key_relation,
    decomposition_report,
    derivative_relation_check,
    f_action_by_operator,
    f_action_closed_form,
    g_poly,
    highest_weight_ladder,
    inverse_matrix_lemma_check,
    lemma_matrices,
    module_identity_check,
    reconstruct_z,
    reduced_sum_identity,
    solve_F_linear_oracle,
    solve_F_triangular,
    v_mj,
    v_poly,
    v_shifted_coeff,
)
from qalpha.errors import DomainError
from qalpha.hypergeometric import ONE_PLUS_ALPHA, closed_form_F
from qalpha.q_combinatorics import q_factorial, q_int
from qalpha.quantum_matrix_algebra import NCPolynomial, generator, z1, z2
from qalpha.scalar_field import AlphaPolynomial, Q
from qalpha.uq_module_action import act_f

q = Q.q
ONE = AlphaPolynomial([1])


def test_f_action_small():
    assert f_action_closed_form(0) == NCPolynomial.scalar(1)
    assert f_action_closed_form(1) == z1() + z2() * q**-1
    assert f_action_closed_form(1) == act_f(generator("x11") * generator("x21"))
    for j in range(7):
        assert f_action_closed_form(j) == f_action_by_operator(j)


def test_v_mj_bounds():
    assert v_mj(2, 0) == v_mj(2, 0, use_operator=True)
    with pytest.raises(DomainError):
        v_mj(2, 3)


def test_g_and_v_polys():
    assert g_poly(0).degree() == 0
    assert g_poly(1)(q) == AlphaPolynomial([q])
    assert g_poly(2)(q) == AlphaPolynomial([q**4])
    for j in range(7):
        v = v_poly(j)
        assert v.degree() == j
        # the (z - q)-constant term is the triangular pivot
        assert v(q) == AlphaPolynomial([v_shifted_coeff(j, 0)])
        assert v_shifted_coeff(j, 0) == q ** -(j * (j - 1) // 2) * q_factorial(2 * j) / q_factorial(j)


def test_triangular_small_cases():
    assert solve_F_triangular(0).F == (ONE,)
    t1 = solve_F_triangular(1)
    assert t1.F[0] == AlphaPolynomial([q**-1, -q]) * q_int(2).inverse()
    assert t1.F[1] == ONE_PLUS_ALPHA * (q / q_int(2))
    assert solve_F_triangular(2).F[2] == ONE_PLUS_ALPHA**2 * (q**3 / (q_int(4) * q_int(3)))


@pytest.mark.parametrize("m", range(7))
def test_routes_agree(m):
    tri = solve_F_triangular(m)
    assert solve_F_linear_oracle(m) == tri
    assert Q_from_key_relation(m) == tri
    assert Q_from_key_relation(m, method="formula") == tri
    assert tri.F == tuple(closed_form_F(m, s) for s in range(m + 1))


def test_key_relation_small():
    assert Q_from_key_relation(1).Q[0] == ONE - ONE_PLUS_ALPHA * (q / q_int(2))
    with pytest.raises(DomainError):
        Q_from_key_relation(1, method="guess")


def test_lemma_matrices():
    A, B = lemma_matrices(0)
    assert A == [[Q.one]] and B == [[Q.one]]
    A, B = lemma_matrices(1)
    assert A == [[Q.one, Q.zero], [-Q.one, Q.one]]
    assert B == [[Q.one, Q.zero], [Q.one, Q.one]]
    for m in range(7):
        assert inverse_matrix_lemma_check(m)
    assert reduced_sum_identity(3, 5)
    with pytest.raises(DomainError):
        reduced_sum_identity(0, 2)


def test_ftable_json_roundtrip():
    for m in range(4):
        t = solve_F_triangular(m)
        data = json.loads(json.dumps(t.to_json()))
        assert data["m"] == m and [e["j"] for e in data["entries"]] == list(range(m + 1))
        assert FTable.from_json(data) == t
    bad = solve_F_triangular(1).to_json()
    bad["entries"].pop()
    with pytest.raises(DomainError):
        FTable.from_json(bad)


def test_reports():
    r = decomposition_report(1, -1)
    assert r.summands == [1] and r.total_dimension == 1
    r = decomposition_report(1, q**-2)
    assert r.summands == [3] and r.total_dimension == 3
    r = decomposition_report(1, 0)
    assert r.summands == [1, 3] and r.total_dimension == 4
    assert [decomposition_report(m, q**-2).summands for m in range(4)] == [[1], [3], [1, 3, 5], [1, 3, 5, 7]]
    symbolic = decomposition_report(2)
    assert [row.value for row in symbolic] == list(solve_F_triangular(2).F)


def test_end_to_end_identities():
    for m in range(6):
        assert reconstruct_z(solve_F_triangular(m))
        assert derivative_relation_check(m)
        assert module_identity_check(m)
    broken = FTable.from_Q(1, [ONE, ONE])
    assert not reconstruct_z(broken)
    assert not module_identity_check(1, broken)


def test_highest_weight_ladder():
    for m in range(5):
        for j in range(m + 1):
            assert highest_weight_ladder(m, j) == (True, True)
