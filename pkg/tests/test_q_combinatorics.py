from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qalpha.errors import DomainError
from qalpha.q_combinatorics import (
    elementary_symmetric_q_identity,
    inversion_statistics,
    q_binomial,
    q_binomial_theorem_rhs_exponent,
    q_factorial,
    q_int,
    q_rising_factorial,
    rising_factorial,
    verify_q_binomial_theorem,
    verify_q_chu_vandermonde,
)
from qalpha.scalar_field import LaurentPoly, Q, QRational

q = Q.q


def laurent(d):
    return QRational(LaurentPoly(d))


def test_q_int_values():
    assert q_int(0) == Q.zero
    assert q_int(2) == q + q**-1
    assert q_int(-1) == -Q.one
    assert q_int(3) == (q**3 - q**-3) / (q - q**-1)


def test_q_factorial_values():
    assert q_factorial(0) == Q.one
    assert q_factorial(2) == q + q**-1
    assert q_factorial(3) == (q + q**-1) * (q**2 + 1 + q**-2)
    with pytest.raises(DomainError):
        q_factorial(-1)


def test_q_binomial_values():
    assert q_binomial(7, 0) == Q.one
    assert q_binomial(4, 2) == laurent({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert q_binomial(-1, 1) == -Q.one
    assert q_binomial(2, 3) == Q.zero
    with pytest.raises(DomainError):
        q_binomial(3, -1)


def test_rising_factorials():
    assert rising_factorial(-1, 1) == -1
    assert rising_factorial(0, 3) == 0
    assert rising_factorial(3, 0) == 1
    assert rising_factorial(2, 3) == 24
    assert q_rising_factorial(2, 1) == q + q**-1
    assert q_rising_factorial(1, 4) == q_factorial(4)


@given(st.integers(0, 12))
def test_q_int_symmetric_and_limit(n):
    assert q_int(n).bar() == q_int(n)
    assert q_int(n).at_one() == n


@given(st.integers(-6, 10), st.integers(0, 6))
def test_q_binomial_limit_and_symmetry(x, k):
    b = q_binomial(x, k)
    assert b.bar() == b
    expected = 1
    for i in range(k):
        expected *= x - i
    assert b.at_one() * factorial(k) == expected


@given(st.integers(0, 10), st.integers(0, 10))
def test_q_binomial_pascal(n, k):
    if k > n:
        return
    assert q_binomial(n, k) == q_binomial(n, n - k)
    if k >= 1:
        lhs = q_binomial(n + 1, k)
        assert lhs == q**k * q_binomial(n, k) + q ** (k - n - 1) * q_binomial(n, k - 1)


def test_q_binomial_theorem():
    for n in range(11):
        assert verify_q_binomial_theorem(n)
    assert q_binomial_theorem_rhs_exponent(1, 0) == 2


def test_misprinted_exponent_fails_from_n_one():
    assert verify_q_binomial_theorem(0, printed=True)
    assert not any(verify_q_binomial_theorem(n, printed=True) for n in range(1, 6))


def test_q_chu_vandermonde_examples():
    assert verify_q_chu_vandermonde(1, 0, 1)
    assert verify_q_chu_vandermonde(3, 2, 2)
    assert verify_q_chu_vandermonde(5, 5, 4)


@given(st.integers(0, 7), st.integers(0, 7), st.data())
def test_q_chu_vandermonde_property(x, y, data):
    n = data.draw(st.integers(0, x + y))
    assert verify_q_chu_vandermonde(x, y, n)


def test_elementary_symmetric():
    assert elementary_symmetric_q_identity(4, 0)
    assert elementary_symmetric_q_identity(2, 1)
    assert elementary_symmetric_q_identity(5, 3)
    assert all(elementary_symmetric_q_identity(j, r) for j in range(1, 9) for r in range(j + 1))
    with pytest.raises(DomainError):
        elementary_symmetric_q_identity(2, 3)


def test_inversion_statistics_examples():
    s = inversion_statistics([1, 2, 3, 4])
    assert (s.inv, s.nu, s.n) == (0, 0, 4)
    s = inversion_statistics([2, 1])
    assert (s.inv, s.nu) == (1, 1)
    s = inversion_statistics([2, 3, 1])
    assert (s.inv, s.nu) == (2, 2)
    with pytest.raises(DomainError):
        inversion_statistics([1, 1, 2])


def _conjugate(tau, sigma):
    # tau sigma tau^-1 in one-line notation
    inv = {t: i + 1 for i, t in enumerate(tau)}
    return [tau[sigma[inv[i] - 1] - 1] for i in range(1, len(tau) + 1)]


@pytest.mark.parametrize("n", [3, 4])
def test_nu_is_class_function(n):
    perms = list(permutations(range(1, n + 1)))
    for sigma in perms:
        nu = inversion_statistics(sigma).nu
        for tau in perms:
            assert inversion_statistics(_conjugate(tau, sigma)).nu == nu


def test_inv_is_not_class_function():
    # [1,3,2] and [3,2,1] are conjugate transpositions with different inversion counts
    assert inversion_statistics([1, 3, 2]).nu == inversion_statistics([3, 2, 1]).nu == 1
    assert inversion_statistics([1, 3, 2]).inv == 1
    assert inversion_statistics([3, 2, 1]).inv == 3


def test_sum_over_s3_counts():
    stats = [inversion_statistics(p) for p in permutations(range(1, 4))]
    assert sum(s.inv for s in stats) == comb(3, 2) * factorial(3) // 2
