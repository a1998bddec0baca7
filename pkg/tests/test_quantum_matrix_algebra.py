from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalpha.errors import BoundError, DomainError
from qalpha.quantum_matrix_algebra import (
    REWRITE_RULES,
    NCPolynomial,
    SpecializedDomain,
    general_alpha_det_terms,
    generator,
    quantum_alpha_det,
    quantum_det,
    quantum_per,
    reduce_alpha_det_terms,
    reduce_word,
    render,
    verify_stepping_relations,
    word_normal_form,
    x2z_product,
    z1,
    z2,
)
from qalpha.scalar_field import AlphaPolynomial, Q

q = Q.q
x11, x12, x21, x22 = (generator(g) for g in ("x11", "x12", "x21", "x22"))
ALPHA = AlphaPolynomial([0, 1])

words = st.lists(st.integers(0, 3), max_size=7)


def test_already_ordered_product():
    assert x11 * x12 == NCPolynomial.monomial((1, 1, 0, 0))


def test_x22_x11():
    assert x22 * x11 == x11 * x22 - x12 * x21 * (q - q**-1)
    assert render(x22 * x11) == "x11 x22 - (q - q^-1) x12 x21"


def test_six_relations_hold():
    assert x11 * x12 == x12 * x11 * q
    assert x21 * x22 == x22 * x21 * q
    assert x11 * x21 == x21 * x11 * q
    assert x12 * x22 == x22 * x12 * q
    assert x12 * x21 == x21 * x12
    assert x11 * x22 - x22 * x11 == x12 * x21 * (q - q**-1)
    assert len(REWRITE_RULES) == 6


def test_non_commutation_witness():
    assert x11 * x12 != x12 * x11


def test_z1_z2_commute():
    assert z1() * z2() - z2() * z1() == NCPolynomial()


def test_alpha_det_specializations():
    d = quantum_alpha_det()
    assert d.substitute_alpha(-1) == quantum_det()
    assert d.substitute_alpha(q**-2) == quantum_per()
    assert render(quantum_det()) == "x11 x22 - q x12 x21"
    assert render(quantum_per()) == "x11 x22 + q^-1 x12 x21"
    assert d.coefficient((0, 1, 1, 0)) == ALPHA * q


def test_alpha_det_powers():
    d = quantum_alpha_det()
    assert d**0 == NCPolynomial.scalar(1)
    expected = z1() ** 2 + z1() * z2() * (ALPHA * q * 2) + z2() ** 2 * (ALPHA**2 * q**2)
    assert d**2 == expected
    cube = d**3
    assert cube == z1() ** 3 + z1() ** 2 * z2() * (ALPHA * q * 3) + z1() * z2() ** 2 * (ALPHA**2 * q**2 * 3) + z2() ** 3 * (ALPHA * q) ** 3


def test_general_alpha_det_terms():
    t1 = general_alpha_det_terms(1)
    assert len(t1) == 1 and t1[0].coefficient == AlphaPolynomial([1])
    t2 = general_alpha_det_terms(2)
    assert len(t2) == 2
    assert [t.word_str() for t in t2] == ["x11 x22", "x21 x12"]
    assert t2[1].coefficient == ALPHA * q
    assert reduce_alpha_det_terms(t2) == quantum_alpha_det()
    t3 = general_alpha_det_terms(3)
    assert len(t3) == 6
    (swap,) = [t for t in t3 if t.stats.permutation == (2, 1, 3)]
    assert swap.coefficient == ALPHA * q
    with pytest.raises(BoundError):
        general_alpha_det_terms(7)


def test_x2z_product():
    for l in range(7):
        lhs, rhs = x2z_product(l)
        assert lhs == rhs
    lhs, rhs = x2z_product(1)
    assert lhs == z1()
    assert x2z_product(2)[1] == z1() * (z1() + z2() * (q**3 - q))
    assert verify_stepping_relations()


@given(words)
@settings(max_examples=200)
def test_rewriting_is_confluent(w):
    left = reduce_word(w, "leftmost")
    assert left == reduce_word(w, "rightmost")
    assert left == word_normal_form(w)


@given(words, words, words)
@settings(max_examples=60)
def test_associativity(a, b, c):
    def elt(w):
        return NCPolynomial.from_scalars(word_normal_form(w))

    pa, pb, pc = elt(a), elt(b), elt(c)
    assert (pa * pb) * pc == pa * (pb * pc)
    assert elt(a + b) == pa * pb


def test_homogeneity_and_degree():
    p = quantum_alpha_det() ** 3
    assert p.is_homogeneous()
    assert p.degree() == 6
    assert p.alpha_degree() == 3
    assert NCPolynomial().degree() == -1


def test_specialize():
    d = quantum_alpha_det().specialize(2, q**-2)
    dom = SpecializedDomain(Fraction(2), Fraction(1, 4))
    assert d.domain == dom
    assert d.coefficient((0, 1, 1, 0)) == Fraction(1, 2)
    with pytest.raises(DomainError):
        d + quantum_alpha_det()


def test_bad_inputs():
    with pytest.raises(DomainError):
        generator("x13")
    with pytest.raises(DomainError):
        NCPolynomial.monomial((1, 2, 3))
    with pytest.raises(DomainError):
        x11 ** -1
    with pytest.raises(DomainError):
        reduce_word([0, 1], "middle")
