"""U_q(sl2) acting on A_q(Mat_2).

On generators: k x_i1 = q x_i1, k x_i2 = q^-1 x_i2, e x_i2 = x_i1, f x_i1 = x_i2
(all other generator actions vanish). Products are handled through the
coproduct

    Delta(k) = k (x) k,   Delta(e) = e (x) 1 + k (x) e,   Delta(f) = f (x) k^-1 + 1 (x) f,

with the left tensor factor acting on the left subword. On a word of length L
this means: f hits one column-1 letter and picks up q^-(weight of the suffix
after it); e hits one column-2 letter and picks up q^(weight of the prefix
before it). Letter weights are +1 for column 1 and -1 for column 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .errors import BadSpecializationError, DomainError
from .quantum_matrix_algebra import (
    GENERATORS,
    SYMBOLIC,
    Mono,
    NCPolynomial,
    _parse_letter,
    _word_of,
    word_normal_form,
)
from .scalar_field import Q, QRational

__all__ = [
    "WeightedWord",
    "letter_weight",
    "monomial_weight",
    "act_on_word",
    "act",
    "act_k",
    "act_k_inv",
    "act_e",
    "act_f",
    "apply_word",
    "FUNDAMENTAL_RELATIONS",
    "action_compatibility_table",
    "verify_action_well_defined",
    "highest_weight_test",
    "cyclic_span_dimension",
]

_ACTION_GENERATORS = ("e", "f", "k", "K")


def letter_weight(g: int) -> int:
    return 1 if g in (0, 2) else -1


def monomial_weight(m: Mono) -> int:
    a, b, c, d = m
    return a - b + c - d


@dataclass(frozen=True)
class WeightedWord:
    letters: tuple[int, ...]
    prefactor: QRational

    @property
    def weight(self) -> int:
        return sum(letter_weight(g) for g in self.letters)

    def __str__(self) -> str:
        return f"({self.prefactor}) " + " ".join(GENERATORS[g] for g in self.letters)


def act_on_word(gen: str, word: Sequence[int | str]) -> list[WeightedWord]:
    """Coproduct action of one U_q generator on a (not necessarily ordered) word."""
    letters = tuple(_parse_letter(g) for g in word)
    w = sum(letter_weight(g) for g in letters)
    if gen == "k":
        return [WeightedWord(letters, Q.q**w)]
    if gen == "K":
        return [WeightedWord(letters, Q.q**-w)]
    out = []
    if gen == "f":
        suffix = w
        for p, g in enumerate(letters):
            suffix -= letter_weight(g)
            if g in (0, 2):
                out.append(WeightedWord(letters[:p] + (g + 1,) + letters[p + 1 :], Q.q**-suffix))
        return out
    if gen == "e":
        prefix = 0
        for p, g in enumerate(letters):
            if g in (1, 3):
                out.append(WeightedWord(letters[:p] + (g - 1,) + letters[p + 1 :], Q.q**prefix))
            prefix += letter_weight(g)
        return out
    raise DomainError(f"unknown U_q generator {gen!r}; expected one of e, f, k, K")


def _normalize_words(words: Sequence[WeightedWord]) -> dict[Mono, QRational]:
    out: dict[Mono, QRational] = {}
    for ww in words:
        for m, c in word_normal_form(ww.letters).items():
            t = out.get(m, Q.zero) + c * ww.prefactor
            if t:
                out[m] = t
            else:
                out.pop(m, None)
    return out


@lru_cache(maxsize=200_000)
def _act_mono(gen: str, m: Mono) -> tuple[tuple[Mono, QRational], ...]:
    if gen == "k":
        return ((m, Q.q ** monomial_weight(m)),)
    if gen == "K":
        return ((m, Q.q ** -monomial_weight(m)),)
    return tuple(_normalize_words(act_on_word(gen, _word_of(m))).items())


def act(gen: str, p: NCPolynomial) -> NCPolynomial:
    """Apply ``gen`` in {"e", "f", "k", "K"} (K = k^-1) to ``p``."""
    if gen not in _ACTION_GENERATORS:
        raise DomainError(f"unknown U_q generator {gen!r}; expected one of e, f, k, K")
    dom = p.domain
    out: dict[Mono, Any] = {}
    for m, c in p.terms.items():
        for m2, k in _act_mono(gen, m):
            t = c * dom.from_scalar(k)
            prev = out.get(m2)
            t = t if prev is None else prev + t
            if t:
                out[m2] = t
            else:
                out.pop(m2, None)
    return NCPolynomial._from_clean(out, dom)


def act_k(p: NCPolynomial) -> NCPolynomial:
    return act("k", p)


def act_k_inv(p: NCPolynomial) -> NCPolynomial:
    return act("K", p)


def act_e(p: NCPolynomial) -> NCPolynomial:
    return act("e", p)


def act_f(p: NCPolynomial) -> NCPolynomial:
    return act("f", p)


def apply_word(p: NCPolynomial, word: str) -> NCPolynomial:
    """Act by an operator word such as ``"ef"``; the rightmost letter acts first."""
    for gen in reversed(word):
        p = act(gen, p)
    return p


# compatibility with the defining relations ---------------------------------

# each relation as (name, [(coefficient, word)]) meaning sum coefficient*word == 0
FUNDAMENTAL_RELATIONS: tuple[tuple[str, tuple[tuple[QRational, tuple[int, ...]], ...]], ...] = (
    ("x11 x12 = q x12 x11", ((Q.one, (0, 1)), (-Q.q, (1, 0)))),
    ("x21 x22 = q x22 x21", ((Q.one, (2, 3)), (-Q.q, (3, 2)))),
    ("x11 x21 = q x21 x11", ((Q.one, (0, 2)), (-Q.q, (2, 0)))),
    ("x12 x22 = q x22 x12", ((Q.one, (1, 3)), (-Q.q, (3, 1)))),
    ("x12 x21 = x21 x12", ((Q.one, (1, 2)), (-Q.one, (2, 1)))),
    (
        "x11 x22 - x22 x11 = (q - q^-1) x12 x21",
        ((Q.one, (0, 3)), (-Q.one, (3, 0)), (-(Q.q - Q.q**-1), (1, 2))),
    ),
)


def action_compatibility_table() -> dict[tuple[str, str], bool]:
    """For every generator and relation: does the action respect it?"""
    table = {}
    for gen in _ACTION_GENERATORS:
        for name, combo in FUNDAMENTAL_RELATIONS:
            words = []
            for c, w in combo:
                words.extend(WeightedWord(ww.letters, ww.prefactor * c) for ww in act_on_word(gen, w))
            table[(gen, name)] = not _normalize_words(words)
    return table


def verify_action_well_defined() -> bool:
    return all(action_compatibility_table().values())


# highest weights and cyclic spans --------------------------------------------


def highest_weight_test(p: NCPolynomial) -> tuple[bool, int | None]:
    """(True, w) if e.p == 0 and k.p == q^w p; otherwise (False, None)."""
    if not p:
        raise DomainError("highest_weight_test of the zero polynomial")
    weights = {monomial_weight(m) for m in p.terms}
    if len(weights) != 1 or act_e(p):
        return False, None
    return True, weights.pop()


def cyclic_span_dimension(
    p: NCPolynomial,
    q_value: Fraction | int,
    alpha_value: Fraction | int | QRational,
) -> int:
    """Dimension of U_q . p after substituting rational numbers for q and alpha.

    ``alpha_value`` may also be an element of Q(q) such as ``q**-2``; it is
    evaluated at ``q_value``. Raises :class:`BadSpecializationError` if a
    coefficient has a pole at ``q_value``; retry with another value.
    """
    q_value = Fraction(q_value)
    if q_value in (0, 1, -1):
        raise BadSpecializationError(f"q = {q_value} is not a generic specialization")
    v = p.specialize(q_value, alpha_value) if p.domain == SYMBOLIC else p
    if not v:
        raise DomainError("the specialized generator is zero")
    basis: list[tuple[Mono, dict[Mono, Fraction]]] = []

    def reduce(vec: dict[Mono, Fraction]) -> dict[Mono, Fraction]:
        vec = dict(vec)
        for pivot, b in basis:
            c = vec.get(pivot)
            if c:
                for m, x in b.items():
                    t = vec.get(m, 0) - c * x
                    if t:
                        vec[m] = t
                    else:
                        vec.pop(m, None)
        return vec

    work = [v]
    while work:
        cur = work.pop()
        vec = reduce(cur.terms)
        if not vec:
            continue
        pivot = max(vec)
        inv = 1 / vec[pivot]
        basis.append((pivot, {m: x * inv for m, x in vec.items()}))
        for gen in _ACTION_GENERATORS:
            nxt = act(gen, cur)
            if nxt:
                work.append(nxt)
    return len(basis)
