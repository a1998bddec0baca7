"""Terminating hypergeometric sums: the mixed ordinary/q-series Phi, the
closed form of the transition polynomials, and their classical (q = 1) limit.

Phi with ordinary parameters (a; b), q-parameters (c; d) and argument x is

    sum_i  prod (a)_i / prod (b)_i  *  prod [c]_i / prod [d]_i  *  x^i / [i]!

and is evaluated only when some numerator parameter is a nonpositive integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import ConsistencyError, DivisibilityError, DomainError
from .q_combinatorics import q_factorial, q_rising_factorial, rising_factorial
from .scalar_field import AlphaPolynomial, Q, RationalPolynomial, alpha_divide_exact

__all__ = [
    "MixedHGParams",
    "termination_index",
    "mixed_hg_eval",
    "theorem_params",
    "closed_form_F",
    "closed_form_Q",
    "pfq_eval",
    "hg2f1_eval",
    "classical_F",
    "classical_F_lines",
    "eq1_constant",
    "eq1_proportionality_check",
]

ONE_PLUS_ALPHA = AlphaPolynomial([1, 1])
_R_ONE_PLUS_ALPHA = RationalPolynomial([1, 1])
_R_MINUS_ALPHA = RationalPolynomial([0, -1])


def termination_index(numerators: Sequence[int], denominators: Sequence[int]) -> int:
    """Last index with a nonzero term, validating the denominators against it."""
    stops = [-a for a in numerators if a <= 0]
    if not stops:
        raise DomainError(f"non-terminating series: no nonpositive numerator in {list(numerators)}")
    n = min(stops)
    for b in denominators:
        if b <= 0 and n > -b:
            raise DomainError(f"denominator parameter {b} vanishes inside the summation range 0..{n}")
    return n


@dataclass(frozen=True)
class MixedHGParams:
    ordinary_num: tuple[int, ...]
    ordinary_den: tuple[int, ...]
    q_num: tuple[int, ...]
    q_den: tuple[int, ...]
    argument: AlphaPolynomial = field(default_factory=lambda: AlphaPolynomial([0, 1]))

    def __post_init__(self) -> None:
        for name in ("ordinary_num", "ordinary_den", "q_num", "q_den"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))

    def termination_index(self) -> int:
        return termination_index(self.ordinary_num + self.q_num, self.ordinary_den + self.q_den)


def mixed_hg_eval(params: MixedHGParams) -> AlphaPolynomial:
    n = params.termination_index()
    total = AlphaPolynomial()
    power = AlphaPolynomial([1])
    for i in range(n + 1):
        ordinary = Fraction(1)
        for a in params.ordinary_num:
            ordinary *= rising_factorial(a, i)
        for b in params.ordinary_den:
            ordinary /= rising_factorial(b, i)
        qpart = Q(ordinary) / q_factorial(i)
        for c in params.q_num:
            qpart = qpart * q_rising_factorial(c, i)
        for d in params.q_den:
            qpart = qpart / q_rising_factorial(d, i)
        total = total + power * qpart
        power = power * params.argument
    return total


def theorem_params(m: int, s: int) -> MixedHGParams:
    """Parameters ({s-m}, {s+1}; {s+1, s+1}, {2s+2}; q(1+alpha))."""
    return MixedHGParams((s - m,), (s + 1,), (s + 1, s + 1), (2 * s + 2,), ONE_PLUS_ALPHA * Q.q)


def _check_ms(m: int, s: int) -> None:
    if m < 0 or not 0 <= s <= m:
        raise DomainError(f"need 0 <= s <= m, got m={m}, s={s}")


def closed_form_Q(m: int, s: int) -> AlphaPolynomial:
    """Q_{m,s} = q^C(s+1,2) C(m,s) [s]!/[2s]! Phi(...)."""
    _check_ms(m, s)
    pref = Q.q ** comb(s + 1, 2) * comb(m, s) * q_factorial(s) / q_factorial(2 * s)
    return mixed_hg_eval(theorem_params(m, s)) * pref


def closed_form_F(m: int, s: int) -> AlphaPolynomial:
    """Transition polynomial F_{m,s}(alpha) from its hypergeometric closed form."""
    return ONE_PLUS_ALPHA**s * closed_form_Q(m, s)


# classical world ---------------------------------------------------------


def pfq_eval(numerators: Sequence[int], denominators: Sequence[int], x: RationalPolynomial) -> RationalPolynomial:
    """Terminating generalized hypergeometric sum over Q: sum_i prod(a)_i/prod(b)_i x^i/i!."""
    n = termination_index(numerators, denominators)
    total = RationalPolynomial()
    power = RationalPolynomial([1])
    for i in range(n + 1):
        c = Fraction(1, factorial(i))
        for a in numerators:
            c *= rising_factorial(a, i)
        for b in denominators:
            c /= rising_factorial(b, i)
        total = total + power * c
        power = power * x
    return total


def hg2f1_eval(a: int, b: int, c: int, x: RationalPolynomial) -> RationalPolynomial:
    """Gaussian 2F1(a, b; c; x) for nonpositive integer ``a``.

    A nonpositive ``c`` is allowed as long as the series stops (at i = -a)
    before (c)_i vanishes.
    """
    if a > 0:
        raise DomainError(f"2F1 needs a nonpositive integer a, got {a}")
    n = -a
    total = RationalPolynomial()
    power = RationalPolynomial([1])
    for i in range(n + 1):
        den = rising_factorial(c, i) * factorial(i)
        if den == 0:
            raise DomainError(f"(c)_{i} vanishes for c={c} before termination at {n}")
        total = total + power * Fraction(rising_factorial(a, i) * rising_factorial(b, i), den)
        power = power * x
    return total


def eq1_constant(m: int, s: int) -> Fraction:
    """[C(2m, m-s) - C(2m, m-s-1)] / (C(2m, m) s!)."""
    _check_ms(m, s)
    top = comb(2 * m, m - s) - (comb(2 * m, m - s - 1) if m - s - 1 >= 0 else 0)
    return Fraction(top, comb(2 * m, m) * factorial(s))


def classical_F_lines(m: int, s: int) -> dict[str, RationalPolynomial]:
    """Every classical expression for F_{m,s}, keyed by route.

    ``line_i`` uses denominator parameter 2s+2, ``line_i_printed`` the
    printed 2s+1, ``line_ii`` the 2F1(...; -m; -alpha) form.
    """
    _check_ms(m, s)
    lead = _R_ONE_PLUS_ALPHA**s
    pref_i = Fraction(factorial(m), factorial(m - s) * factorial(2 * s))
    return {
        "line_i": lead * hg2f1_eval(s - m, s + 1, 2 * s + 2, _R_ONE_PLUS_ALPHA) * pref_i,
        "line_i_printed": lead * hg2f1_eval(s - m, s + 1, 2 * s + 1, _R_ONE_PLUS_ALPHA) * pref_i,
        "line_ii": lead * hg2f1_eval(s - m, s + 1, -m, _R_MINUS_ALPHA) * eq1_constant(m, s),
    }


def classical_F(m: int, s: int) -> RationalPolynomial:
    """Classical transition polynomial; both closed forms must agree."""
    lines = classical_F_lines(m, s)
    if lines["line_i"] != lines["line_ii"]:
        raise ConsistencyError(
            f"classical F_{{{m},{s}}}: {lines['line_i']} != {lines['line_ii']}"
        )
    return lines["line_i"]


def eq1_proportionality_check(m: int) -> list[Fraction]:
    """Constants c_{m,s} with classical_F(m, s) = c (1+alpha)^s 2F1(s-m, s+1; -m; -alpha)."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    out = []
    for s in range(m + 1):
        base = _R_ONE_PLUS_ALPHA**s * hg2f1_eval(s - m, s + 1, -m, _R_MINUS_ALPHA)
        try:
            ratio = alpha_divide_exact(classical_F(m, s), base)
        except DivisibilityError as exc:
            raise ConsistencyError(f"ratio for (m, s) = ({m}, {s}) is not a polynomial") from exc
        if ratio.degree() != 0:
            raise ConsistencyError(f"ratio for (m, s) = ({m}, {s}) depends on alpha: {ratio}")
        c = ratio.coeffs[0]
        if c != eq1_constant(m, s):
            raise ConsistencyError(f"c_{{{m},{s}}} = {c}, expected {eq1_constant(m, s)}")
        out.append(c)
    return out
