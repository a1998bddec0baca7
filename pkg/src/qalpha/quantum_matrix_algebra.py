"""The quantum matrix algebra A_q(Mat_2) with coefficients in Q(q)[alpha].

Elements are stored in the normal-ordered basis x11^a x12^b x21^c x22^d
(generator order x11 < x12 < x21 < x22). The defining relations, oriented as
rewrite rules that sort a word into this order, are::

    x12 x11 -> q^-1 x11 x12        x22 x12 -> q^-1 x12 x22
    x21 x11 -> q^-1 x11 x21        x22 x21 -> q^-1 x21 x22
    x21 x12 -> x12 x21             x22 x11 -> x11 x22 - (q - q^-1) x12 x21

:func:`reduce_word` applies these rules literally. :class:`NCPolynomial`
multiplication uses the equivalent closed form for right multiplication by a
single generator, memoised per monomial pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Any, Iterable, Mapping, Sequence

from .errors import BoundError, ConsistencyError, DomainError
from .q_combinatorics import PermutationStats, inversion_statistics
from .scalar_field import AlphaPolynomial, Q, QRational

__all__ = [
    "GENERATORS",
    "Mono",
    "REWRITE_RULES",
    "CoefficientDomain",
    "SymbolicDomain",
    "SpecializedDomain",
    "SYMBOLIC",
    "NCPolynomial",
    "generator",
    "z1",
    "z2",
    "nc_mul",
    "nc_power",
    "quantum_alpha_det",
    "quantum_det",
    "quantum_per",
    "reduce_word",
    "word_normal_form",
    "AlphaDetTerm",
    "general_alpha_det_terms",
    "reduce_alpha_det_terms",
    "x2z_product",
    "verify_stepping_relations",
    "monomial_str",
    "render",
]

GENERATORS = ("x11", "x12", "x21", "x22")
X11, X12, X21, X22 = range(4)

Mono = tuple  # (a, b, c, d) exponents of x11, x12, x21, x22

_UNIT: Mono = (0, 0, 0, 0)
_LAMBDA = Q.q - Q.q**-1


def _letter_mono(g: int) -> Mono:
    return tuple(1 if i == g else 0 for i in range(4))


# word rewriting ------------------------------------------------------------

# (left, right) -> [(coefficient, replacement word)] for every descent left > right
REWRITE_RULES: dict[tuple[int, int], tuple[tuple[QRational, tuple[int, ...]], ...]] = {
    (X12, X11): ((Q.q**-1, (X11, X12)),),
    (X21, X11): ((Q.q**-1, (X11, X21)),),
    (X21, X12): ((Q.one, (X12, X21)),),
    (X22, X12): ((Q.q**-1, (X12, X22)),),
    (X22, X21): ((Q.q**-1, (X21, X22)),),
    (X22, X11): ((Q.one, (X11, X22)), (-_LAMBDA, (X12, X21))),
}


def _parse_letter(g: int | str) -> int:
    if isinstance(g, str):
        try:
            return GENERATORS.index(g)
        except ValueError:
            raise DomainError(f"unknown generator {g!r}") from None
    if g not in (0, 1, 2, 3):
        raise DomainError(f"unknown generator index {g!r}")
    return g


def reduce_word(word: Sequence[int | str], strategy: str = "leftmost") -> dict[Mono, QRational]:
    """Normal form of a generator word by literal application of the rules.

    ``strategy`` picks the redex: ``"leftmost"`` or ``"rightmost"`` descent.
    Returns ``{monomial: coefficient}``.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise DomainError(f"unknown strategy {strategy!r}")
    pending: dict[tuple[int, ...], QRational] = {tuple(_parse_letter(g) for g in word): Q.one}
    done: dict[Mono, QRational] = {}
    while pending:
        w, c = pending.popitem()
        idx = range(len(w) - 1) if strategy == "leftmost" else range(len(w) - 2, -1, -1)
        pos = next((i for i in idx if w[i] > w[i + 1]), None)
        if pos is None:
            m = tuple(w.count(g) for g in range(4))
            total = done.get(m, Q.zero) + c
            if total:
                done[m] = total
            else:
                done.pop(m, None)
            continue
        for k, rep in REWRITE_RULES[(w[pos], w[pos + 1])]:
            nw = w[:pos] + rep + w[pos + 2 :]
            total = pending.get(nw, Q.zero) + c * k
            if total:
                pending[nw] = total
            else:
                pending.pop(nw, None)
    return done


# closed-form structure constants -----------------------------------------


@lru_cache(maxsize=None)
def _x22_past_x11(d: int) -> QRational:
    # x22^d x11 = x11 x22^d - (q - q^(1-2d)) x12 x21 x22^(d-1)
    return Q.q - Q.q ** (1 - 2 * d)


@lru_cache(maxsize=None)
def _times_generator(m: Mono, g: int) -> tuple[tuple[Mono, QRational], ...]:
    a, b, c, d = m
    if g == X22:
        return (((a, b, c, d + 1), Q.one),)
    if g == X21:
        return (((a, b, c + 1, d), Q.q ** (-d)),)
    if g == X12:
        return (((a, b + 1, c, d), Q.q ** (-d)),)
    head = ((a + 1, b, c, d), Q.q ** (-(b + c)))
    if d == 0:
        return (head,)
    return (head, ((a, b + 1, c + 1, d - 1), -_x22_past_x11(d)))


def _word_of(m: Mono) -> tuple[int, ...]:
    return (X11,) * m[0] + (X12,) * m[1] + (X21,) * m[2] + (X22,) * m[3]


def _times_word(start: Mapping[Mono, QRational], word: Iterable[int]) -> dict[Mono, QRational]:
    cur = dict(start)
    for g in word:
        nxt: dict[Mono, QRational] = {}
        for m, c in cur.items():
            for m2, k in _times_generator(m, g):
                total = nxt.get(m2, Q.zero) + c * k
                if total:
                    nxt[m2] = total
                else:
                    nxt.pop(m2, None)
        cur = nxt
    return cur


@lru_cache(maxsize=200_000)
def _mono_mul(m1: Mono, m2: Mono) -> tuple[tuple[Mono, QRational], ...]:
    if m2 == _UNIT:
        return ((m1, Q.one),)
    if m1 == _UNIT:
        return ((m2, Q.one),)
    return tuple(_times_word({m1: Q.one}, _word_of(m2)).items())


def word_normal_form(word: Sequence[int | str]) -> dict[Mono, QRational]:
    """Normal form of a generator word via the memoised closed-form product."""
    return _times_word({_UNIT: Q.one}, [_parse_letter(g) for g in word])


# coefficient domains -----------------------------------------------------


class CoefficientDomain:
    """Where NCPolynomial coefficients live; maps Q(q) constants into it."""

    zero: Any
    one: Any

    def from_scalar(self, c: QRational) -> Any:
        raise NotImplementedError

    def coerce(self, c: Any) -> Any:
        raise NotImplementedError


class SymbolicDomain(CoefficientDomain):
    """Coefficients in Q(q)[alpha] (``AlphaPolynomial``)."""

    zero = AlphaPolynomial()
    one = AlphaPolynomial([1])

    def from_scalar(self, c: QRational) -> AlphaPolynomial:
        return AlphaPolynomial._wrap([c])

    def coerce(self, c: Any) -> AlphaPolynomial:
        if isinstance(c, AlphaPolynomial):
            return c
        return AlphaPolynomial([c])

    def __repr__(self) -> str:
        return "SYMBOLIC"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolicDomain)

    def __hash__(self) -> int:
        return hash("symbolic")


class SpecializedDomain(CoefficientDomain):
    """Coefficients in Q, after substituting numbers for q and alpha."""

    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, q_value: Fraction | int, alpha_value: Fraction | int):
        self.q_value = Fraction(q_value)
        self.alpha_value = Fraction(alpha_value)
        if self.q_value == 0:
            raise DomainError("q cannot be specialized to 0")
        self._cache: dict[QRational, Fraction] = {}

    def from_scalar(self, c: QRational) -> Fraction:
        v = self._cache.get(c)
        if v is None:
            v = self._cache[c] = c.evaluate(self.q_value)
        return v

    def coerce(self, c: Any) -> Fraction:
        if isinstance(c, AlphaPolynomial):
            return c.specialize(self.q_value, self.alpha_value)
        if isinstance(c, QRational):
            return self.from_scalar(c)
        return Fraction(c)

    def __repr__(self) -> str:
        return f"SpecializedDomain(q={self.q_value}, alpha={self.alpha_value})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SpecializedDomain)
            and self.q_value == other.q_value
            and self.alpha_value == other.alpha_value
        )

    def __hash__(self) -> int:
        return hash((self.q_value, self.alpha_value))


SYMBOLIC = SymbolicDomain()


# polynomials -------------------------------------------------------------


class NCPolynomial:
    """Finite sum of normal-ordered monomials with coefficients in a domain."""

    __slots__ = ("terms", "domain")

    def __init__(self, terms: Mapping[Mono, Any] | None = None, domain: CoefficientDomain = SYMBOLIC):
        self.domain = domain
        self.terms: dict[Mono, Any] = {}
        if terms:
            for m, c in terms.items():
                c = domain.coerce(c)
                if c:
                    self.terms[tuple(m)] = c

    @classmethod
    def _from_clean(cls, terms: dict[Mono, Any], domain: CoefficientDomain) -> NCPolynomial:
        obj = cls.__new__(cls)
        obj.terms, obj.domain = terms, domain
        return obj

    @classmethod
    def scalar(cls, c: Any, domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
        return cls({_UNIT: c}, domain)

    @classmethod
    def monomial(cls, m: Sequence[int], c: Any = 1, domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
        if len(m) != 4 or any(e < 0 for e in m):
            raise DomainError(f"bad monomial exponents {m!r}")
        return cls({tuple(m): c}, domain)

    @classmethod
    def from_scalars(cls, terms: Mapping[Mono, QRational], domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
        out = {m: domain.from_scalar(c) for m, c in terms.items() if c}
        return cls._from_clean(out, domain)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, m: Sequence[int]) -> Any:
        return self.terms.get(tuple(m), self.domain.zero)

    def degree(self) -> int:
        """Total generator degree (-1 for zero)."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def alpha_degree(self) -> int:
        if self.domain != SYMBOLIC:
            return 0
        return max((c.degree() for c in self.terms.values()), default=-1)

    # arithmetic ------------------------------------------------------------
    def _check_domain(self, other: NCPolynomial) -> None:
        if self.domain != other.domain:
            raise DomainError(f"mixing coefficient domains {self.domain!r} and {other.domain!r}")

    def _lift(self, other: Any) -> NCPolynomial:
        if isinstance(other, NCPolynomial):
            self._check_domain(other)
            return other
        return NCPolynomial.scalar(other, self.domain)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPolynomial):
            try:
                other = NCPolynomial.scalar(other, self.domain)
            except (TypeError, DomainError):
                return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Any) -> NCPolynomial:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            t = out.get(m)
            t = c if t is None else t + c
            if t:
                out[m] = t
            else:
                out.pop(m, None)
        return NCPolynomial._from_clean(out, self.domain)

    __radd__ = __add__

    def __neg__(self) -> NCPolynomial:
        return NCPolynomial._from_clean({m: -c for m, c in self.terms.items()}, self.domain)

    def __sub__(self, other: Any) -> NCPolynomial:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> NCPolynomial:
        return (-self) + other

    def scale(self, c: Any) -> NCPolynomial:
        c = self.domain.coerce(c)
        if not c:
            return NCPolynomial._from_clean({}, self.domain)
        return NCPolynomial._from_clean({m: v * c for m, v in self.terms.items()}, self.domain)

    def __mul__(self, other: Any) -> NCPolynomial:
        if isinstance(other, NCPolynomial):
            return nc_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: Any) -> NCPolynomial:
        # scalars are central
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, m: int) -> NCPolynomial:
        return nc_power(self, m)

    # conversions -----------------------------------------------------------
    def specialize(self, q_value: Fraction | int, alpha_value: Fraction | int | QRational) -> NCPolynomial:
        """Substitute numbers for q and alpha (alpha may be given in Q(q))."""
        if self.domain != SYMBOLIC:
            raise DomainError("only symbolic polynomials can be specialized")
        if isinstance(alpha_value, QRational):
            alpha_value = alpha_value.evaluate(q_value)
        dom = SpecializedDomain(q_value, alpha_value)
        out = {}
        for m, c in self.terms.items():
            v = dom.coerce(c)
            if v:
                out[m] = v
        return NCPolynomial._from_clean(out, dom)

    def substitute_alpha(self, value: Any) -> NCPolynomial:
        """Replace alpha by an element of Q(q), keeping symbolic coefficients."""
        if self.domain != SYMBOLIC:
            raise DomainError("only symbolic polynomials carry alpha")
        return NCPolynomial({m: AlphaPolynomial([c.evaluate(value)]) for m, c in self.terms.items()})

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"NCPolynomial({render(self)})"


def nc_mul(p: NCPolynomial, r: NCPolynomial) -> NCPolynomial:
    """Product in A_q(Mat_2), reduced to normal form."""
    p._check_domain(r)
    dom = p.domain
    out: dict[Mono, Any] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in r.terms.items():
            c12 = c1 * c2
            for m, k in _mono_mul(m1, m2):
                t = c12 * dom.from_scalar(k)
                prev = out.get(m)
                t = t if prev is None else prev + t
                if t:
                    out[m] = t
                else:
                    out.pop(m, None)
    return NCPolynomial._from_clean(out, dom)


def nc_power(p: NCPolynomial, m: int) -> NCPolynomial:
    if m < 0:
        raise DomainError("negative power in A_q(Mat_2)")
    result = NCPolynomial.scalar(1, p.domain)
    for _ in range(m):
        result = nc_mul(result, p)
    return result


# named elements ----------------------------------------------------------


def generator(name: int | str, domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
    return NCPolynomial.monomial(_letter_mono(_parse_letter(name)), 1, domain)


def z1(domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
    return NCPolynomial.monomial((1, 0, 0, 1), 1, domain)


def z2(domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
    return NCPolynomial.monomial((0, 1, 1, 0), 1, domain)


def quantum_alpha_det() -> NCPolynomial:
    """det_alpha = z1 + alpha q z2, with alpha symbolic."""
    return NCPolynomial({(1, 0, 0, 1): 1, (0, 1, 1, 0): AlphaPolynomial([0, Q.q])})


def quantum_det(domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
    """det_q = x11 x22 - q x12 x21."""
    return NCPolynomial.from_scalars({(1, 0, 0, 1): Q.one, (0, 1, 1, 0): -Q.q}, domain)


def quantum_per(domain: CoefficientDomain = SYMBOLIC) -> NCPolynomial:
    """per_q = x11 x22 + q^-1 x12 x21."""
    return NCPolynomial.from_scalars({(1, 0, 0, 1): Q.one, (0, 1, 1, 0): Q.q**-1}, domain)


# general n alpha-determinant (formal terms only) --------------------------


@dataclass(frozen=True)
class AlphaDetTerm:
    """One summand alpha^nu q^inv x_{sigma(1)1} ... x_{sigma(n)n}."""

    stats: PermutationStats
    word: tuple[tuple[int, int], ...]  # (row, column) pairs, 1-based

    @property
    def coefficient(self) -> AlphaPolynomial:
        return AlphaPolynomial([0] * self.stats.nu + [Q.q**self.stats.inv])

    def word_str(self) -> str:
        return " ".join(f"x{i}{j}" for i, j in self.word)


def general_alpha_det_terms(n: int) -> list[AlphaDetTerm]:
    if not 1 <= n <= 6:
        raise BoundError(f"alpha-determinant terms are generated for 1 <= n <= 6, got {n}")
    terms = []
    for perm in permutations(range(1, n + 1)):
        stats = inversion_statistics(perm)
        terms.append(AlphaDetTerm(stats, tuple((perm[col], col + 1) for col in range(n))))
    return terms


def reduce_alpha_det_terms(terms: Sequence[AlphaDetTerm]) -> NCPolynomial:
    """Sum the size-two terms inside A_q(Mat_2)."""
    total = NCPolynomial()
    for t in terms:
        if len(t.word) != 2 and len(t.word) != 1:
            raise DomainError("ring reduction is only available for n <= 2")
        letters = [GENERATORS.index(f"x{i}{j}") for i, j in t.word]
        total = total + NCPolynomial.from_scalars(reduce_word(letters)) * t.coefficient
    return total


# Lemma-style identities ----------------------------------------------------


@lru_cache(maxsize=1)
def verify_stepping_relations() -> bool:
    """z1 x22 = x22 (z1 + (q^3 - q) z2) and z2 x22 = q^2 x22 z2."""
    x22 = generator("x22")
    ok1 = z1() * x22 == x22 * (z1() + z2() * (Q.q**3 - Q.q))
    ok2 = z2() * x22 == x22 * z2() * Q.q**2
    return ok1 and ok2


def x2z_product(l: int) -> tuple[NCPolynomial, NCPolynomial]:
    """Return (x11^l x22^l, prod_{r=1}^l (z1 + (q^(2r-1) - q) z2))."""
    if l < 0:
        raise DomainError("l must be nonnegative")
    if not verify_stepping_relations():
        raise ConsistencyError("stepping relations z_i x22 failed")
    lhs = generator("x11") ** l * generator("x22") ** l
    rhs = NCPolynomial.scalar(1)
    for r in range(1, l + 1):
        rhs = rhs * (z1() + z2() * (Q.q ** (2 * r - 1) - Q.q))
    return lhs, rhs


# rendering -----------------------------------------------------------------


def monomial_str(m: Mono) -> str:
    parts = []
    for name, e in zip(GENERATORS, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def _coeff_text(c: Any) -> tuple[bool, str, bool]:
    """(negative?, magnitude text, magnitude is one?) for a coefficient."""
    if isinstance(c, Fraction):
        return c < 0, str(abs(c)), abs(c) == 1
    if isinstance(c, AlphaPolynomial) and c.degree() == 0:
        c = c.coeffs[0]
    if isinstance(c, QRational):
        neg = c.leading_sign() < 0
        mag = -c if neg else c
        text = str(mag)
        if not mag.is_single_term():
            text = f"({text})"
        return neg, text, mag == 1
    # genuine alpha-polynomial
    lead = c.leading()
    neg = lead.leading_sign() < 0
    mag = -c if neg else c
    single = sum(1 for x in mag.coeffs if x) == 1 and mag.leading().is_single_term()
    text = str(mag)
    return neg, text if single else f"({text})", False


def render(p: NCPolynomial) -> str:
    """Plain-text rendering, e.g. ``x11 x22 - (q - q^-1) x12 x21``."""
    if not p.terms:
        return "0"
    out = []
    for m in sorted(p.terms, reverse=True):
        neg, text, unit = _coeff_text(p.terms[m])
        mono = monomial_str(m)
        if mono == "1":
            body = text if not unit else "1"
            body = body[1:-1] if body.startswith("(") and not out and not neg else body
        else:
            body = mono if unit else f"{text} {mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
