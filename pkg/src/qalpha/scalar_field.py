"""Exact arithmetic in Q(q) and in the polynomial ring Q(q)[alpha].

``LaurentPoly`` is a sparse integer Laurent polynomial in q. ``QRational`` is
an element of Q(q) kept in a canonical form, so two values are equal exactly
when their stored numerator and denominator agree:

* the denominator has lowest q-exponent 0 and a positive leading coefficient;
* numerator and denominator are coprime in Z[q, 1/q] (including their integer
  contents).

Polynomial gcds are delegated to FLINT through ``python-flint``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, ClassVar, Iterable, Mapping

import flint

from .errors import BadSpecializationError, DivisibilityError, DomainError, PoleAtOneError

__all__ = [
    "LaurentPoly",
    "QRational",
    "DensePoly",
    "AlphaPolynomial",
    "RationalPolynomial",
    "Q",
    "qr_add",
    "qr_mul",
    "qr_neg",
    "qr_inv",
    "qr_eval_at_one",
    "alpha_divide_exact",
]

_FZERO = flint.fmpz_poly([])
_FONE = flint.fmpz_poly([1])
_Q_MINUS_ONE = flint.fmpz_poly([-1, 1])


def _fmt_power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _fmt_terms(pairs: Iterable[tuple[Any, str]]) -> str:
    """Join (signed coefficient, monomial) pairs into ``a + b - c`` form."""
    out = []
    for c, mono in pairs:
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


class LaurentPoly:
    """Integer Laurent polynomial in q, stored as ``{exponent: coefficient}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs: dict[int, int] = (
            {int(e): int(c) for e, c in coeffs.items() if c} if coeffs else {}
        )

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def min_exponent(self) -> int:
        if not self.coeffs:
            raise DomainError("zero Laurent polynomial has no exponents")
        return min(self.coeffs)

    def max_exponent(self) -> int:
        if not self.coeffs:
            raise DomainError("zero Laurent polynomial has no exponents")
        return max(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def evaluate(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        if x == 0 and self.coeffs and min(self.coeffs) < 0:
            raise BadSpecializationError("negative power of q evaluated at q = 0")
        return sum((c * x**e for e, c in self.coeffs.items()), Fraction(0))

    def to_flint(self) -> tuple[int, flint.fmpz_poly]:
        """Return ``(shift, p)`` with ``self == q**shift * p(q)``."""
        if not self.coeffs:
            return 0, _FZERO
        lo, hi = min(self.coeffs), max(self.coeffs)
        dense = [0] * (hi - lo + 1)
        for e, c in self.coeffs.items():
            dense[e - lo] = c
        return lo, flint.fmpz_poly(dense)

    @classmethod
    def from_flint(cls, shift: int, poly: flint.fmpz_poly) -> LaurentPoly:
        return cls({shift + i: int(c) for i, c in enumerate(poly.coeffs()) if c})

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str | int]) -> LaurentPoly:
        return cls({int(e): int(c) for e, c in data.items()})

    def __str__(self) -> str:
        items = sorted(self.coeffs.items(), reverse=True)
        return _fmt_terms((c, "" if e == 0 else _fmt_power("q", e)) for e, c in items)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.coeffs!r})"


def _low(p: flint.fmpz_poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c:
            return i
    return 0


def _reverse(p: flint.fmpz_poly) -> flint.fmpz_poly:
    return flint.fmpz_poly(list(reversed(p.coeffs())))


class QRational:
    """Element of Q(q): ``q**shift * num(q) / den(q)`` in canonical form.

    ``num`` and ``den`` are FLINT integer polynomials with nonzero constant
    terms; ``den`` has positive leading coefficient and is coprime to ``num``.
    The Laurent numerator/denominator of the canonical form are exposed as
    :attr:`numerator` and :attr:`denominator`.
    """

    __slots__ = ("_s", "_n", "_d")

    def __init__(self, num: Any = 0, den: Any = 1):
        s1, n = _as_flint_pair(num)
        s2, d = _as_flint_pair(den)
        if d.is_zero():
            raise ZeroDivisionError("QRational with zero denominator")
        self._set(s1 - s2, n, d)

    @classmethod
    def _raw(cls, s: int, n: flint.fmpz_poly, d: flint.fmpz_poly) -> QRational:
        obj = cls.__new__(cls)
        obj._set(s, n, d)
        return obj

    def _set(self, s: int, n: flint.fmpz_poly, d: flint.fmpz_poly) -> None:
        if n.is_zero():
            self._s, self._n, self._d = 0, _FZERO, _FONE
            return
        k = _low(n)
        if k:
            n = n.right_shift(k)
            s += k
        k = _low(d)
        if k:
            d = d.right_shift(k)
            s -= k
        if not d.is_one():
            g = n.gcd(d)
            if not g.is_one():
                n = n // g
                d = d // g
            if d.leading_coefficient() < 0:
                n, d = -n, -d
        self._s, self._n, self._d = s, n, d

    # -- construction helpers -------------------------------------------------
    @classmethod
    def q_power(cls, k: int) -> QRational:
        return _q_power(k)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> QRational:
        return cls(p)

    # -- views ------------------------------------------------------------------
    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly.from_flint(self._s, self._n)

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly.from_flint(0, self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def __bool__(self) -> bool:
        return not self._n.is_zero()

    def is_laurent(self) -> bool:
        return self._d.is_one()

    def canonicalize(self) -> QRational:
        return QRational._raw(self._s, self._n, self._d)

    # -- arithmetic -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QRational):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self._s == other._s and self._n == other._n and self._d == other._d

    def __hash__(self) -> int:
        return hash((self._s, tuple(self._n.coeffs()), tuple(self._d.coeffs())))

    def __add__(self, other: Any) -> QRational:
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        if o._n.is_zero():
            return self
        if self._n.is_zero():
            return o
        s = min(self._s, o._s)
        n1 = self._n.left_shift(self._s - s) if self._s != s else self._n
        n2 = o._n.left_shift(o._s - s) if o._s != s else o._n
        if self._d == o._d:
            return QRational._raw(s, n1 + n2, self._d)
        return QRational._raw(s, n1 * o._d + n2 * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self) -> QRational:
        obj = QRational.__new__(QRational)
        obj._s, obj._n, obj._d = self._s, -self._n, self._d
        return obj

    def __sub__(self, other: Any) -> QRational:
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> QRational:
        return (-self) + other

    def __mul__(self, other: Any) -> QRational:
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        if self._n.is_zero() or o._n.is_zero():
            return _ZERO
        obj = QRational.__new__(QRational)
        if self._d.is_one() and o._d.is_one():
            obj._s, obj._n, obj._d = self._s + o._s, self._n * o._n, _FONE
            return obj
        # cross-cancel; both inputs are already reduced
        n1, d2 = _cancel(self._n, o._d)
        n2, d1 = _cancel(o._n, self._d)
        d = d1 * d2
        n = n1 * n2
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        obj._s, obj._n, obj._d = self._s + o._s, n, d
        return obj

    __rmul__ = __mul__

    def inverse(self) -> QRational:
        if self._n.is_zero():
            raise DomainError("inversion of zero in Q(q)")
        return QRational._raw(-self._s, self._d, self._n)

    def __truediv__(self, other: Any) -> QRational:
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> QRational:
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> QRational:
        if k < 0:
            return self.inverse() ** (-k)
        if self._n.is_zero():
            return _ONE if k == 0 else _ZERO
        obj = QRational.__new__(QRational)
        obj._s, obj._n, obj._d = self._s * k, self._n**k, self._d**k
        return obj

    # -- evaluation ---------------------------------------------------------------
    def evaluate(self, q_value: Fraction | int) -> Fraction:
        """Substitute a rational number for q."""
        x = flint.fmpq(Fraction(q_value).numerator, Fraction(q_value).denominator)
        if self._n.is_zero():
            return Fraction(0)
        if x == 0:
            if self._s < 0:
                raise BadSpecializationError("pole at q = 0")
            if self._s > 0:
                return Fraction(0)
            return Fraction(int(self._n.coeffs()[0]), int(self._d.coeffs()[0]))
        den = self._d(x)
        if den == 0:
            raise BadSpecializationError(f"denominator {self.denominator} vanishes at q = {q_value}")
        val = self._n(x) / den * x**self._s
        return Fraction(int(val.p), int(val.q))

    def at_one(self) -> Fraction:
        """Exact limit as q -> 1, cancelling (q - 1) factors."""
        n, d = self._n, self._d
        while d(1) == 0:
            if n(1) != 0:
                raise PoleAtOneError(f"{self} has a pole at q = 1")
            n = n // _Q_MINUS_ONE
            d = d // _Q_MINUS_ONE
        return Fraction(int(n(1)), int(d(1)))

    def bar(self) -> QRational:
        """Image under the involution q -> 1/q."""
        if self._n.is_zero():
            return self
        shift = -self._s - self._n.degree() + self._d.degree()
        return QRational._raw(shift, _reverse(self._n), _reverse(self._d))

    # -- serialization ----------------------------------------------------------
    def to_json(self) -> dict[str, dict[str, str]]:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> QRational:
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __str__(self) -> str:
        num = str(self.numerator)
        if self._d.is_one():
            return num
        den = str(self.denominator)
        if sum(1 for c in self._n.coeffs() if c) > 1:
            num = f"({num})"
        if sum(1 for c in self._d.coeffs() if c) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"QRational({self})"

    def is_single_term(self) -> bool:
        return self._d.is_one() and sum(1 for c in self._n.coeffs() if c) == 1

    def leading_sign(self) -> int:
        """Sign of the numerator's highest coefficient (0 for zero)."""
        if self._n.is_zero():
            return 0
        return 1 if self._n.leading_coefficient() > 0 else -1


def _cancel(n: flint.fmpz_poly, d: flint.fmpz_poly) -> tuple[flint.fmpz_poly, flint.fmpz_poly]:
    if d.is_one():
        return n, d
    g = n.gcd(d)
    if g.is_one():
        return n, d
    return n // g, d // g


def _as_flint_pair(value: Any) -> tuple[int, flint.fmpz_poly]:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return 0, flint.fmpz_poly([value]) if value else _FZERO
    if isinstance(value, LaurentPoly):
        return value.to_flint()
    if isinstance(value, Mapping):
        return LaurentPoly(value).to_flint()
    raise TypeError(f"cannot build a Laurent polynomial from {type(value).__name__}")


_ZERO = QRational(0)
_ONE = QRational(1)


@lru_cache(maxsize=None)
def _q_power(k: int) -> QRational:
    return QRational._raw(k, _FONE, _FONE)


@lru_cache(maxsize=4096)
def _from_int(n: int) -> QRational:
    return QRational(n)


def _coerce(x: Any) -> QRational:
    if isinstance(x, QRational):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return _from_int(x)
    if isinstance(x, Fraction):
        return QRational(x.numerator, x.denominator)
    if isinstance(x, LaurentPoly):
        return QRational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QRational")


class _QNamespace:
    """Convenience constants: ``Q.q``, ``Q.zero``, ``Q.one``, ``Q(3)``."""

    zero = _ZERO
    one = _ONE
    q = _q_power(1)

    def __call__(self, x: Any) -> QRational:
        return _coerce(x)


Q = _QNamespace()


def qr_add(a: QRational, b: QRational) -> QRational:
    return _coerce(a) + _coerce(b)


def qr_mul(a: QRational, b: QRational) -> QRational:
    return _coerce(a) * _coerce(b)


def qr_neg(a: QRational) -> QRational:
    return -_coerce(a)


def qr_inv(a: QRational) -> QRational:
    return _coerce(a).inverse()


def qr_eval_at_one(a: QRational) -> Fraction:
    return _coerce(a).at_one()


# ---------------------------------------------------------------------------
# dense univariate polynomials over a coefficient ring


class DensePoly:
    """Univariate polynomial with an ascending tuple of ring coefficients.

    Subclasses fix the coefficient ring through :meth:`_coerce`. The zero
    polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)
    var: ClassVar[str] = "x"

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = [self._coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Any, ...] = tuple(cs)

    @classmethod
    def _coerce(cls, c: Any) -> Any:
        raise NotImplementedError

    @classmethod
    def _zero_coeff(cls) -> Any:
        return cls._coerce(0)

    @classmethod
    def _wrap(cls, cs: list[Any]):
        obj = cls.__new__(cls)
        while cs and not cs[-1]:
            cs.pop()
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def constant(cls, c: Any):
        return cls([c])

    @classmethod
    def gen(cls):
        """The indeterminate itself."""
        return cls([0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Any:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero_coeff()

    def leading(self) -> Any:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DensePoly):
            if type(other) is not type(self):
                return NotImplemented
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == type(self).constant(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coeffs))

    def _lift(self, other: Any):
        if type(other) is type(self):
            return other
        if isinstance(other, DensePoly) and not self._accepts(other):
            raise TypeError
        return type(self).constant(other)

    def _accepts(self, other: DensePoly) -> bool:
        try:
            self._coerce(other)
        except TypeError:
            return False
        return True

    def __add__(self, other: Any):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other: Any):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any):
        return (-self) + other

    def __mul__(self, other: Any):
        if type(other) is type(self):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return self._wrap([])
            out = [self._zero_coeff()] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
            return self._wrap(out)
        try:
            if isinstance(other, DensePoly) and not self._accepts(other):
                return NotImplemented
            c = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return self._wrap([])
        return self._wrap([x * c for x in self.coeffs])

    def __rmul__(self, other: Any):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = type(self).constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x: Any) -> Any:
        acc = self._zero_coeff()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return self._wrap([c * i for i, c in enumerate(self.coeffs)][1:])

    def taylor_shift(self, c: Any):
        """Return p(x + c)."""
        step = type(self)([c, 1])
        acc = self._wrap([])
        for a in reversed(self.coeffs):
            acc = acc * step + type(self).constant(a)
        return acc

    def __divmod__(self, other: Any):
        o = self._lift(other)
        if not o:
            raise DomainError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return self._wrap([]), self
        quo = [self._zero_coeff()] * (dq + 1)
        lead = o.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1]
            if not c:
                continue
            t = c / lead
            quo[k] = t
            for i, y in enumerate(o.coeffs):
                rem[k + i] = rem[k + i] - t * y
        return self._wrap(quo), self._wrap(rem[: len(o.coeffs) - 1])

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else _fmt_power(self.var, i)
            parts.append(_coeff_term(c, mono))
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


def _coeff_term(c: Any, mono: str) -> str:
    """Render ``c*mono`` with parentheses where the coefficient needs them."""
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    if isinstance(c, QRational) and c.leading_sign() < 0:
        return "-" + _coeff_term(-c, mono)
    text = str(c)
    simple = isinstance(c, (int, Fraction)) or (isinstance(c, QRational) and c.is_single_term())
    if not simple:
        text = f"({text})"
    return f"{text}*{mono}"


class AlphaPolynomial(DensePoly):
    """Polynomial in alpha with coefficients in Q(q)."""

    __slots__ = ()
    var = "alpha"

    @classmethod
    def _coerce(cls, c: Any) -> QRational:
        return _coerce(c)

    @classmethod
    def _zero_coeff(cls) -> QRational:
        return _ZERO

    def evaluate(self, alpha: Any) -> QRational:
        """Substitute alpha by an element of Q(q) (or a rational number)."""
        return self(_coerce(alpha))

    def specialize(self, q_value: Fraction | int, alpha_value: Fraction | int) -> Fraction:
        acc = Fraction(0)
        a = Fraction(alpha_value)
        for c in reversed(self.coeffs):
            acc = acc * a + c.evaluate(q_value)
        return acc

    def at_q_one(self) -> RationalPolynomial:
        return RationalPolynomial([c.at_one() for c in self.coeffs])

    def to_json(self) -> list[dict[str, dict[str, str]]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, Any]]) -> AlphaPolynomial:
        return cls([QRational.from_json(c) for c in data])


class RationalPolynomial(DensePoly):
    """Polynomial in alpha with rational coefficients (the q = 1 world)."""

    __slots__ = ()
    var = "alpha"

    @classmethod
    def _coerce(cls, c: Any) -> Fraction:
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return Fraction(c)
        raise TypeError(f"cannot coerce {type(c).__name__} to Fraction")

    @classmethod
    def _zero_coeff(cls) -> Fraction:
        return Fraction(0)


def alpha_divide_exact(p: DensePoly, d: DensePoly) -> DensePoly:
    """Quotient ``p / d``; raises :class:`DivisibilityError` on a remainder."""
    if not d:
        raise DomainError("division by the zero polynomial")
    quo, rem = divmod(p, d)
    if rem:
        raise DivisibilityError(f"{d} does not divide {p}: remainder {rem}")
    return quo
