"""q-integers, q-factorials, q-binomials, Pochhammer symbols, and the
classical q-identities that the decomposition machinery leans on.

All q-analogues use the balanced convention ``[n] = (q^n - q^-n)/(q - q^-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .errors import DomainError
from .scalar_field import Q, DensePoly, QRational

__all__ = [
    "q_int",
    "q_factorial",
    "q_binomial",
    "rising_factorial",
    "q_rising_factorial",
    "PermutationStats",
    "inversion_statistics",
    "q_binomial_theorem_rhs_exponent",
    "verify_q_binomial_theorem",
    "verify_q_chu_vandermonde",
    "elementary_symmetric_q_identity",
]


@lru_cache(maxsize=None)
def q_int(n: int) -> QRational:
    """[n] as a Laurent polynomial: q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        return -q_int(-n)
    return QRational({n - 1 - 2 * i: 1 for i in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QRational:
    if n < 0:
        raise DomainError(f"q_factorial of negative integer {n}")
    if n == 0:
        return Q.one
    return q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def q_binomial(x: int, k: int) -> QRational:
    """Generalized q-binomial ``prod_{i<k} [x - i] / [k]!``.

    The product form is used for every integer ``x``; it vanishes for
    ``0 <= x < k`` and gives e.g. ``q_binomial(-1, 1) == -1``.
    """
    if k < 0:
        raise DomainError(f"q_binomial lower index must be nonnegative, got {k}")
    num = Q.one
    for i in range(k):
        num = num * q_int(x - i)
        if not num:
            return Q.zero
    return num / q_factorial(k)


def rising_factorial(a: int, i: int) -> int:
    """Pochhammer symbol (a)_i = a (a+1) ... (a+i-1)."""
    if i < 0:
        raise DomainError(f"rising factorial length must be nonnegative, got {i}")
    return prod(range(a, a + i))


@lru_cache(maxsize=None)
def q_rising_factorial(a: int, i: int) -> QRational:
    """q-Pochhammer symbol [a]_i = [a][a+1]...[a+i-1]."""
    if i < 0:
        raise DomainError(f"rising factorial length must be nonnegative, got {i}")
    out = Q.one
    for t in range(a, a + i):
        out = out * q_int(t)
    return out


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class PermutationStats:
    """A permutation of {1..n} in one-line notation with its statistics.

    ``inv`` counts pairs i < j with sigma(i) > sigma(j); ``nu`` is
    n minus the number of cycles.
    """

    permutation: tuple[int, ...]
    inv: int
    nu: int

    @property
    def n(self) -> int:
        return len(self.permutation)


def _check_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(int(s) for s in sigma)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise DomainError(f"{list(sigma)} is not a permutation of 1..{len(perm)}")
    return perm


def inversion_statistics(sigma: Sequence[int]) -> PermutationStats:
    perm = _check_permutation(sigma)
    n = len(perm)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i] - 1
    return PermutationStats(perm, inv, n - cycles)


# ---------------------------------------------------------------------------
# identity checks


class _XYPoly(DensePoly):
    """Binary form of fixed degree in commuting x, y, indexed by the y-degree."""

    __slots__ = ()
    var = "y"

    @classmethod
    def _coerce(cls, c):
        return Q(c)

    @classmethod
    def _zero_coeff(cls):
        return Q.zero


def q_binomial_theorem_rhs_exponent(n: int, r: int, *, printed: bool = False) -> int:
    """Power of q multiplying [n choose r] x^r y^(n-r).

    The correct exponent is (n-r)(n+1); it is the one that reproduces
    g_j(z) = sum_i q^(j(j-i)) [j choose i] (z-q)^i. ``printed=True`` gives
    the misprinted (n-r)(r+1), kept only so the discrepancy can be shown.
    """
    return (n - r) * (r + 1) if printed else (n - r) * (n + 1)


def verify_q_binomial_theorem(n: int, *, printed: bool = False) -> bool:
    """Expand prod_{i=1}^n (x + y q^{2i}) and compare with the q-binomial sum."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    lhs = _XYPoly.constant(1)
    for i in range(1, n + 1):
        lhs = lhs * _XYPoly([Q.one, Q.q ** (2 * i)])
    # x^r y^(n-r) is stored at y-degree n - r
    rhs = _XYPoly(
        [
            Q.q ** q_binomial_theorem_rhs_exponent(n, n - t, printed=printed) * q_binomial(n, n - t)
            for t in range(n + 1)
        ]
    )
    return lhs == rhs


def verify_q_chu_vandermonde(x: int, y: int, n: int) -> bool:
    if min(x, y, n) < 0:
        raise DomainError("q-Chu-Vandermonde is checked for nonnegative integers only")
    lhs = Q.zero
    for r in range(n + 1):
        lhs = lhs + Q.q ** (-r * (x + y)) * q_binomial(x, n - r) * q_binomial(y, r)
    return lhs == Q.q ** (-n * y) * q_binomial(x + y, n)


def elementary_symmetric_q_identity(j: int, r: int) -> bool:
    """e_r(1, q^2, ..., q^(2j-2)) == q^(r(j-1)) [j choose r], by expansion."""
    if j < 1 or not 0 <= r <= j:
        raise DomainError(f"need j >= 1 and 0 <= r <= j, got j={j}, r={r}")
    # sum over r-subsets of {0..j-1} of q^(2 * sum)
    exps: dict[int, int] = {}
    for subset in combinations(range(j), r):
        e = 2 * sum(subset)
        exps[e] = exps.get(e, 0) + 1
    assert sum(exps.values()) == comb(j, r)
    return QRational(exps) == Q.q ** (r * (j - 1)) * q_binomial(j, r)
