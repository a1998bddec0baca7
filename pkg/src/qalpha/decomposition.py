"""Irreducible decomposition of the cyclic module generated by (det_alpha)^m.

(det_alpha)^m = sum_j F_{m,j}(alpha) v_{m,j} with
v_{m,j} = (f^j . (x11 x21)^j) det_q^(m-j). The transition polynomials F are
computed three independent ways:

* :func:`solve_F_triangular` - back-substitution in the (z - q) basis after
  specializing z1 = z, z2 = 1;
* :func:`solve_F_linear_oracle` - a dense linear solve inside A_q(Mat_2);
* :func:`Q_from_key_relation` - inverting the key relation with the explicit
  inverse of the generalized q-binomial matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any, Iterator, Sequence

from .errors import ConsistencyError, DomainError
from .hypergeometric import ONE_PLUS_ALPHA, closed_form_Q
from .q_combinatorics import q_binomial, q_factorial, q_int
from .quantum_matrix_algebra import (
    NCPolynomial,
    generator,
    nc_power,
    quantum_alpha_det,
    quantum_det,
)
from .scalar_field import AlphaPolynomial, DensePoly, Q, QRational, alpha_divide_exact
from .uq_module_action import act_e, act_f

__all__ = [
    "ZPolynomial",
    "FTable",
    "f_action_closed_form",
    "f_action_by_operator",
    "g_poly",
    "v_poly",
    "v_shifted_coeff",
    "v_mj",
    "solve_F_triangular",
    "solve_F_linear_oracle",
    "Q_from_key_relation",
    "lemma_matrices",
    "inverse_matrix_lemma_check",
    "reduced_sum_identity",
    "DecompositionRow",
    "DecompositionReport",
    "decomposition_report",
    "reconstruct_z",
    "module_identity_check",
    "derivative_relation_check",
    "highest_weight_ladder",
]


class ZPolynomial(DensePoly):
    """Polynomial in z with coefficients in Q(q)[alpha]."""

    __slots__ = ()
    var = "z"

    @classmethod
    def _coerce(cls, c: Any) -> AlphaPolynomial:
        if isinstance(c, AlphaPolynomial):
            return c
        if isinstance(c, DensePoly):
            raise TypeError(f"cannot coerce {type(c).__name__} to AlphaPolynomial")
        return AlphaPolynomial([Q(c)])

    @classmethod
    def _zero_coeff(cls) -> AlphaPolynomial:
        return AlphaPolynomial()

    def shifted_coeffs(self, c: Any) -> tuple[AlphaPolynomial, ...]:
        """Coefficients in the basis (z - c)^i."""
        return self.taylor_shift(c).coeffs


_W = ZPolynomial.gen()


def _check_m(m: int) -> None:
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")


# f^j (x11 x21)^j ------------------------------------------------------------


@lru_cache(maxsize=None)
def f_action_closed_form(j: int) -> NCPolynomial:
    """q^(-j(j-1)/2) [j]! sum_r q^(-r^2) [j r]^2 x11^(j-r) x22^(j-r) (x12 x21)^r."""
    _check_m(j)
    x11, x12, x21, x22 = (generator(g) for g in ("x11", "x12", "x21", "x22"))
    total = NCPolynomial()
    for r in range(j + 1):
        term = x11 ** (j - r) * x22 ** (j - r) * (x12 * x21) ** r
        total = total + term * (Q.q ** (-r * r) * q_binomial(j, r) ** 2)
    return total * (Q.q ** (-(j * (j - 1) // 2)) * q_factorial(j))


@lru_cache(maxsize=None)
def f_action_by_operator(j: int) -> NCPolynomial:
    """f^j . (x11 x21)^j by repeated application of the U_q action."""
    _check_m(j)
    v = nc_power(generator("x11") * generator("x21"), j)
    for _ in range(j):
        v = act_f(v)
    return v


def v_mj(m: int, j: int, *, use_operator: bool = False) -> NCPolynomial:
    if not 0 <= j <= m:
        raise DomainError(f"need 0 <= j <= m, got m={m}, j={j}")
    head = f_action_by_operator(j) if use_operator else f_action_closed_form(j)
    return head * _det_q_power(m - j)


@lru_cache(maxsize=None)
def _det_q_power(k: int) -> NCPolynomial:
    return nc_power(quantum_det(), k)


@lru_cache(maxsize=None)
def _det_alpha_power(m: int) -> NCPolynomial:
    return nc_power(quantum_alpha_det(), m)


# z-specialization ------------------------------------------------------------


@lru_cache(maxsize=None)
def g_poly(j: int) -> ZPolynomial:
    """g_j(z) = prod_{i=1}^j (z + q^(2i-1) - q)."""
    _check_m(j)
    out = ZPolynomial.constant(1)
    for i in range(1, j + 1):
        out = out * ZPolynomial([Q.q ** (2 * i - 1) - Q.q, 1])
    expected = [Q.q ** (j * (j - i)) * q_binomial(j, i) for i in range(j + 1)]
    if list(out.shifted_coeffs(Q.q)) != [AlphaPolynomial([c]) for c in expected]:
        raise ConsistencyError(f"(z-q)-expansion of g_{j} disagrees with the q-binomial theorem")
    return out


@lru_cache(maxsize=None)
def v_shifted_coeff(j: int, i: int) -> QRational:
    """Coefficient of (z - q)^i in v_j: q^-C(j,2) [j]! [2j-i]! / ([i]! [j-i]!^2)."""
    if not 0 <= i <= j:
        return Q.zero
    return (
        Q.q ** (-comb(j, 2))
        * q_factorial(j)
        * q_factorial(2 * j - i)
        / (q_factorial(i) * q_factorial(j - i) ** 2)
    )


@lru_cache(maxsize=None)
def v_poly(j: int) -> ZPolynomial:
    """v_j(z), computed from g_{j-r} and from the closed (z - q)-expansion."""
    _check_m(j)
    by_definition = ZPolynomial()
    for r in range(j + 1):
        by_definition = by_definition + g_poly(j - r) * (Q.q ** (-r * r) * q_binomial(j, r) ** 2)
    by_definition = by_definition * (Q.q ** (-(j * (j - 1) // 2)) * q_factorial(j))
    closed = ZPolynomial([v_shifted_coeff(j, i) for i in range(j + 1)]).taylor_shift(-Q.q)
    if by_definition != closed:
        raise ConsistencyError(f"the two expressions for v_{j}(z) disagree")
    return by_definition


# F tables --------------------------------------------------------------------


@dataclass(frozen=True)
class FTable:
    """F_{m,j} and Q_{m,j} = F_{m,j} / (1+alpha)^j for j = 0..m."""

    m: int
    F: tuple[AlphaPolynomial, ...]
    Q: tuple[AlphaPolynomial, ...]

    @classmethod
    def from_F(cls, m: int, F: Sequence[AlphaPolynomial]) -> FTable:
        Qs = tuple(alpha_divide_exact(f, ONE_PLUS_ALPHA**j) for j, f in enumerate(F))
        return cls(m, tuple(F), Qs)

    @classmethod
    def from_Q(cls, m: int, Qs: Sequence[AlphaPolynomial]) -> FTable:
        return cls(m, tuple(ONE_PLUS_ALPHA**j * qq for j, qq in enumerate(Qs)), tuple(Qs))

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "entries": [
                {"j": j, "F": self.F[j].to_json(), "Q": self.Q[j].to_json()} for j in range(self.m + 1)
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> FTable:
        entries = sorted(data["entries"], key=lambda e: e["j"])
        m = int(data["m"])
        if [e["j"] for e in entries] != list(range(m + 1)):
            raise DomainError(f"FTable for m={m} must have entries j = 0..{m}")
        return cls(
            m,
            tuple(AlphaPolynomial.from_json(e["F"]) for e in entries),
            tuple(AlphaPolynomial.from_json(e["Q"]) for e in entries),
        )


@lru_cache(maxsize=None)
def solve_F_triangular(m: int) -> FTable:
    """Solve (z + q alpha)^m = sum_j F_j v_j(z) (z - q)^(m-j) by back-substitution.

    Matching coefficients of (z - q)^l for l = 0..m:
    C(m, l) (q(1+alpha))^(m-l) = sum_{s<=l} F_{m-s} c_{m-s, l-s},
    with c_{j,i} the (z - q)-coefficients of v_j.
    """
    _check_m(m)
    c = {j: v_poly(j).shifted_coeffs(Q.q) for j in range(m + 1)}
    qa = ONE_PLUS_ALPHA * Q.q
    F: dict[int, AlphaPolynomial] = {}
    for l in range(m + 1):
        acc = qa ** (m - l) * comb(m, l)
        for s in range(l):
            coeff = c[m - s][l - s] if l - s < len(c[m - s]) else AlphaPolynomial()
            acc = acc - F[m - s] * coeff
        pivot = c[m - l][0]
        if pivot.degree() != 0:
            raise ConsistencyError(f"pivot for j={m - l} is not a nonzero element of Q(q)")
        F[m - l] = acc * pivot.coeffs[0].inverse()
    return FTable.from_F(m, [F[j] for j in range(m + 1)])


def _solve_dense(matrix: list[list[QRational]], rhs: list[AlphaPolynomial]) -> list[AlphaPolynomial]:
    n = len(matrix)
    a = [row[:] for row in matrix]
    b = rhs[:]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ConsistencyError("singular matrix: the v_{m,j} are not a basis")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        b[col] = b[col] * inv
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                b[r] = b[r] - b[col] * factor
    return b


@lru_cache(maxsize=None)
def solve_F_linear_oracle(m: int) -> FTable:
    """Expand (det_alpha)^m in the v_{m,j} inside A_q(Mat_2) by a dense solve.

    Every v_{m,j} and (det_alpha)^m lies in the commutative subalgebra of
    degree-m forms in z1, z2; in normal order that space is spanned by the
    monomials x11^(m-t) x12^t x21^t x22^(m-t), which index the rows.
    """
    _check_m(m)
    rows = [(m - t, t, t, m - t) for t in range(m + 1)]
    row_set = set(rows)
    columns = [v_mj(m, j) for j in range(m + 1)]
    target = _det_alpha_power(m)
    for p in (*columns, target):
        stray = set(p.terms) - row_set
        if stray:
            raise ConsistencyError(f"element leaves the z1, z2 subalgebra: {sorted(stray)}")
    matrix = []
    for mono in rows:
        row = []
        for col in columns:
            c = col.coefficient(mono)
            if c.degree() > 0:
                raise ConsistencyError("v_{m,j} must not depend on alpha")
            row.append(c[0])
        matrix.append(row)
    rhs = [target.coefficient(mono) for mono in rows]
    return FTable.from_F(m, _solve_dense(matrix, rhs))


# key relation and the inverse-matrix lemma ---------------------------------


def lemma_matrices(m: int) -> tuple[list[list[QRational]], list[list[QRational]]]:
    """A = ([2i-2m-1, i-j]) and its claimed inverse B, both (m+1) x (m+1)."""
    _check_m(m)
    A = [[q_binomial(2 * i - 2 * m - 1, i - j) if j <= i else Q.zero for j in range(m + 1)] for i in range(m + 1)]
    B = [
        [
            q_int(2 * m - 2 * i + 1) / q_int(2 * m - 2 * j + 1) * q_binomial(2 * m - 2 * j + 1, i - j)
            if j <= i
            else Q.zero
            for j in range(m + 1)
        ]
        for i in range(m + 1)
    ]
    return A, B


def _matmul(X: list[list[QRational]], Y: list[list[QRational]]) -> list[list[QRational]]:
    n = len(X)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Q.zero
            for k in range(n):
                if X[i][k] and Y[k][j]:
                    acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


def reduced_sum_identity(d: int, n: int) -> bool:
    """sum_r [2n+1-2r] [2d-(2n+1), d-r] [2n+1, r] == 0 for 0 < d <= n."""
    if not 0 < d <= n:
        raise DomainError(f"need 0 < d <= n, got d={d}, n={n}")
    total = Q.zero
    for r in range(d + 1):
        total = total + q_int(2 * n + 1 - 2 * r) * q_binomial(2 * d - 2 * n - 1, d - r) * q_binomial(2 * n + 1, r)
    return not total


def inverse_matrix_lemma_check(m: int) -> bool:
    A, B = lemma_matrices(m)
    n = m + 1
    eye = [[Q.one if i == j else Q.zero for j in range(n)] for i in range(n)]
    if _matmul(A, B) != eye or _matmul(B, A) != eye:
        return False
    return all(reduced_sum_identity(d, k) for k in range(1, m + 1) for d in range(1, k + 1))


@lru_cache(maxsize=None)
def Q_from_key_relation(m: int, method: str = "inverse") -> FTable:
    """Q_{m,j} from the key relation.

    ``method="inverse"`` multiplies the key relation's left side by the
    explicit inverse matrix B; ``method="formula"`` evaluates the resulting
    hypergeometric expression directly.
    """
    _check_m(m)
    if method == "formula":
        return FTable.from_Q(m, [closed_form_Q(m, j) for j in range(m + 1)])
    if method != "inverse":
        raise DomainError(f"unknown method {method!r}")
    _, B = lemma_matrices(m)
    L = [Q.q ** (m - j) * comb(m, j) / q_binomial(2 * m - 2 * j, m - j) for j in range(m + 1)]
    Qs: dict[int, AlphaPolynomial] = {}
    for i in range(m + 1):
        acc = AlphaPolynomial()
        for j in range(i + 1):
            sign = -1 if (i - j) % 2 else 1
            acc = acc + ONE_PLUS_ALPHA ** (i - j) * (B[i][j] * L[j] * sign)
        Qs[m - i] = acc * (Q.q ** comb(m - i, 2) / q_factorial(m - i))
    return FTable.from_Q(m, [Qs[j] for j in range(m + 1)])


# reports and end-to-end checks ---------------------------------------------


@dataclass(frozen=True)
class DecompositionRow:
    j: int
    dimension: int
    value: Any  # AlphaPolynomial when symbolic, QRational when evaluated
    nonzero: bool


@dataclass(frozen=True)
class DecompositionReport:
    m: int
    alpha: Any
    rows: tuple[DecompositionRow, ...]

    @property
    def total_dimension(self) -> int:
        return sum(r.dimension for r in self.rows if r.nonzero)

    @property
    def summands(self) -> list[int]:
        """Dimensions 2j+1 of the irreducible summands that occur."""
        return [r.dimension for r in self.rows if r.nonzero]

    def __iter__(self) -> Iterator[DecompositionRow]:
        return iter(self.rows)


def decomposition_report(m: int, alpha_value: Any = None, table: FTable | None = None) -> DecompositionReport:
    """Which SL(2j+1) occur in the cyclic module at ``alpha_value``.

    ``alpha_value=None`` keeps alpha symbolic; otherwise it may be an integer,
    a ``Fraction`` or a ``QRational`` such as ``q**-2``.
    """
    table = table or solve_F_triangular(m)
    rows = []
    for j, f in enumerate(table.F):
        value = f if alpha_value is None else f.evaluate(alpha_value)
        rows.append(DecompositionRow(j, 2 * j + 1, value, bool(value)))
    return DecompositionReport(m, alpha_value, tuple(rows))


def reconstruct_z(table: FTable) -> bool:
    """sum_j F_j v_j(z) (z - q)^(m-j) == (z + q alpha)^m."""
    m = table.m
    lhs = ZPolynomial()
    z_minus_q = ZPolynomial([-Q.q, 1])
    for j, f in enumerate(table.F):
        lhs = lhs + v_poly(j) * z_minus_q ** (m - j) * f
    rhs = ZPolynomial([AlphaPolynomial([0, Q.q]), 1]) ** m
    return lhs == rhs


def module_identity_check(m: int, table: FTable | None = None, *, use_operator: bool = True) -> bool:
    """(det_alpha)^m == sum_j F_{m,j} (f^j (x11 x21)^j) det_q^(m-j) in A_q(Mat_2)."""
    table = table or solve_F_triangular(m)
    total = NCPolynomial()
    for j, f in enumerate(table.F):
        total = total + v_mj(m, j, use_operator=use_operator) * f
    return total == _det_alpha_power(m)


def derivative_relation_check(m: int, table: FTable | None = None) -> bool:
    """At z = q, the l-th z-derivative of the base identity, for every l <= m.

    C(m, l) q^(m-l) (1+alpha)^(m-l) == sum_{s<=l} F_{m,m-s} v_{m-s}^(l-s)(q) / (l-s)!
    """
    table = table or solve_F_triangular(m)
    for l in range(m + 1):
        lhs = ONE_PLUS_ALPHA ** (m - l) * (Q.q ** (m - l) * comb(m, l))
        rhs = AlphaPolynomial()
        for s in range(l + 1):
            d = v_poly(m - s)
            for _ in range(l - s):
                d = d.derivative()
            rhs = rhs + table.F[m - s] * d(Q.q) * Fraction(1, factorial(l - s))
        if lhs != rhs:
            return False
    return True


def highest_weight_ladder(m: int, j: int) -> tuple[bool, bool]:
    """(e^j v_{m,j} != 0, e^(j+1) v_{m,j} == 0)."""
    v = v_mj(m, j)
    for _ in range(j):
        v = act_e(v)
    return bool(v), not act_e(v)
