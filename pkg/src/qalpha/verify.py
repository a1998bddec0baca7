"""Named verification checks grouped into suites, used by ``qalpha verify``."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from . import decomposition as dec
from . import hypergeometric as hg
from . import q_combinatorics as qc
from .quantum_matrix_algebra import (
    NCPolynomial,
    quantum_alpha_det,
    reduce_word,
    verify_stepping_relations,
    word_normal_form,
    x2z_product,
)
from .scalar_field import AlphaPolynomial, Q
from .uq_module_action import (
    act_e,
    act_f,
    act_k,
    act_k_inv,
    action_compatibility_table,
    cyclic_span_dimension,
)

SUITES = ("identities", "lemmas", "routes", "action", "spans")
DEFAULT_SEED = 1729


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def random_nc_polynomial(
    rng: random.Random, max_degree: int = 6, max_terms: int = 4, with_alpha: bool = True
) -> NCPolynomial:
    """Random element with small coefficients c q^k (optionally times alpha)."""
    terms: dict[tuple[int, ...], AlphaPolynomial] = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, deg) for _ in range(3))
        mono = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], deg - cuts[2])
        c = Q(rng.choice([-3, -2, -1, 1, 2, 3])) * Q.q ** rng.randint(-2, 2)
        coeff = AlphaPolynomial([0, c]) if with_alpha and rng.random() < 0.3 else AlphaPolynomial([c])
        terms[mono] = terms.get(mono, AlphaPolynomial()) + coeff
    p = NCPolynomial(terms)
    return p if p else NCPolynomial.scalar(1)


def _failures(items: list[tuple[str, bool]]) -> tuple[bool, str]:
    bad = [label for label, ok in items if not ok]
    if bad:
        return False, "failed: " + ", ".join(bad[:10]) + (" ..." if len(bad) > 10 else "")
    return True, f"{len(items)} cases"


# identities ------------------------------------------------------------------


def check_q_binomial_theorem(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures([(f"n={n}", qc.verify_q_binomial_theorem(n)) for n in range(max_m + 3)])


def check_q_chu_vandermonde(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures(
        [
            (f"({x},{y},{n})", qc.verify_q_chu_vandermonde(x, y, n))
            for x in range(max_m + 1)
            for y in range(max_m + 1)
            for n in range(x + y + 1)
        ]
    )


def check_elementary_symmetric(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures(
        [(f"({j},{r})", qc.elementary_symmetric_q_identity(j, r)) for j in range(1, max_m + 1) for r in range(j + 1)]
    )


def check_inverse_matrix_lemma(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures([(f"m={m}", dec.inverse_matrix_lemma_check(m)) for m in range(max_m + 1)])


def check_q_limits(max_m: int, seed: int) -> tuple[bool, str]:
    items = []
    for n in range(11):
        items.append((f"[{n}]", qc.q_int(n).at_one() == n))
        for k in range(n + 1):
            b = qc.q_binomial(n, k)
            items.append((f"({n},{k}) at 1", b.at_one() == comb(n, k)))
            items.append((f"({n},{k}) symmetric", b == qc.q_binomial(n, n - k) and b == b.bar()))
    return _failures(items)


# lemmas ------------------------------------------------------------------------


def check_f_action(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures(
        [(f"j={j}", dec.f_action_closed_form(j) == dec.f_action_by_operator(j)) for j in range(max_m + 1)]
    )


def check_x2z(max_m: int, seed: int) -> tuple[bool, str]:
    items = [("stepping relations", verify_stepping_relations())]
    for l in range(max_m + 1):
        lhs, rhs = x2z_product(l)
        items.append((f"l={l}", lhs == rhs))
    return _failures(items)


def check_v_poly(max_m: int, seed: int) -> tuple[bool, str]:
    items = []
    for j in range(max_m + 1):
        try:
            dec.v_poly(j)
            dec.g_poly(j)
            items.append((f"j={j}", True))
        except AssertionError:
            items.append((f"j={j}", False))
    return _failures(items)


# routes ------------------------------------------------------------------------


def check_three_routes(max_m: int, seed: int) -> tuple[bool, str]:
    items = []
    for m in range(max_m + 1):
        tri = dec.solve_F_triangular(m)
        lin = dec.solve_F_linear_oracle(m)
        key = dec.Q_from_key_relation(m)
        closed = tuple(hg.closed_form_F(m, s) for s in range(m + 1))
        items.append((f"m={m}", tri.F == lin.F == key.F == closed and tri.Q == lin.Q == key.Q))
    return _failures(items)


def check_divisibility(max_m: int, seed: int) -> tuple[bool, str]:
    items = []
    for m in range(max_m + 1):
        table = dec.solve_F_triangular(m)
        for j, f in enumerate(table.F):
            try:
                q = dec.alpha_divide_exact(f, hg.ONE_PLUS_ALPHA**j)
                items.append((f"({m},{j})", q == table.Q[j]))
            except ArithmeticError:
                items.append((f"({m},{j})", False))
    return _failures(items)


def check_reconstruction(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures([(f"m={m}", dec.reconstruct_z(dec.solve_F_triangular(m))) for m in range(max_m + 1)])


def check_derivative_relation(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures([(f"m={m}", dec.derivative_relation_check(m)) for m in range(min(max_m, 5) + 1)])


def check_classical_limit(max_m: int, seed: int) -> tuple[bool, str]:
    items = []
    for m in range(min(max_m, 6) + 1):
        for s in range(m + 1):
            ok = hg.closed_form_F(m, s).at_q_one() == hg.classical_F(m, s)
            items.append((f"({m},{s})", ok))
        try:
            hg.eq1_proportionality_check(m)
            items.append((f"c_{m}", True))
        except AssertionError:
            items.append((f"c_{m}", False))
    return _failures(items)


# action ------------------------------------------------------------------------


def check_action_well_defined(max_m: int, seed: int) -> tuple[bool, str]:
    table = action_compatibility_table()
    return _failures([(f"{g}: {rel}", ok) for (g, rel), ok in sorted(table.items())])


def check_operator_relations(max_m: int, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    inv_lambda = (Q.q - Q.q**-1).inverse()
    items = []
    for i in range(100):
        p = random_nc_polynomial(rng)
        ok = (
            act_k(act_e(act_k_inv(p))) == act_e(p) * Q.q**2
            and act_k(act_f(act_k_inv(p))) == act_f(p) * Q.q**-2
            and act_e(act_f(p)) - act_f(act_e(p)) == (act_k(p) - act_k_inv(p)) * inv_lambda
            and act_k_inv(act_k(p)) == p
        )
        items.append((f"sample {i}", ok))
    return _failures(items)


def check_leibniz(max_m: int, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed + 1)
    items = []
    for i in range(50):
        u = random_nc_polynomial(rng, max_degree=3)
        v = random_nc_polynomial(rng, max_degree=3)
        ok = act_f(u * v) == act_f(u) * act_k_inv(v) + u * act_f(v)
        ok = ok and act_e(u * v) == act_e(u) * v + act_k(u) * act_e(v)
        items.append((f"pair {i}", ok))
    return _failures(items)


def check_confluence(max_m: int, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed + 2)
    items = []
    for i in range(200):
        w = [rng.randrange(4) for _ in range(rng.randint(0, 8))]
        left = reduce_word(w, "leftmost")
        items.append((f"word {w}", left == reduce_word(w, "rightmost") == word_normal_form(w)))
    return _failures(items)


def check_module_identity(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures(
        [(f"m={m}", dec.module_identity_check(m, use_operator=True)) for m in range(min(max_m, 5) + 1)]
    )


def check_highest_weight_ladder(max_m: int, seed: int) -> tuple[bool, str]:
    return _failures(
        [
            (f"({m},{j})", all(dec.highest_weight_ladder(m, j)))
            for m in range(min(max_m, 4) + 1)
            for j in range(m + 1)
        ]
    )


# spans -------------------------------------------------------------------------


def check_span_dimensions(max_m: int, seed: int) -> tuple[bool, str]:
    items = []
    det = quantum_alpha_det()
    for m in range(min(max_m, 3) + 1):
        p = det**m
        for q_value in (Fraction(2), Fraction(3)):
            for label, alpha in (("0", 0), ("1", 1), ("-1", -1), ("q^-2", Q.q**-2)):
                expected = dec.decomposition_report(m, alpha).total_dimension
                ok = cyclic_span_dimension(p, q_value, alpha) == expected
                items.append((f"m={m} q={q_value} alpha={label}", ok))
    return _failures(items)


CHECKS: dict[str, tuple[str, Callable[[int, int], tuple[bool, str]]]] = {
    "identities.elementary_symmetric": ("identities", check_elementary_symmetric),
    "identities.inverse_matrix_lemma": ("identities", check_inverse_matrix_lemma),
    "identities.q_binomial_theorem": ("identities", check_q_binomial_theorem),
    "identities.q_chu_vandermonde": ("identities", check_q_chu_vandermonde),
    "identities.q_limits": ("identities", check_q_limits),
    "lemmas.f_action": ("lemmas", check_f_action),
    "lemmas.v_poly": ("lemmas", check_v_poly),
    "lemmas.x2z_product": ("lemmas", check_x2z),
    "routes.classical_limit": ("routes", check_classical_limit),
    "routes.derivative_relation": ("routes", check_derivative_relation),
    "routes.divisibility": ("routes", check_divisibility),
    "routes.reconstruction": ("routes", check_reconstruction),
    "routes.three_way_agreement": ("routes", check_three_routes),
    "action.confluence": ("action", check_confluence),
    "action.highest_weight_ladder": ("action", check_highest_weight_ladder),
    "action.leibniz": ("action", check_leibniz),
    "action.module_identity": ("action", check_module_identity),
    "action.operator_relations": ("action", check_operator_relations),
    "action.well_defined": ("action", check_action_well_defined),
    "spans.dimension": ("spans", check_span_dimensions),
}


def run_check(name: str, max_m: int, seed: int) -> CheckResult:
    _, fn = CHECKS[name]
    start = time.perf_counter()
    try:
        passed, detail = fn(max_m, seed)
    except Exception as exc:  # a crash is reported as a failed check
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, passed, detail, round(time.perf_counter() - start, 4))


def checks_for(suite: str) -> list[str]:
    if suite == "all":
        return sorted(CHECKS)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return sorted(n for n, (s, _) in CHECKS.items() if s == suite)


def run_suite(suite: str, max_m: int, seed: int = DEFAULT_SEED, jobs: int = 1) -> list[CheckResult]:
    names = checks_for(suite)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_check, names, [max_m] * len(names), [seed] * len(names)))
    else:
        results = [run_check(n, max_m, seed) for n in names]
    return sorted(results, key=lambda r: r.name)


def summary(suite: str, max_m: int, seed: int, results: list[CheckResult]) -> dict:
    return {
        "suite": suite,
        "max_m": max_m,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
