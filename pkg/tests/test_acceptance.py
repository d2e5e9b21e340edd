"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from drinfeld.algebra import (make_K, DrinfeldModule, ResidueField, monic_irreducibles, carlitz_D, carlitz_L,
                              drinfeld_action)
from drinfeld.multinomial import (c_formula, skew_power_coeffs, supersingular_test, supersingular_direct,
                                  j_representative, ss_degree4_terms, ss_degree4_expected)
from drinfeld.partitions import enumerate_partitions, rfib, weight_identity_holds
from drinfeld.periods import (analyze, beta_valuation, torsion_basis, periods, frak_f_period, frak_a_identity_check,
                              local_module, residual_valuation, torsion_product_residual, t_log,
                              CASE_ABOVE, CASE_BOUNDARY, CASE_BELOW)
from drinfeld.quadratic import QuadraticDomain
from drinfeld.series import (exp_coeffs_formula, exp_coeffs_recursive, log_coeffs_formula, log_coeffs_recursive,
                             compose_inverse_check, exp_terms, evaluate_exp)
from drinfeld.symbolic import SymbolicDomain


@pytest.fixture
def report(capsys):
    def emit(k, name, ok, detail=''):
        with capsys.disabled():
            print(f'\n[{"PASS" if ok else "FAIL"}] criterion {k}: {name}' + (f' ({detail})' if detail else ''))
        assert ok, detail
    return emit


def monomial(K, v):
    """An element of K with valuation v."""
    return K.one() / K.monomial(1, v) if v > 0 else K.monomial(1, -v)


# tame rank-2 modules covering every case; (q, A, B)
TAME_MODULES = [
    (2, '1', '1'),            # v(j) = 0
    (3, '1', '1'),            # v(j) = 0
    (2, '1', '1/T^2'),        # v(j) = -q
    (3, '1', '1/T^3'),        # v(j) = -q
    (3, 'T+1', '1/T^2'),      # -q^2 < v(j) < -q
    (3, 'T^2+T', 'T^2'),      # -q^2 < v(j) < -q
    (2, 'T+1', '1/T'),        # v(j) = -q^2
    (3, 'T^2+1', '1/T'),      # v(j) = -q^2
    (2, 'T^3+T', 'T^3'),      # v(j) < -q^2
    (3, 'T^3+1', '1'),        # v(j) < -q^2
]


def tame_module(q, A, B):
    K = make_K(q)
    return DrinfeldModule(K, [K(A), K(B)])


def cm_module():
    K = make_K(3)
    R = QuadraticDomain(K, K.parse('T^3 - T - 1'))
    return DrinfeldModule(R, [R.parse('y*(T^3 - T)'), R.one()])


def test_criterion_1_partition_counts(report):
    t = time.perf_counter()
    bad = []
    for r in range(1, 5):
        for n in range(17):
            parts = list(enumerate_partitions(r, n))
            if len(parts) != rfib(r, n) or len(parts) > 2 ** n:
                bad.append(('count', r, n))
            for q in (2, 3):
                if not all(S.is_valid() and weight_identity_holds(S, q) for S in parts):
                    bad.append(('identity', r, n, q))
    secs = time.perf_counter() - t
    report(1, 'partition counts, 2^n bound and weight identity for r <= 4, n <= 16',
           not bad and secs < 10, f'{secs:.2f}s, failures {bad[:3]}')


# The four displays, as (exponents of A_1..A_r, [(k, i) for each factor [k]^(q^i)]).
# Exponents are lists of powers of q summed: (0, 1) means q^0 + q^1.
DISPLAYS = {
    (2, 3): [
        (((0, 1, 2), ()), [(1, 2), (2, 1), (3, 0)]),
        (((0,), (1,)), [(2, 1), (3, 0)]),
        (((2,), (0,)), [(1, 2), (3, 0)]),
    ],
    (2, 4): [
        (((0, 1, 2, 3), ()), [(1, 3), (2, 2), (3, 1), (4, 0)]),
        (((0, 3), (1,)), [(2, 2), (3, 1), (4, 0)]),
        (((2, 3), (0,)), [(1, 3), (3, 1), (4, 0)]),
        (((0, 1), (2,)), [(2, 2), (3, 1), (4, 0)]),
        (((), (0, 2)), [(2, 2), (4, 0)]),
    ],
    (3, 3): [
        (((0, 1, 2), (), ()), [(1, 2), (2, 1), (3, 0)]),
        (((0,), (1,), ()), [(2, 1), (3, 0)]),
        (((2,), (0,), ()), [(1, 2), (3, 0)]),
        (((), (), (0,)), [(3, 0)]),
    ],
    (3, 4): [
        (((0, 1, 2, 3), (), ()), [(1, 3), (2, 2), (3, 1), (4, 0)]),
        (((0, 3), (1,), ()), [(2, 2), (3, 1), (4, 0)]),
        (((2, 3), (0,), ()), [(1, 3), (3, 1), (4, 0)]),
        (((0, 1), (2,), ()), [(2, 2), (3, 1), (4, 0)]),
        (((), (0, 2), ()), [(2, 2), (4, 0)]),
        (((3,), (), (0,)), [(1, 3), (4, 0)]),
        (((0,), (), (1,)), [(3, 1), (4, 0)]),
    ],
}


def test_criterion_2_displayed_coefficients(report):
    mismatches, counts = [], []
    for q in (2, 3):
        K = make_K(q)
        for (r, n), printed in DISPLAYS.items():
            S = SymbolicDomain(K, r)
            phi = DrinfeldModule(S, S.gens())
            computed = {}
            for part, num, den in exp_terms(phi, n):
                (exps, _), = num.terms.items()
                computed[exps] = den.as_scalar()
            counts.append(len(computed))
            for sets, factors in printed:
                exps = tuple(sum(q ** i for i in s) for s in sets)
                den = K.one()
                for k, i in factors:
                    den = den * K.frob(K.bracket_frob(k, 0), i)
                if exps not in computed:
                    mismatches.append((q, r, n, 'numerator', exps))
                elif computed[exps] != den:
                    mismatches.append((q, r, n, 'denominator', sets))
            if len(computed) != len(printed):
                mismatches.append((q, r, n, 'summand count', len(computed)))
    report(2, 'symbolic alpha_3, alpha_4 in ranks 2 and 3 match the printed displays term for term',
           not mismatches, f'summand counts {counts[:4]}; mismatches {mismatches}')


def test_criterion_3_carlitz_collapse(report):
    bad = []
    for q in (2, 3):
        K = make_K(q)
        phi = DrinfeldModule(K, [K.one()])
        alpha, beta = exp_coeffs_formula(phi, 8), log_coeffs_formula(phi, 8)
        for n in range(9):
            if alpha[n] * carlitz_D(n, K) != K.one() or beta[n] * carlitz_L(n, K) != K.one():
                bad.append((q, n))
    report(3, 'alpha_n D_n = beta_n L_n = 1 for n <= 8, q in {2, 3}', not bad, f'failures {bad}')


def test_criterion_4_oracle_equality(report):
    t = time.perf_counter()
    rng = random.Random(20240404)
    bad, modules = [], 0
    for q in (2, 3):
        K = make_K(q)
        for r in (1, 2, 3):
            for _ in range(20):
                coeffs = [K.random_poly(rng, 2, nonzero=(i == r - 1)) for i in range(r)]
                phi = DrinfeldModule(K, coeffs)
                modules += 1
                N = 6
                if exp_coeffs_formula(phi, N).coeffs != exp_coeffs_recursive(phi, N).coeffs:
                    bad.append(('alpha', q, r))
                if log_coeffs_formula(phi, N).coeffs != log_coeffs_recursive(phi, N).coeffs:
                    bad.append(('beta', q, r))
                for m in range(6):
                    if [c_formula(phi, n, m) for n in range(r * m + 1)] != skew_power_coeffs(phi, m):
                        bad.append(('c(n;m)', q, r, m))
    secs = time.perf_counter() - t
    report(4, f'formula = recursion for alpha, beta (N = 6) and c(n;m) = skew powers (m <= 5) on {modules} modules',
           not bad and secs < 60, f'{secs:.1f}s, failures {bad[:3]}')


def test_criterion_5_inverse_composition(report):
    ok = []
    for q in (2, 3):
        S = SymbolicDomain(make_K(q), 2, ('A', 'B'))
        phi = DrinfeldModule(S, S.gens())
        ok.append(compose_inverse_check(exp_coeffs_formula(phi, 4), log_coeffs_formula(phi, 4), 4))
    report(5, 'log(exp(z)) = z through z^(q^4) with symbolic A, B', all(ok), f'q=2,3: {ok}')


def test_criterion_6_valuation_law(report):
    bad, cases = [], set()
    for q in (2, 3):
        K = make_K(q)
        for vA in range(-3, 3):
            for vB in range(-5, 4):
                phi = DrinfeldModule(K, [monomial(K, vA), monomial(K, vB)])
                an = analyze(phi)
                cases.add(an.case)
                beta = log_coeffs_recursive(phi, 10)
                v = [Fraction(b.valuation()) for b in beta]
                if an.case == CASE_BOUNDARY:
                    bound = [beta_valuation(n, an)[0] for n in range(11)]
                    if any(v[n] < bound[n] for n in range(11)):
                        bad.append(('bound', q, vA, vB))
                    for n in range(1, 9):
                        if sum(v[k] == bound[k] for k in (n, n + 1, n + 2)) < 2:
                            bad.append(('two thirds', q, vA, vB, n))
                elif any(v[n] != beta_valuation(n, an)[0] for n in range(11)):
                    bad.append(('formula', q, vA, vB))
    report(6, 'v(beta_n) for n <= 10 follows the three-case law',
           not bad and cases == {CASE_ABOVE, CASE_BOUNDARY, CASE_BELOW}, f'cases {sorted(cases)}; failures {bad[:3]}')


def _tolerance(F):
    return Fraction(F.cap, F.e) - 10


def _meets(v, F):
    """v is a residual valuation (None for an exact zero)."""
    return v is None or v >= _tolerance(F)


def test_criterion_7_torsion(report):
    bad = []
    for q, A, B in TAME_MODULES:
        phi = tame_module(q, A, B)
        an = analyze(phi)
        b = torsion_basis(phi)
        F = b.field
        coeffs = local_module(phi, F)
        predicted = sorted(v for v, _ in an.torsion_valuations())
        found = sorted(set(b.valuations()))
        if found != predicted:
            bad.append(('valuations', q, A, B, found))
        for x in (b.delta, b.zeta):
            if not _meets(residual_valuation(coeffs, x), F):
                bad.append(('residual', q, A, B))
        if not _meets(torsion_product_residual(phi, b), F):
            bad.append(('product', q, A, B))
    report(7, f'torsion roots, residuals and the product identity on {len(TAME_MODULES)} modules',
           not bad, f'failures {bad}')


def test_criterion_8_periods(report):
    rng = random.Random(7)
    bad, checked = [], 0
    for q, A, B in TAME_MODULES:
        phi = tame_module(q, A, B)
        an = analyze(phi)
        if an.case == CASE_BELOW and an.vj <= -q * q:
            continue
        b = torsion_basis(phi)
        F = b.field
        P = periods(phi, basis=b)
        lams = [P.lambda1, P.lambda2]
        K = phi.dom
        for _ in range(3):
            a, c = K.random_poly(rng, 2, nonzero=False), K.random_poly(rng, 2, nonzero=False)
            lams.append(F.embed(a) * P.lambda1 + F.embed(c) * P.lambda2)
        for lam in lams:
            if lam.is_zero_to_precision() or lam.is_exact_zero():
                continue
            e = evaluate_exp(phi, lam)
            if not _meets(e.valuation_or_bound()[0], F):
                bad.append(('exp', q, A, B))
        for w in b.points():
            if w.is_exact_zero():
                continue
            if t_log(phi, w).valuation() != w.valuation() - 1:
                bad.append(('v(T log w)', q, A, B))
        checked += 1
    report(8, f'e(lambda) vanishes on A-combinations of periods and v(T log w) = v(w) - 1 ({checked} modules)',
           not bad and checked >= 6, f'failures {bad}')


def test_criterion_9_cm_example(report):
    t = time.perf_counter()
    phi = cm_module()
    dom = phi.dom
    an = analyze(phi)
    details = []
    ok = an.vj == -18
    alpha, beta = exp_coeffs_recursive(phi, 6), log_coeffs_recursive(phi, 6)
    for n in range(1, 7):
        ok &= dom.valuation(alpha[n]) == Fraction((n - 2) * 3 ** n, 2)
        ok &= dom.valuation(beta[n]) == Fraction(-3 * (3 ** n - 1), 4)
    b = torsion_basis(phi)
    F = b.field
    ok &= sorted(b.valuations()) == [Fraction(-3, 4), Fraction(7, 4)]
    coeffs = local_module(phi, F)
    ok &= all(_meets(residual_valuation(coeffs, x), F) for x in (b.delta, b.zeta))
    lam = frak_f_period(phi, b)
    ok &= lam.valuation() == Fraction(3, 4)
    ok &= _meets(evaluate_exp(phi, lam).valuation_or_bound()[0], F)
    ok &= frak_a_identity_check(phi, 5)[0]
    secs = time.perf_counter() - t
    details.append(f'{secs:.1f}s, field e={F.e} m={F.m}')
    report(9, 'CM example at q=3: v(j), v(alpha_n), v(beta_n), torsion, maximal period 3/4, closed form of a_delta(n)',
           ok and secs < 120, '; '.join(details))


def test_criterion_10_supersingularity(report):
    t = time.perf_counter()
    rng = random.Random(11)
    bad, counted = [], 0
    for q in (2, 3):
        K = make_K(q)
        for d in (1, 2, 3):
            for prime in monic_irreducibles(K, d):
                R = ResidueField(prime)
                for _ in range(6):
                    A, B = R.from_K(K.random_poly(rng, 3, nonzero=False)), R.from_K(K.random_poly(rng, 3))
                    if R.is_zero(B):
                        continue
                    phi = DrinfeldModule(R, [A, B])
                    counted += 1
                    if supersingular_test(phi) != supersingular_direct(phi):
                        bad.append(('sampled', q, str(prime)))
                if d > 2:
                    continue
                one = R.bracket_frob(1, 0)
                for j in R.elements():
                    phi = j_representative(R, j)
                    ss = supersingular_test(phi)
                    if ss != supersingular_direct(phi) or ss != (j == one):
                        bad.append(('exhaustive', q, str(prime), R.format(j)))
        prime = monic_irreducibles(K, 4)[0]
        R = ResidueField(prime)
        S, got = ss_degree4_terms(R)
        if got != ss_degree4_expected(S, R):
            bad.append(('degree 4', q))
    secs = time.perf_counter() - t
    report(10, f'supersingularity criterion = direct test ({counted} sampled modules, all j for d <= 2), degree-4 j-polynomial',
           not bad and secs < 120, f'{secs:.1f}s, failures {bad[:3]}')
