import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from drinfeld.algebra import make_K, DrinfeldModule, ResidueField, monic_irreducibles
from drinfeld.errors import DomainError
from drinfeld.multinomial import (compositions, c_formula, c_recursive, skew_power_coeffs, supersingular_test,
                                  supersingular_direct, j_representative, ss_degree4_terms, ss_degree4_expected,
                                  ss_j_polynomial_degree4)
from drinfeld.symbolic import SymbolicDomain


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert len(list(compositions(4, 3))) == 15
    assert list(compositions(0, 0)) == [()]


@given(st.integers(0, 2 ** 32), st.sampled_from([2, 3]), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_formula_matches_recursion_and_skew_powers(seed, q, r):
    rng = random.Random(seed)
    K = make_K(q)
    phi = DrinfeldModule(K, [K.random_poly(rng, 2, nonzero=(i == r - 1)) for i in range(r)])
    M = 4
    table = c_recursive(phi, M)
    for m in range(M + 1):
        row = [c_formula(phi, n, m) for n in range(r * m + 1)]
        assert row == table.rows[m] == skew_power_coeffs(phi, m)


def test_top_and_bottom_coefficients():
    K = make_K(3)
    S = SymbolicDomain(K, 2, ('A', 'B'))
    A, B = S.gens()
    phi = DrinfeldModule(S, [A, B])
    assert c_formula(phi, 0, 3) == S.T() ** 3
    # top coefficient of phi_(T^m) is B^(1 + q^2 + ... + q^(2m-2))
    assert c_formula(phi, 4, 2) == S.monomial((0, 1 + 9))


@pytest.mark.parametrize('q', [2, 3])
def test_degree_two_supersingular_j_is_bracket_one(q):
    K = make_K(q)
    for prime in monic_irreducibles(K, 2):
        R = ResidueField(prime)
        ss = [R.format(j) for j in R.elements() if supersingular_test(j_representative(R, j))]
        assert ss == [R.format(R.bracket_frob(1, 0))]


@pytest.mark.parametrize('q', [2, 3])
def test_criterion_agrees_with_direct_test(q):
    rng = random.Random(q)
    K = make_K(q)
    for d in (1, 2, 3):
        for prime in monic_irreducibles(K, d)[:3]:
            R = ResidueField(prime)
            for _ in range(5):
                B = R.from_K(K.random_poly(rng, 3))
                if R.is_zero(B):
                    continue
                phi = DrinfeldModule(R, [R.from_K(K.random_poly(rng, 3, nonzero=False)), B])
                assert supersingular_test(phi) == supersingular_direct(phi)


@pytest.mark.parametrize('q', [2, 3])
def test_degree_four_j_polynomial(q):
    K = make_K(q)
    R = ResidueField(monic_irreducibles(K, 4)[0])
    S, got = ss_degree4_terms(R)
    assert got == ss_degree4_expected(S, R)
    # the same polynomial with [2][3] as constant term is a different polynomial
    br = R.bracket_frob
    wrong = ss_degree4_expected(S, R) + S.const(br(2, 0) * br(3, 0) - br(1, 0) * br(3, 0)) * S.monomial((0, 1 + q * q))
    assert got != wrong
    # on sampled j the closed form decides supersingularity
    for j in R.elements()[:40]:
        if R.is_zero(j):
            continue
        phi = j_representative(R, j)
        assert supersingular_direct(phi) == R.is_zero(ss_j_polynomial_degree4(R, j))


def test_rank_two_only():
    K = make_K(2)
    R = ResidueField(monic_irreducibles(K, 1)[0])
    with pytest.raises(DomainError):
        supersingular_test(DrinfeldModule(R, [R.one()]))
