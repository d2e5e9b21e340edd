from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from drinfeld.algebra import make_K, DrinfeldModule
from drinfeld.errors import MethodScopeError, UnsupportedExtension
from drinfeld.periods import (analyze, analyze_valuations, beta_valuation, torsion_basis, periods, local_module,
                              residual_valuation, frak_f_partial_sums, frak_f_log_form, frak_a_identity_check,
                              eta_series, CASE_ABOVE, CASE_BOUNDARY, CASE_BELOW)
from drinfeld.quadratic import QuadraticDomain
from drinfeld.series import exp_coeffs_recursive, log_coeffs_recursive


def module(q, A, B):
    K = make_K(q)
    return DrinfeldModule(K, [K.parse(A), K.parse(B)])


def cm_module():
    K = make_K(3)
    R = QuadraticDomain(K, K.parse('T^3 - T - 1'))
    return DrinfeldModule(R, [R.parse('y*(T^3 - T)'), R.one()])


@given(st.sampled_from([2, 3, 4, 5]), st.integers(-8, 8), st.integers(-8, 8))
def test_radius_gap_tracks_j(q, vA, vB):
    an = analyze_valuations(q, vA, vB)
    assert an.rho_B - an.rho_A == Fraction(an.vj + q, q * q - 1)
    assert (an.rho == an.rho_A) == (an.case == CASE_BELOW) or an.case == CASE_BOUNDARY
    assert sum(n for _, n in an.torsion_valuations()) == q * q - 1


def test_cases():
    assert analyze_valuations(3, 0, 0).case == CASE_ABOVE
    assert analyze_valuations(3, 0, 3).case == CASE_BOUNDARY
    assert analyze_valuations(3, -1, 2).case == CASE_BELOW
    assert analyze_valuations(3, None, 0).case == CASE_ABOVE


def test_torsion_valuations_below():
    # v(A) = -1, v(B) = 2 at q = 3: slopes through (1, -1), (3, -1), (9, 2)
    an = analyze_valuations(3, -1, 2)
    assert an.torsion_valuations() == [(0, 2), (Fraction(-1, 2), 6)]


def test_second_generator_scope():
    assert analyze_valuations(3, -2, -2).second_generator()[0]
    ok, reason = analyze_valuations(3, -3, -3).second_generator()
    assert not ok and reason.startswith('second generator out of method scope')


def test_analytic_series_thresholds():
    q = 3
    assert analyze_valuations(q, -1, 2).frak_f_threshold() == (0, True)
    # v(j) = -q^2 - 1
    assert analyze_valuations(q, -2, 2).frak_f_threshold() == (Fraction(1, q * q - q), True)
    assert analyze_valuations(q, -2, 1).frak_f_threshold() == (0, False)
    with pytest.raises(MethodScopeError):
        analyze_valuations(q, 0, 0).frak_f_threshold()


@pytest.mark.parametrize('q,A,B', [(3, 'T+1', '1/T^2'), (2, '1', '1'), (3, '1', '1/T^3'), (2, 'T^3+T', 'T^3')])
def test_beta_valuation_matches_coefficients(q, A, B):
    phi = module(q, A, B)
    an = analyze(phi)
    beta = log_coeffs_recursive(phi, 8)
    for n in range(9):
        v, exact = beta_valuation(n, an)
        if exact:
            assert phi.dom.valuation(beta[n]) == v
        else:
            assert phi.dom.valuation(beta[n]) >= v


def test_beta_vanishes_in_odd_degree_without_A():
    K = make_K(3)
    phi = DrinfeldModule(K, [K.zero(), K.one()])
    assert beta_valuation(3, analyze(phi)) == (None, True)
    assert log_coeffs_recursive(phi, 3)[3] == K.zero()


def test_cm_coefficients_follow_product_recursions():
    # alpha_n = alpha_(n-1)^q / f_n and beta_n = beta_(n-1) / g_n with
    # f_n = ([n]_y - y [n]) / ([n] - 1), g_n = ([n]_y - y^(q^n) [n]) / ([n+1] + 1), [n]_y = y^(q^n) - y
    phi = cm_module()
    R = phi.dom
    y, T = R.parse('y'), R.T()
    alpha, beta = exp_coeffs_recursive(phi, 5), log_coeffs_recursive(phi, 5)

    def br(n, x=T):
        return R.frob(x, n) - x
    for n in range(1, 6):
        f = (br(n, y) - y * br(n)) / (br(n) - R.one())
        g = (br(n, y) - R.frob(y, n) * br(n)) / (br(n + 1) + R.one())
        assert alpha[n] == R.frob(alpha[n - 1], 1) / f
        assert beta[n] == beta[n - 1] / g


@pytest.mark.parametrize('convention', ['low', 'high'])
def test_torsion_conventions(convention):
    phi = module(3, 'T+1', '1/T^2')
    b = torsion_basis(phi, prec=80, convention=convention)
    assert sorted(set(b.valuations())) == sorted(v for v, _ in analyze(phi).torsion_valuations())
    coeffs = local_module(phi, b.field)
    for x in (b.delta, b.zeta):
        v = residual_valuation(coeffs, x)
        assert v is None or v >= Fraction(b.field.cap, b.field.e) - 10
    assert len({str(w) for w in b.points()}) == 9


def test_wild_torsion_is_refused():
    with pytest.raises(UnsupportedExtension):
        torsion_basis(module(3, 'T', '1/T^2'), prec=40)


def test_eta_is_a_torsion_point_of_high_valuation():
    phi = module(3, 'T+1', '1/T^2')
    b = torsion_basis(phi, prec=80)
    eta = eta_series(phi, b)
    assert eta.valuation() == analyze(phi).high_valuation()
    v = residual_valuation(local_module(phi, b.field), eta)
    assert v is None or v >= Fraction(b.field.cap, b.field.e) - 10


def test_periods_without_second_generator():
    phi = module(3, 'T^3+1', '1')
    P = periods(phi, prec=80)
    assert P.lambda2 is None and P.reason
    assert P.lambda1.valuation() == analyze(phi).period_valuation()


def test_analytic_series_partial_sums_match_logs():
    phi = module(3, 'T+1', '1/T^2')
    b = torsion_basis(phi, prec=80)
    F = b.field
    z = F.u() ** 2
    lhs = frak_f_partial_sums(phi, b, z, 12)
    assert lhs.agrees_with(frak_f_log_form(phi, b, z), prec=F.e * 6)


def test_closed_form_identity_on_random_module():
    ok, rows = frak_a_identity_check(module(3, 'T^2+T', 'T^2'), 4)
    assert ok and len(rows) == 5
