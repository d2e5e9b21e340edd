"""The CM module over F_3(T, y), y^2 = T^3 - T - 1, with A = y (T^3 - T) and B = 1.

Prints v(j), the valuations of alpha_n and beta_n against their closed forms,
the T-torsion valuations, the analytic period and its agreement with -T log(eta),
and checks the closed form of the analytic coefficients.
"""

import argparse
import time
from fractions import Fraction

from drinfeld.algebra import make_K, DrinfeldModule
from drinfeld.periods import analyze, torsion_basis, periods, frak_f_period, frak_a_identity_check
from drinfeld.quadratic import QuadraticDomain
from drinfeld.series import exp_coeffs_recursive, log_coeffs_recursive


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument('--n', type=int, default=6, help='largest coefficient index')
    ap.add_argument('--precision', type=int, default=200)
    args = ap.parse_args()

    K = make_K(3)
    R = QuadraticDomain(K, K.parse('T^3 - T - 1'))
    phi = DrinfeldModule(R, [R.parse('y*(T^3 - T)'), R.one()])
    an = analyze(phi)
    print(f'v(j) = {an.vj}  case: {an.case}')

    alpha, beta = exp_coeffs_recursive(phi, args.n), log_coeffs_recursive(phi, args.n)
    print(f'{"n":>2} {"v(alpha_n)":>12} {"(n-2)3^n/2":>12} {"v(beta_n)":>12} {"-3(3^n-1)/4":>12}')
    for n in range(1, args.n + 1):
        print(f'{n:>2} {str(R.valuation(alpha[n])):>12} {str(Fraction((n - 2) * 3 ** n, 2)):>12} '
              f'{str(R.valuation(beta[n])):>12} {str(Fraction(-3 * (3 ** n - 1), 4)):>12}')

    t = time.perf_counter()
    b = torsion_basis(phi, args.precision)
    F = b.field
    print(f'torsion field e={F.e} m={F.m}; valuations {sorted(set(b.valuations()))}')
    P = periods(phi, basis=b)
    lam = frak_f_period(phi, b)
    print(f'v(lambda1) = {P.lambda1.valuation()}; analytic period valuation {lam.valuation()}')
    print(f'analytic period = -lambda1: {lam.agrees_with(-P.lambda1)}')
    if P.lambda2 is None:
        print(f'lambda2: {P.reason}')
    ok, rows = frak_a_identity_check(phi, 5)
    print(f'closed form of the analytic coefficients holds for n <= 5: {ok}')
    print(f'{time.perf_counter() - t:.1f}s')


if __name__ == '__main__':
    main()
