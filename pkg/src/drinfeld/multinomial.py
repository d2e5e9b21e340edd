"""Coefficients c(n; m) of phi_(T^m) and the rank-2 supersingularity test.

c(n; m) = sum over S in P_r(n) of A^S h_(m - |S|)^(union S + {n}), where
h_k^S sums T^(sum k_i q^i) over all compositions (k_i) of k indexed by S.
"""

from dataclasses import dataclass
from math import comb

from .algebra import DrinfeldModule, SkewPoly, ResidueField, dom_scalar
from .errors import DomainError, check_terms
from .partitions import partitions_list, monomial


def compositions(n, k):
    """All k-tuples of naturals summing to n (odometer order)."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def h_poly(dom, n, S):
    """h_n^S as an element of the domain: sum of T^(sum k_i q^i)."""
    S = sorted(set(S))
    if n < 0:
        return dom.zero()
    if n == 0:
        return dom.one()
    if not S:
        return dom.zero()
    check_terms(comb(n + len(S) - 1, n), 'compositions')
    tq = [dom.frob(dom.T(), i) for i in S]
    acc = dom.zero()
    for ks in compositions(n, len(S)):
        term = dom.one()
        for k, t in zip(ks, tq):
            for _ in range(k):
                term = term * t
        acc = acc + term
    return acc


def c_formula(phi, n, m):
    """c(n; m) from the multinomial formula."""
    dom = phi.dom
    if n < 0 or n > phi.rank * m:
        return dom.zero()
    acc = dom.zero()
    for S in partitions_list(phi.rank, n):
        k = m - S.size()
        if k < 0:
            continue
        acc = acc + monomial(dom, phi.A, S) * h_poly(dom, k, set(S.union()) | {n})
    return acc


@dataclass
class CoeffTable:
    phi: DrinfeldModule
    rows: list  # rows[m][n] = c(n; m), 0 <= n <= r m

    def c(self, n, m):
        row = self.rows[m]
        return row[n] if 0 <= n < len(row) else self.phi.dom.zero()


def c_recursive(phi, M):
    """Rows 0..M from c(n; m+1) = T c(n; m) + sum_i A_i c(n - i; m)^(q^i)."""
    dom = phi.dom
    r = phi.rank
    rows = [[dom.one()]]
    T = dom.T()
    for m in range(M):
        prev = rows[-1]

        def get(n):
            return prev[n] if 0 <= n < len(prev) else dom.zero()
        row = []
        for n in range(r * (m + 1) + 1):
            acc = T * get(n)
            for i in range(1, r + 1):
                if 0 <= n - i < len(prev):
                    acc = acc + phi.A[i - 1] * dom.frob(prev[n - i], i)
            row.append(acc)
        rows.append(row)
    return CoeffTable(phi, rows)


def skew_power_coeffs(phi, m):
    """Coefficients of phi_T^m computed by repeated skew multiplication."""
    p = SkewPoly.scalar(phi.dom, phi.dom.one())
    pt = phi.phi_T()
    for _ in range(m):
        p = pt * p
    return [p.coeff(n) for n in range(phi.rank * m + 1)]


def reduce_module(phi, prime, ext=1):
    """The reduction of a module over K (or with residue coefficients) modulo p."""
    R = ResidueField(prime, ext)
    return phi.over(R) if not isinstance(phi.dom, ResidueField) else phi, R


def _mu(R):
    return [R.embed_base(c) for c in R.prime.coeffs()]


def supersingular_sum(phi, prime=None):
    """sum_{i = ceil(d/2)}^{d} mu_i c(d; i) computed in the residue domain."""
    dom = phi.dom
    prime = prime or dom.prime
    d = prime.d
    mu = [dom_scalar(dom, c) for c in prime.coeffs()]
    acc = dom.zero()
    for i in range(-(-d // 2), d + 1):
        acc = acc + mu[i] * c_formula(phi, d, i)
    return acc


def _check_rank2(phi):
    if phi.rank != 2:
        raise DomainError('supersingularity is implemented for rank 2')
    if phi.dom.is_zero(phi.A[1]):
        raise DomainError('B vanishes modulo the prime; the reduction is not rank 2')


def supersingular_test(phi):
    """Criterion via the multinomial formula; phi over a ResidueField."""
    _check_rank2(phi)
    return phi.dom.is_zero(supersingular_sum(phi))


def supersingular_direct(phi):
    """Direct test: the tau^d coefficient of phi_p vanishes."""
    _check_rank2(phi)
    from .algebra import drinfeld_action
    dom = phi.dom
    return dom.is_zero(drinfeld_action(phi, dom.prime.poly).coeff(dom.prime.d))


def j_representative(R, j):
    """A rank-2 module over R with the given j-invariant: A = j, B = j^q (or A = 0, B = 1)."""
    if R.is_zero(j):
        return DrinfeldModule(R, [R.zero(), R.one()])
    return DrinfeldModule(R, [j, R.frob(j, 1)])


def ss_degree4_terms(R):
    """sum mu_i c(4; i) with A, B symbolic over the residue field of a degree-4 prime."""
    from .symbolic import SymbolicDomain
    if R.prime.d != 4:
        raise DomainError('the degree-4 reduction needs a prime of degree 4')
    S = SymbolicDomain(R, 2, ('A', 'B'))
    A, B = S.gens()
    phi = DrinfeldModule(S, [A, B])
    mu = [S.const(c) for c in _mu(R)]
    acc = S.zero()
    for i in range(2, 5):
        acc = acc + mu[i] * c_formula(phi, 4, i)
    return S, acc


def ss_degree4_expected(S, R):
    """B^(1+q^2) times the j-polynomial j^(q^2+1) - [1]j^(q^2) - [2]j^(q^2-q+1) - [3]j + [1][3]."""
    q = R.q
    A, B = S.gens()
    br = [None] + [S.const(R.bracket_frob(n, 0)) for n in (1, 2, 3)]
    return (S.monomial((1 + q + q * q + q ** 3, 0))
            - br[1] * S.monomial((q * q + q ** 3, 1))
            - br[2] * S.monomial((1 + q ** 3, q))
            - br[3] * S.monomial((1 + q, q * q))
            + br[1] * br[3] * S.monomial((0, 1 + q * q)))


def ss_degree4_reduction_check(prime):
    """Compare the reduced degree-4 criterion with the closed j-polynomial form."""
    R = ResidueField(prime)
    S, got = ss_degree4_terms(R)
    return got == ss_degree4_expected(S, R)


def ss_j_polynomial_degree4(R, j):
    q = R.q
    b = [None] + [R.bracket_frob(n, 0) for n in (1, 2, 3)]
    return (j ** (q * q + 1) - b[1] * j ** (q * q) - b[2] * j ** (q * q - q + 1)
            - b[3] * j + b[1] * b[3])
