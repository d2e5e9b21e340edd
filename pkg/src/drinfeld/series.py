"""Coefficients of the exponential and logarithm of a Drinfeld module.

alpha_n = sum over S in P_r(n) of A^S / D_n(union S)
beta_n  = sum over S in P_r(n) of A^S / L(S)

together with the recursions that determine them, used as independent
oracles, and evaluation of the F_q-linear series on local elements.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import DomainError, NoConvergentSeries, MethodScopeError, check_cancel
from .partitions import partitions_list, monomial, weight_identity_holds


@dataclass
class LinearSeriesCoeffs:
    kind: str  # 'exp' or 'log'
    coeffs: list
    dom: object = None
    summands: list = field(default_factory=list)

    @property
    def N(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)


def _div(dom, x, d, what):
    try:
        return x / d
    except ZeroDivisionError:
        raise DomainError(f'{what} vanishes in this domain; the coefficient is undefined') from None


def dn_factor(dom, n, S):
    """D_n(S) = prod over i in S of [n - i]^(q^i)."""
    acc = dom.one()
    for i in S:
        if not 0 <= i < n:
            raise DomainError(f'index {i} outside 0..{n - 1}')
        acc = acc * dom.bracket_frob(n, i)
    return acc


def lfactor(dom, S):
    """L(S) = prod over j and i in S_j of -[i + j]."""
    acc = dom.one()
    for j, s in enumerate(S.sets, 1):
        for i in s:
            acc = acc * -dom.bracket_frob(i + j, 0)
    return acc


def _check_weight(S, q):
    if not weight_identity_holds(S, q):
        raise AssertionError(f'weight identity fails for {S}')


def exp_terms(phi, n):
    """[(S, A^S, D_n(union S))] for every S in P_r(n)."""
    dom = phi.dom
    out = []
    for S in partitions_list(phi.rank, n):
        _check_weight(S, phi.q)
        out.append((S, monomial(dom, phi.A, S), dn_factor(dom, n, S.union())))
    return out


def log_terms(phi, n):
    dom = phi.dom
    out = []
    for S in partitions_list(phi.rank, n):
        _check_weight(S, phi.q)
        out.append((S, monomial(dom, phi.A, S), lfactor(dom, S)))
    return out


def _sum_terms(dom, terms, what):
    acc = dom.zero()
    for _, num, den in terms:
        acc = acc + _div(dom, num, den, what)
    return acc


def exp_coeffs_formula(phi, N, token=None):
    coeffs, counts = [], []
    for n in range(N + 1):
        check_cancel(token)
        terms = exp_terms(phi, n)
        coeffs.append(_sum_terms(phi.dom, terms, f'D_{n}'))
        counts.append(len(terms))
    return LinearSeriesCoeffs('exp', coeffs, phi.dom, counts)


def log_coeffs_formula(phi, N, token=None):
    coeffs, counts = [], []
    for n in range(N + 1):
        check_cancel(token)
        terms = log_terms(phi, n)
        coeffs.append(_sum_terms(phi.dom, terms, f'L(S) at n={n}'))
        counts.append(len(terms))
    return LinearSeriesCoeffs('log', coeffs, phi.dom, counts)


def exp_coeffs_recursive(phi, N, token=None):
    """alpha_n [n] = sum_{i=1}^r A_i alpha_{n-i}^(q^i)."""
    dom = phi.dom
    alpha = [dom.one()]
    for n in range(1, N + 1):
        check_cancel(token)
        acc = dom.zero()
        for i in range(1, min(phi.rank, n) + 1):
            acc = acc + phi.A[i - 1] * dom.frob(alpha[n - i], i)
        alpha.append(_div(dom, acc, dom.bracket_frob(n, 0), f'[{n}]'))
    return LinearSeriesCoeffs('exp', alpha, dom)


def log_coeffs_recursive(phi, N, token=None):
    """-[n] beta_n = sum_{i=1}^r beta_{n-i} A_i^(q^(n-i))."""
    dom = phi.dom
    beta = [dom.one()]
    for n in range(1, N + 1):
        check_cancel(token)
        acc = dom.zero()
        for i in range(1, min(phi.rank, n) + 1):
            acc = acc + beta[n - i] * dom.frob(phi.A[i - 1], n - i)
        beta.append(_div(dom, -acc, dom.bracket_frob(n, 0), f'[{n}]'))
    return LinearSeriesCoeffs('log', beta, dom)


def composition_coeffs(alpha, beta, N):
    """Coefficients of z^(q^k), k <= N, in log(exp(z)) = sum_m beta_m (sum_n alpha_n z^(q^n))^(q^m)."""
    dom = alpha.dom
    out = []
    for k in range(N + 1):
        acc = dom.zero()
        for m in range(k + 1):
            acc = acc + beta[m] * dom.frob(alpha[k - m], m)
        out.append(acc)
    return out


def compose_inverse_check(alpha, beta, N):
    """True iff log(exp(z)) = z through the z^(q^N) term."""
    dom = alpha.dom
    c = composition_coeffs(alpha, beta, N)
    return dom.is_zero(c[0] - dom.one()) and all(dom.is_zero(x) for x in c[1:])


# ---------------------------------------------------------------------------
# valuations and evaluation on local elements


def coefficient_valuations(phi):
    return [phi.dom.valuation(a) if not phi.dom.is_zero(a) else None for a in phi.A]


def log_radius(phi):
    """rho = max_j -(v(A_j) + q^j)/(q^j - 1); the log series converges for v(z) > rho.

    For rank <= 2 the series diverges for v(z) <= rho; for higher rank this
    is only a sufficient bound.
    """
    q = phi.q
    vals = coefficient_valuations(phi)
    return max(-(v + q ** j) / Fraction(q ** j - 1) for j, v in enumerate(vals, 1) if v is not None)


def log_tail_bound(rho, vz, q, n):
    """Lower bound for v(beta_n z^(q^n)): (q^n - 1)(v(z) - rho) + v(z)."""
    return (q ** n - 1) * (vz - rho) + vz


def exp_tail_bound(v0, r, q, vz, n):
    """Lower bound for v(alpha_n z^(q^n)) from the D_n and A^S estimates."""
    base = Fraction(n, r) + vz + (v0 / Fraction(q - 1) if v0 < 0 else 0)
    return q ** n * base


def log_truncation(rho, vz, q, target):
    if vz <= rho:
        raise NoConvergentSeries(f'log series diverges: v(z) = {vz} <= rho = {rho}')
    n = 0
    while log_tail_bound(rho, vz, q, n + 1) < target:
        n += 1
    return n


def exp_truncation(v0, r, q, vz, target):
    n = 0
    while True:
        nxt = exp_tail_bound(v0, r, q, vz, n + 1)
        slope_ok = Fraction(n + 1, r) + vz + (v0 / Fraction(q - 1) if v0 < 0 else 0) > 0
        if slope_ok and nxt >= target:
            return n
        n += 1


def eval_linear_series(coeffs, z, tail=None):
    """sum c_n z^(q^n) over a local field; ``tail`` is a lower bound for the omitted terms.

    The coefficients may live in any exact domain (they are embedded) or
    already in z's field.  The returned element carries a precision no larger
    than the tail bound.
    """
    F = z.F
    acc = F.zero()
    for n, c in enumerate(coeffs):
        cz = F.embed(c)
        if cz.is_exact_zero():
            continue
        acc = acc + cz * z.frob(n)
    if tail is not None:
        t = Fraction(tail) * F.e
        acc = acc + F.zero_to(ceil(t))
    return acc


def evaluate_log(phi, z, beta=None, token=None):
    """log_phi(z) to the precision of z with a certified truncation point."""
    F = z.F
    if z.is_exact_zero():
        return z
    vz = z.valuation()
    rho = log_radius(phi)
    if phi.rank > 2 and vz <= rho:
        raise MethodScopeError('convergence of log is not certified for rank > 2 below the radius bound')
    target = Fraction(z.prec if z.prec is not None else z.start + F.cap, F.e)
    N = log_truncation(rho, vz, phi.q, target)
    if beta is None or len(beta) <= N:
        beta = log_coeffs_recursive(phi, N, token)
    return eval_linear_series(beta.coeffs[:N + 1], z, log_tail_bound(rho, vz, phi.q, N + 1))


def _guard_digits(dom, coeffs, vz, q, e):
    """Extra relative digits so that terms much larger than z keep z's absolute precision."""
    low = vz
    for n, c in enumerate(coeffs):
        if not dom.is_zero(c):
            low = min(low, dom.valuation(c) + q ** n * vz)
    return ceil((vz - low) * e)


def evaluate_exp(phi, z, alpha=None, token=None):
    """exp_phi(z); intermediate terms are carried with guard digits so the
    result is as precise as z itself (Frobenius is additive, so z^(q^n) loses
    no absolute precision)."""
    F = z.F
    if z.is_exact_zero():
        return z
    vz = z.valuation()
    vals = [v for v in coefficient_valuations(phi) if v is not None]
    v0 = min(vals)
    target = Fraction(z.prec if z.prec is not None else z.start + F.cap, F.e)
    N = exp_truncation(v0, phi.rank, phi.q, vz, target)
    if alpha is None or len(alpha) <= N:
        alpha = exp_coeffs_recursive(phi, N, token)
    coeffs = alpha.coeffs[:N + 1]
    guard = _guard_digits(phi.dom, coeffs, vz, phi.q, F.e)
    tail = exp_tail_bound(v0, phi.rank, phi.q, vz, N + 1)
    if guard <= 0:
        return eval_linear_series(coeffs, z, tail)
    wide = F.with_cap(F.cap + guard)
    out = eval_linear_series(coeffs, wide.rehome(z), tail)
    return F.rehome(out)
