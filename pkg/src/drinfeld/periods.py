"""Rank-2 valuation analysis, T-torsion, periods and the analytic period series.

Case dispatch uses exact rational valuations of A, B and j = A^(q+1)/B;
the local series only ever supply digits, never case decisions.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, gcd, ceil

from .algebra import DrinfeldModule
from .errors import (DomainError, MethodScopeError, NeedRamification, NeedResidueExtension,
                     UnsupportedExtension, PrecisionExhausted, check_cancel)
from .localfield import (LocalField, DEFAULT_PRECISION, MIN_DIGITS, additive_root, artin_schreier_series,
                         artin_schreier_solve, root_qminus1, eval_additive)
from .series import (log_coeffs_recursive, exp_coeffs_recursive, evaluate_log, evaluate_exp,
                     log_tail_bound, eval_linear_series)

CASE_ABOVE, CASE_BOUNDARY, CASE_BELOW = 'v(j) > -q', 'v(j) = -q', 'v(j) < -q'


@dataclass(frozen=True)
class Rank2Analysis:
    q: int
    vA: Fraction  # None encodes A = 0
    vB: Fraction
    vj: Fraction  # None encodes j = 0
    rho_A: Fraction
    rho_B: Fraction
    rho: Fraction
    case: str

    def log_converges(self, vz):
        return vz > self.rho

    def torsion_valuations(self):
        """[(valuation, count of nonzero torsion points)]."""
        q = self.q
        if self.case != CASE_BELOW:
            return [(-(1 + self.vB) / Fraction(q * q - 1), q * q - 1)]
        return [(-(1 + self.vA) / Fraction(q - 1), q - 1),
                ((self.vA - self.vB) / Fraction(q * q - q), q * q - q)]

    def high_valuation(self):
        return max(v for v, _ in self.torsion_valuations())

    def low_valuation(self):
        return min(v for v, _ in self.torsion_valuations())

    def second_generator(self):
        """(available?, reason)."""
        q = self.q
        if self.case != CASE_BELOW:
            return True, ''
        if self.vj > -q * q:
            return True, ''
        return False, (f'second generator out of method scope (v(j) <= -q^2): v(j) = {self.vj} '
                       f'<= {-q * q}, so log does not converge on the low-valuation torsion points')

    def frak_f_threshold(self):
        """(threshold, exact?) for convergence of the analytic period series in z."""
        q = self.q
        if self.case != CASE_BELOW:
            raise MethodScopeError('the analytic period series needs v(j) < -q')
        if self.vj > -q * q:
            return Fraction(0), True
        if self.vj < -q * q:
            return -(self.vj + q * q) / Fraction(q * q - q), True
        return Fraction(0), False

    def period_valuation(self):
        """Valuation of a period of maximal valuation, -(q + v(A))/(q - 1) when v(j) < -q."""
        q = self.q
        if self.case == CASE_BELOW:
            return -(q + self.vA) / Fraction(q - 1)
        return self.high_valuation() - 1


def analyze_valuations(q, vA, vB):
    if vB is None:
        raise DomainError('B must be nonzero')
    vB = Fraction(vB)
    vA = None if vA is None else Fraction(vA)
    rho_B = -(q * q + vB) / Fraction(q * q - 1)
    if vA is None:
        return Rank2Analysis(q, None, vB, None, None, rho_B, rho_B, CASE_ABOVE)
    vj = (q + 1) * vA - vB
    rho_A = -(q + vA) / Fraction(q - 1)
    case = CASE_ABOVE if vj > -q else CASE_BOUNDARY if vj == -q else CASE_BELOW
    return Rank2Analysis(q, vA, vB, vj, rho_A, rho_B, max(rho_A, rho_B), case)


def analyze(phi):
    if phi.rank != 2:
        raise DomainError('the valuation analysis is for rank 2')
    dom = phi.dom
    A, B = phi.A
    vA = None if dom.is_zero(A) else Fraction(dom.valuation(A))
    return analyze_valuations(phi.q, vA, Fraction(dom.valuation(B)))


def beta_valuation(n, an):
    """(value, exact?) for v(beta_n); in the boundary case only a lower bound.

    Returns (None, True) when beta_n = 0 (odd n with A = 0).
    """
    q = an.q
    if n == 0:
        return Fraction(0), True
    if an.case == CASE_BELOW:
        return (q ** n - 1) * (an.vA + q) / Fraction(q - 1), True
    if an.case == CASE_BOUNDARY:
        return (q ** n - 1) * (an.vA + q) / Fraction(q - 1), False
    base = (q ** n - 1) * (an.vB + q * q) / Fraction(q * q - 1)
    if n % 2 == 0:
        return base, True
    if an.vj is None:
        return None, True
    return base + (an.vj + q) / Fraction(q + 1), True


# ---------------------------------------------------------------------------
# torsion


@dataclass
class TorsionBasis:
    field: LocalField
    delta: object
    zeta: object
    c: object
    case: str
    convention: str
    eta: object = None  # the torsion point on the high-valuation line, when two slopes
    method: str = ''

    def valuations(self):
        return self.delta.valuation(), self.zeta.valuation()

    def points(self):
        """All q^2 elements a delta + b zeta of V_phi."""
        F = self.field
        scal = [F.scalar(c) for c in F.K.F.elements()]
        return [a * self.delta + b * self.zeta for a in scal for b in scal]


def _field_params(phi, an, extra=()):
    vals = [an.vB, Fraction(-1 - an.vB, an.q - 1)] + [v for v, _ in an.torsion_valuations()] + list(extra)
    if an.vA is not None:
        vals.append(an.vA)
    e = 1
    for v in vals:
        e = lcm(e, Fraction(v).denominator)
    return e


def local_module(phi, F):
    return [F.T()] + [F.embed(a) for a in phi.A]


def _torsion_in(F, phi, an, convention):
    coeffs = local_module(phi, F)
    T, A, B = coeffs
    s = root_qminus1(T / B)
    if an.case != CASE_BELOW:
        delta = additive_root(coeffs, 0)
        c = delta.inverse() * s
        X = artin_schreier_solve(c / delta.frob(1))
        return TorsionBasis(F, delta, delta * X, c, an.case, 'single slope', method='artin-schreier')
    if convention == 'low':
        delta = additive_root(coeffs, 1)
        c = delta.inverse() * s
        eta = delta * artin_schreier_series(c / delta.frob(1))
        return TorsionBasis(F, delta, eta, c, an.case, 'low', eta=eta, method='eta-series')
    delta = additive_root(coeffs, 0)
    c = delta.inverse() * s
    try:
        zeta = delta * artin_schreier_solve(c / delta.frob(1))
        method = 'artin-schreier'
    except UnsupportedExtension:
        zeta = additive_root(coeffs, 1)
        method = 'newton-polygon'
    return TorsionBasis(F, delta, zeta, c, an.case, 'high', eta=delta, method=method)


def torsion_basis(phi, prec=DEFAULT_PRECISION, convention='low', e=None, m=1, max_rebuilds=12):
    """An F_q-basis of the T-torsion, in the smallest tame field that holds it."""
    an = analyze(phi)
    e = e or _field_params(phi, an)
    K = phi.dom.K if hasattr(phi.dom, 'K') else phi.dom
    for _ in range(max_rebuilds):
        if gcd(e, K.p) != 1:
            raise UnsupportedExtension(f'torsion needs ramification index {e}, divisible by p={K.p}')
        F = LocalField(K, e, m, prec)
        try:
            return _torsion_in(F, phi, an, convention)
        except NeedRamification as sig:
            e *= sig.factor
        except NeedResidueExtension as sig:
            m *= sig.factor
    raise UnsupportedExtension('field rebuild limit reached')


def residual_valuation(coeffs, x):
    """Valuation of f(x), or its precision bound when f(x) vanishes to precision."""
    r = eval_additive(coeffs, x)
    return r.valuation_or_bound()[0]


def torsion_product_residual(phi, basis):
    """min valuation of B prod (x - w) - phi_T(x) over all coefficients, as a bound."""
    F = basis.field
    coeffs = local_module(phi, F)
    poly = [F.one()]
    for w in basis.points():
        nxt = [F.zero()] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + a
            nxt[i] = nxt[i] - a * w
        poly = nxt
    B = coeffs[2]
    target = [F.zero()] * len(poly)
    for i, a in enumerate(coeffs):
        target[F.q ** i] = a
    worst = None
    for a, t in zip(poly, target):
        v = (B * a - t).valuation_or_bound()[0]
        if v is not None:
            worst = v if worst is None else min(worst, v)
    return worst


# ---------------------------------------------------------------------------
# periods


@dataclass
class PeriodPair:
    lambda1: object
    lambda2: object
    methods: tuple
    reason: str
    analysis: Rank2Analysis
    basis: TorsionBasis
    sources: tuple = field(default_factory=tuple)


def t_log(phi, w, beta=None, token=None):
    """T log_phi(w)."""
    return w.F.T() * evaluate_log(phi, w, beta, token)


def periods(phi, prec=DEFAULT_PRECISION, convention='low', token=None, basis=None):
    an = analyze(phi)
    basis = basis or torsion_basis(phi, prec, convention)
    if an.case != CASE_BELOW:
        l1 = t_log(phi, basis.delta, token=token).require_digits(MIN_DIGITS, 'period')
        l2 = t_log(phi, basis.zeta, token=token).require_digits(MIN_DIGITS, 'period')
        return PeriodPair(l1, l2, ('log', 'log'), '', an, basis, ('delta', 'zeta'))
    high = basis.eta
    low = basis.delta if basis.convention == 'low' else basis.zeta
    l1 = t_log(phi, high, token=token).require_digits(MIN_DIGITS, 'period')
    ok, reason = an.second_generator()
    l2 = t_log(phi, low, token=token).require_digits(MIN_DIGITS, 'period') if ok else None
    return PeriodPair(l1, l2, ('log', 'log' if ok else None), reason, an, basis, ('eta', 'delta'))


def exp_at(phi, z, token=None):
    return evaluate_exp(phi, z, token=token)


def eta_series(phi, basis):
    """eta = -delta sum (c/delta^q)^(q^n) for the low-valuation delta."""
    an = analyze(phi)
    if an.case != CASE_BELOW:
        raise MethodScopeError('the eta series needs v(j) < -q')
    delta = basis.delta
    if delta.valuation() != an.low_valuation():
        raise DomainError('the eta series needs delta on the low-valuation slope')
    gamma = basis.c / delta.frob(1)
    if not gamma.valuation() > 0:
        raise AssertionError('series ratio must have positive valuation')
    return delta * artin_schreier_series(gamma)


def _frak_tail(an, vdelta, vz, n):
    q = an.q
    kappa = (an.vj + q * q) / Fraction(q * q - q)
    return vdelta - 1 + q ** n * vz + (q ** n - 1) * min(Fraction(0), kappa)


def frak_f_period(phi, basis, token=None, beta=None):
    """The analytic period sum_n a_delta(n) gamma^(q^n), gamma = c/delta^q, a_delta(n) in closed form.

    It equals T log(delta sum gamma^(q^n)) = -T log(eta) for eta as built by torsion_basis.
    Each term is summed as beta_n z1^(q^n) - beta_(n-1) z2^(q^(n-1)) with
    z1 = T delta gamma and z2 = B delta^(q^2) gamma^q; both pieces stay small.
    """
    an = analyze(phi)
    if an.case != CASE_BELOW or basis.convention != 'low':
        raise MethodScopeError('the analytic period needs v(j) < -q and delta on the low slope')
    F = basis.field
    T, A, B = local_module(phi, F)
    delta = basis.delta
    gamma = basis.c / delta.frob(1)
    vz = gamma.valuation()
    z1 = T * delta * gamma
    z2 = B * delta.frob(2) * gamma.frob(1)
    target = Fraction(z1.prec if z1.prec is not None else z1.start + F.cap, F.e)
    N = 0
    while _frak_tail(an, delta.valuation(), vz, N + 1) < target:
        N += 1
    if beta is None or len(beta) <= N:
        beta = log_coeffs_recursive(phi, N, token)
    acc = F.zero()
    for n in range(N + 1):
        check_cancel(token)
        term = F.embed(beta[n]) * z1.frob(n)
        if n:
            term = term - F.embed(beta[n - 1]) * z2.frob(n - 1)
        acc = acc + term
    tail = _frak_tail(an, delta.valuation(), vz, N + 1)
    return (acc + F.zero_to(ceil(tail * F.e))).require_digits(MIN_DIGITS, 'analytic period')


def frak_f_partial_sums(phi, basis, z, N, beta=None):
    """f(z) = sum_{n<=N} a_delta(n) z^(q^n) with a_delta(n) = T sum_{j<=n} beta_j delta^(q^j)."""
    F = basis.field
    if beta is None or len(beta) <= N:
        beta = log_coeffs_recursive(phi, N)
    T = F.T()
    acc, partial = F.zero(), F.zero()
    for n in range(N + 1):
        partial = partial + F.embed(beta[n]) * basis.delta.frob(n)
        acc = acc + T * partial * z.frob(n)
    return acc


def frak_f_log_form(phi, basis, z):
    """log(T delta z) - log(B delta^(q^2) z^q)."""
    F = basis.field
    T, A, B = local_module(phi, F)
    d = basis.delta
    return evaluate_log(phi, T * d * z) - evaluate_log(phi, B * d.frob(2) * z.frob(1))


def convergence_cases_frak_f(phi):
    return analyze(phi).frak_f_threshold()


# ---------------------------------------------------------------------------
# exact check of the closed form of a_delta(n) in D[delta]/(B d^(q^2-1) + A d^(q-1) + T)


class _Quotient:
    """Polynomials in delta over the module's domain, reduced by f(delta)/delta = 0."""

    def __init__(self, phi):
        dom = phi.dom
        A, B = phi.A
        q = phi.q
        self.dom, self.q = dom, q
        self.deg = q * q - 1
        inv = dom.one() / B
        # delta^(q^2-1) = -(A delta^(q-1) + T) / B
        self.rel = {q - 1: -(A * inv), 0: -(dom.T() * inv)}

    def reduce(self, c):
        c = list(c)
        for i in range(len(c) - 1, self.deg - 1, -1):
            a = c[i]
            if self.dom.is_zero(a):
                continue
            c[i] = self.dom.zero()
            for k, r in self.rel.items():
                c[i - self.deg + k] = c[i - self.deg + k] + a * r
        c = c[:self.deg] + [self.dom.zero()] * max(0, self.deg - len(c))
        return c

    def frob(self, c):
        out = [self.dom.zero()] * ((len(c) - 1) * self.q + 1)
        for i, a in enumerate(c):
            out[i * self.q] = self.dom.frob(a, 1)
        return self.reduce(out)

    def delta_powers(self, n):
        """delta^(q^j) for j = 0..n."""
        d = [self.dom.zero()] * self.deg
        d[1] = self.dom.one()
        out = [d]
        for _ in range(n):
            out.append(self.frob(out[-1]))
        return out

    def scale(self, c, a):
        return [x * a for x in c]

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def equal(self, a, b):
        return all(self.dom.is_zero(x - y) for x, y in zip(a, b))


def frak_a_identity_check(phi, N, beta=None):
    """Exact check of T sum_{j<=n} beta_j delta^(q^j) = (T delta)^(q^n) beta_n - (B delta^(q^2))^(q^(n-1)) beta_(n-1)
    for n <= N, in the ring generated by a root delta of f(x)/x."""
    if phi.rank != 2:
        raise DomainError('rank 2 only')
    dom = phi.dom
    Q = _Quotient(phi)
    if beta is None or len(beta) <= N:
        beta = log_coeffs_recursive(phi, N)
    dp = Q.delta_powers(N + 1)
    T = dom.T()
    B = phi.A[1]
    partial = [dom.zero()] * Q.deg
    results = []
    for n in range(N + 1):
        partial = Q.add(partial, Q.scale(dp[n], beta[n]))
        lhs = Q.scale(partial, T)
        rhs = Q.scale(dp[n], dom.frob(T, n) * beta[n])
        if n:
            rhs = Q.add(rhs, Q.scale(dp[n + 1], -(dom.frob(B, n - 1) * beta[n - 1])))
        results.append(Q.equal(lhs, rhs))
    return all(results), results
