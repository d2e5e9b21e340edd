"""Command line front end.

Exit codes: 0 success, 1 domain or method-scope error, 2 usage error,
3 resource cap or precision exhausted.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .algebra import (make_K, prime_power, DrinfeldModule, PrimeSpec, ResidueField, RatFunc,
                      format_poly, monic_irreducibles, carlitz_D, carlitz_L)
from .errors import DrinfeldError, DomainError
from .localfield import DEFAULT_PRECISION, format_local
from .multinomial import (c_formula, c_recursive, skew_power_coeffs, supersingular_test,
                          supersingular_direct, j_representative, ss_degree4_reduction_check)
from .partitions import enumerate_partitions, count, rfib
from .quadratic import QuadraticDomain
from .series import (exp_coeffs_formula, exp_coeffs_recursive, log_coeffs_formula, log_coeffs_recursive,
                     compose_inverse_check)
from .symbolic import SymbolicDomain
from . import periods as per

SCHEMA = 1


# ---------------------------------------------------------------------------
# serialization


def rat(x):
    if x is None:
        return None
    x = Fraction(x)
    return {'num': str(x.numerator), 'den': str(x.denominator)}


def rat_text(x):
    return 'inf' if x is None else str(Fraction(x))


def elem_json(dom, x):
    if isinstance(x, RatFunc):
        F = x.K.F
        return {'num': format_poly(F, x.num), 'den': format_poly(F, x.den)}
    return {'value': dom.format(x)}


def emit(args, payload, lines):
    if args.format == 'json':
        out = {'schema': SCHEMA, 'command': args.command, 'config': config_of(args)}
        out.update(payload)
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def config_of(args):
    skip = {'func', 'format'}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# ---------------------------------------------------------------------------
# shared argument handling


def add_field_args(p):
    p.add_argument('--q', type=int, required=True, help='size of the constant field F_q')
    p.add_argument('--p', type=int, help='characteristic (checked against q)')
    p.add_argument('--modulus', help='ascending comma-separated coefficients of the F_q modulus over F_p')


def add_module_args(p, max_rank=4):
    p.add_argument('--rank', type=int, help='module rank (defaults to the number of coefficients given)')
    for i in range(1, max_rank + 1):
        p.add_argument(f'--A{i}', dest=f'A{i}', help=f'coefficient A_{i} (rational function in T)')
    p.add_argument('--A', dest='A', help='rank-2 alias for A_1')
    p.add_argument('--B', dest='B', help='rank-2 alias for A_2')
    p.add_argument('--sqrt-of', dest='sqrt_of',
                   help='adjoin y with y^2 = D (odd q); coefficients may then use y')


def add_format(p):
    p.add_argument('--format', choices=('text', 'json'), default='text')


def build_K(args):
    p, k = prime_power(args.q)
    if args.p is not None and args.p != p:
        raise DomainError(f'q={args.q} is not a power of p={args.p}')
    modulus = None
    if args.modulus:
        modulus = [int(c) for c in args.modulus.split(',')]
    return make_K(args.q, modulus)


def coefficient_texts(args):
    texts = {}
    for i in range(1, 5):
        v = getattr(args, f'A{i}', None)
        if v is not None:
            texts[i] = v
    if getattr(args, 'A', None) is not None:
        texts[1] = args.A
    if getattr(args, 'B', None) is not None:
        texts[2] = args.B
    return texts


def build_module(args, allow_symbolic=False):
    """(phi, K); a module with symbolic coefficients when none are given."""
    K = build_K(args)
    texts = coefficient_texts(args)
    rank = args.rank or (max(texts) if texts else None)
    if rank is None or rank < 1:
        raise DomainError('give --rank or module coefficients')
    if not texts:
        if not allow_symbolic:
            raise DomainError('this command needs explicit coefficients')
        S = SymbolicDomain(K, rank, [f'A{i}' for i in range(1, rank + 1)])
        return DrinfeldModule(S, S.gens()), K
    if max(texts) > rank:
        raise DomainError(f'coefficient A_{max(texts)} given for rank {rank}')
    dom = QuadraticDomain(K, args.sqrt_of) if getattr(args, 'sqrt_of', None) else K
    coeffs = [dom.parse(texts[i]) if i in texts else dom.zero() for i in range(1, rank + 1)]
    return DrinfeldModule(dom, coeffs), K


def need_rank2(phi):
    if phi.rank != 2:
        raise DomainError('this command is for rank-2 modules')


# ---------------------------------------------------------------------------
# commands


def cmd_partitions(args):
    parts = list(enumerate_partitions(args.r, args.n))
    lines = [] if args.count_only else [str(S) for S in parts]
    lines.append(str(len(parts)))
    emit(args, {'partitions': None if args.count_only else [[list(s) for s in S.sets] for S in parts],
                'count': len(parts)}, lines)
    return 0


def _coeff_listing(phi, N, kind, mode):
    fns = {'exp': (exp_coeffs_formula, exp_coeffs_recursive), 'log': (log_coeffs_formula, log_coeffs_recursive)}
    formula, recursive = fns[kind]
    name = 'alpha' if kind == 'exp' else 'beta'
    res = {}
    if mode in ('formula', 'both'):
        res['formula'] = formula(phi, N)
    if mode in ('recursive', 'both'):
        res['recursive'] = recursive(phi, N)
    dom = phi.dom
    lines, payload = [], {'coefficients': {}}
    for m, co in res.items():
        rows = []
        for n in range(N + 1):
            text = dom.format(co[n])
            lines.append(f'{m} {name}_{n} = {text}' + (f'  [{co.summands[n]} summands]' if co.summands else ''))
            row = {'n': n, 'value': elem_json(dom, co[n])}
            if co.summands:
                row['summands'] = co.summands[n]
            rows.append(row)
        payload['coefficients'][m] = rows
    if mode == 'both':
        same = all(dom.is_zero(res['formula'][n] - res['recursive'][n]) for n in range(N + 1))
        lines.append(f'formula == recursive: {same}')
        payload['agree'] = same
        if not same:
            return payload, lines, 1
    return payload, lines, 0


def _cmd_coeffs(args, kind):
    phi, _ = build_module(args, allow_symbolic=True)
    payload, lines, code = _coeff_listing(phi, args.n, kind, args.mode)
    emit(args, payload, lines)
    return code


def cmd_exp_coeffs(args):
    return _cmd_coeffs(args, 'exp')


def cmd_log_coeffs(args):
    return _cmd_coeffs(args, 'log')


def analysis_report(an):
    lines = [f'v(A) = {rat_text(an.vA)}', f'v(B) = {rat_text(an.vB)}', f'v(j) = {rat_text(an.vj)}',
             f'rho_A = {rat_text(an.rho_A)}', f'rho_B = {rat_text(an.rho_B)}', f'rho = {rat_text(an.rho)}',
             f'case: {an.case}',
             'torsion valuations: ' + ', '.join(f'{rat_text(v)} (x{c})' for v, c in an.torsion_valuations())]
    payload = {'vA': rat(an.vA), 'vB': rat(an.vB), 'vj': rat(an.vj), 'rho_A': rat(an.rho_A),
               'rho_B': rat(an.rho_B), 'rho': rat(an.rho), 'case': an.case,
               'torsion_valuations': [{'valuation': rat(v), 'count': c} for v, c in an.torsion_valuations()]}
    return payload, lines


def cmd_valuations(args):
    phi, _ = build_module(args)
    need_rank2(phi)
    an = per.analyze(phi)
    payload, lines = analysis_report(an)
    beta = log_coeffs_recursive(phi, args.n)
    alpha = exp_coeffs_recursive(phi, args.n)
    rows, ok = [], True
    for n in range(args.n + 1):
        vb = None if phi.dom.is_zero(beta[n]) else phi.dom.valuation(beta[n])
        va = None if phi.dom.is_zero(alpha[n]) else phi.dom.valuation(alpha[n])
        pred, exact = per.beta_valuation(n, an)
        good = (vb == pred) if exact else (vb is None or vb >= pred)
        ok &= good
        lines.append(f'n={n} v(alpha_n)={rat_text(va)} v(beta_n)={rat_text(vb)} '
                     f'predicted={rat_text(pred)}{"" if exact else " (lower bound)"} {"ok" if good else "MISMATCH"}')
        rows.append({'n': n, 'v_alpha': rat(va), 'v_beta': rat(vb), 'predicted': rat(pred),
                     'exact': exact, 'ok': good})
    payload['rows'] = rows
    emit(args, payload, lines)
    return 0 if ok else 1


def torsion_report(phi, b):
    F = b.field
    coeffs = per.local_module(phi, F)
    names = ('delta', 'zeta')
    lines = [f'field: e={F.e} m={F.m} precision={F.cap}', f'convention: {b.convention}', f'method: {b.method}']
    payload = {'field': {'e': F.e, 'm': F.m, 'precision': F.cap}, 'convention': b.convention, 'method': b.method}
    for name, x in zip(names, (b.delta, b.zeta)):
        r = per.residual_valuation(coeffs, x)
        lines.append(f'{name} = {format_local(x)}')
        lines.append(f'v({name}) = {x.valuation()}  v(f({name})) >= {rat_text(r)}')
        payload[name] = {'value': format_local(x), 'valuation': rat(x.valuation()), 'residual': rat(r)}
    return payload, lines


def cmd_torsion(args):
    phi, _ = build_module(args)
    need_rank2(phi)
    b = per.torsion_basis(phi, args.precision, args.convention)
    payload, lines = torsion_report(phi, b)
    emit(args, payload, lines)
    return 0


def cmd_periods(args):
    phi, _ = build_module(args)
    need_rank2(phi)
    an = per.analyze(phi)
    payload, lines = ({}, []) if not args.case_report else analysis_report(an)
    b = per.torsion_basis(phi, args.precision, args.convention)
    F = b.field
    lines.append(f'field: e={F.e} m={F.m} precision={F.cap}')
    payload['field'] = {'e': F.e, 'm': F.m, 'precision': F.cap}
    P = per.periods(phi, basis=b)
    for name, lam, method in (('lambda1', P.lambda1, P.methods[0]), ('lambda2', P.lambda2, P.methods[1])):
        if lam is None:
            lines.append(f'{name}: {P.reason}')
            payload[name] = {'available': False, 'reason': P.reason}
            continue
        lines.append(f'{name} = {format_local(lam)}')
        lines.append(f'v({name}) = {lam.valuation()}  method: T log  precision: O(u^{lam.prec})')
        payload[name] = {'available': True, 'value': format_local(lam), 'valuation': rat(lam.valuation()),
                         'method': method, 'precision': rat(lam.precision())}
    if an.case == per.CASE_BELOW and b.convention == 'low':
        f = per.frak_f_period(phi, b)
        lines.append(f'analytic period series: valuation {f.valuation()}, '
                     f'agrees with -lambda1: {f.agrees_with(-P.lambda1)}')
        payload['analytic_period'] = {'value': format_local(f), 'valuation': rat(f.valuation()),
                                      'agrees_with_minus_lambda1': f.agrees_with(-P.lambda1)}
    if args.case_report:
        lines.append(f'period valuation {rat_text(an.period_valuation())}')
        ok, reason = an.second_generator()
        lines.append('second generator: ' + ('computable' if ok else reason))
        payload['period_valuation'] = rat(an.period_valuation())
    emit(args, payload, lines)
    return 0 if P.lambda2 is not None else 1


def cmd_multinomial(args):
    phi, _ = build_module(args, allow_symbolic=True)
    dom = phi.dom
    m, n = args.m, args.n
    ns = range(phi.rank * m + 1) if n is None else [n]
    lines, rows, ok = [], [], True
    table = c_recursive(phi, m) if args.mode in ('recursive', 'both') else None
    for k in ns:
        row = {'n': k}
        if args.mode in ('formula', 'both'):
            v = c_formula(phi, k, m)
            row['formula'] = elem_json(dom, v)
            lines.append(f'c({k};{m}) = {dom.format(v)}')
        if table is not None:
            w = table.c(k, m)
            row['recursive'] = elem_json(dom, w)
            if args.mode == 'recursive':
                lines.append(f'c({k};{m}) = {dom.format(w)}')
            else:
                same = dom.is_zero(v - w)
                ok &= same
                row['agree'] = same
                lines.append(f'  recursion agrees: {same}')
        rows.append(row)
    emit(args, {'rows': rows}, lines)
    return 0 if ok else 1


def _ss_verdicts(phi, method):
    out = {}
    if method in ('formula', 'both'):
        out['formula'] = supersingular_test(phi)
    if method in ('direct', 'both'):
        out['direct'] = supersingular_direct(phi)
    return out


def cmd_supersingular(args):
    K = build_K(args)
    if args.prime:
        primes = [PrimeSpec(K, args.prime)]
    elif args.degree and args.scan:
        primes = monic_irreducibles(K, args.degree)
    else:
        raise DomainError('give --prime or --degree with --scan')
    if not args.all_j and (args.A is None or args.B is None):
        raise DomainError('give --A and --B, or --all-j')
    lines, rows, code = [], [], 0
    for prime in primes:
        R = ResidueField(prime)
        if args.all_j:
            cases = [(j, j_representative(R, j)) for j in R.elements()]
        else:
            try:
                A, B = R.from_K(K.parse(args.A)), R.from_K(K.parse(args.B))
                if R.is_zero(B):
                    raise DomainError(f'B vanishes modulo {prime}; the reduction is not rank 2')
                phi = DrinfeldModule(R, [A, B])
                cases = [(phi.j_invariant(), phi)]
            except DomainError as exc:
                lines.append(f'prime={prime} bad reduction: {exc}')
                rows.append({'prime': str(prime), 'bad_reduction': str(exc)})
                code = max(code, 1) if args.prime else code
                continue
        for j, phi in cases:
            v = _ss_verdicts(phi, args.method)
            agree = len(set(v.values())) == 1
            verdict = next(iter(v.values()))
            text = f'prime={prime} j={R.format(j)} supersingular={"yes" if verdict else "no"}'
            if args.method == 'both':
                text += f' methods_agree={agree}'
            lines.append(text)
            rows.append({'prime': str(prime), 'j': R.format(j), 'supersingular': verdict,
                         'methods': v, 'agree': agree})
            if not agree:
                code = 1
    emit(args, {'rows': rows}, lines)
    return code


# ---------------------------------------------------------------------------
# verify: the oracle suite


def _random_module(K, rank, rng):
    coeffs = [K.random_poly(rng, 2, nonzero=(i == rank - 1)) for i in range(rank)]
    return DrinfeldModule(K, coeffs)


def _check_partitions():
    return all(count(r, n) == rfib(r, n) and count(r, n) <= 2 ** n for r in range(1, 5) for n in range(13))


def _check_carlitz():
    for q in (2, 3):
        K = make_K(q)
        phi = DrinfeldModule(K, [K.one()])
        a, b = exp_coeffs_formula(phi, 8), log_coeffs_formula(phi, 8)
        for n in range(9):
            if a[n] * carlitz_D(n, K) != K.one() or b[n] * carlitz_L(n, K) != K.one():
                return False
    return True


def _check_oracles(rng):
    for q in (2, 3):
        K = make_K(q)
        for rank in (1, 2, 3):
            phi = _random_module(K, rank, rng)
            N = 5
            if exp_coeffs_formula(phi, N).coeffs != exp_coeffs_recursive(phi, N).coeffs:
                return False
            if log_coeffs_formula(phi, N).coeffs != log_coeffs_recursive(phi, N).coeffs:
                return False
            for m in range(4):
                if [c_formula(phi, n, m) for n in range(rank * m + 1)] != skew_power_coeffs(phi, m):
                    return False
    return True


def _check_composition():
    for q in (2, 3):
        S = SymbolicDomain(make_K(q), 2, ('A', 'B'))
        phi = DrinfeldModule(S, S.gens())
        if not compose_inverse_check(exp_coeffs_formula(phi, 4), log_coeffs_formula(phi, 4), 4):
            return False
    return True


def _check_valuation_law():
    for q in (2, 3):
        K = make_K(q)
        for vA in range(-3, 2):
            for vB in range(-3, 2):
                phi = DrinfeldModule(K, [K.monomial(1, -vA) if vA <= 0 else K.one() / K.monomial(1, vA),
                                         K.monomial(1, -vB) if vB <= 0 else K.one() / K.monomial(1, vB)])
                an = per.analyze(phi)
                beta = log_coeffs_recursive(phi, 6)
                for n in range(7):
                    pred, exact = per.beta_valuation(n, an)
                    v = None if beta[n].is_zero() else Fraction(beta[n].valuation())
                    if exact and v != pred or not exact and v is not None and v < pred:
                        return False
    return True


def cm_example_module():
    K = make_K(3)
    R = QuadraticDomain(K, K.parse('T^3 + 2*T + 2'))
    return DrinfeldModule(R, [R.parse('y*(T^3 + 2*T)'), R.one()])


def _check_cm_example():
    phi = cm_example_module()
    an = per.analyze(phi)
    if an.vj != -18:
        return False
    beta = log_coeffs_recursive(phi, 6)
    alpha = exp_coeffs_recursive(phi, 6)
    dom = phi.dom
    for n in range(1, 7):
        if dom.valuation(beta[n]) != Fraction(-3 * (3 ** n - 1), 4):
            return False
        if dom.valuation(alpha[n]) != Fraction((n - 2) * 3 ** n, 2):
            return False
    b = per.torsion_basis(phi)
    if set(b.valuations()) != {Fraction(7, 4), Fraction(-3, 4)}:
        return False
    lam = per.frak_f_period(phi, b)
    return lam.valuation() == Fraction(3, 4) and per.frak_a_identity_check(phi, 5)[0]


def _check_supersingular():
    for q in (2, 3):
        K = make_K(q)
        for d in (1, 2):
            for prime in monic_irreducibles(K, d):
                R = ResidueField(prime)
                for j in R.elements():
                    phi = j_representative(R, j)
                    if supersingular_test(phi) != supersingular_direct(phi):
                        return False
        if not ss_degree4_reduction_check(monic_irreducibles(K, 4)[0]):
            return False
    return True


def cmd_verify(args):
    rng = random.Random(args.seed)
    checks = [
        ('partition counts = r-step Fibonacci', _check_partitions),
        ('Carlitz collapse alpha_n D_n = beta_n L_n = 1', _check_carlitz),
        ('formula = recursion, c(n;m) = skew powers', lambda: _check_oracles(rng)),
        ('log(exp(z)) = z through z^(q^4), symbolic rank 2', _check_composition),
        ('v(beta_n) matches the valuation law', _check_valuation_law),
        ('CM example at q=3 (valuations, torsion, period)', _check_cm_example),
        ('supersingularity formula = direct test', _check_supersingular),
    ]
    rows, lines, ok = [], [], True
    for name, fn in checks:
        t = time.perf_counter()
        try:
            res, detail = bool(fn()), ''
        except DrinfeldError as exc:
            res, detail = False, str(exc)
        ok &= res
        secs = time.perf_counter() - t
        lines.append(f'{"PASS" if res else "FAIL"}  {name}' + (f'  ({detail})' if detail else ''))
        rows.append({'check': name, 'pass': res, 'detail': detail, 'seconds': round(secs, 3)})
    emit(args, {'checks': rows, 'all_pass': ok}, lines)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(prog='drinfeld', description='Exact computations with Drinfeld modules over F_q[T].')
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('partitions', help='enumerate shadowed partitions P_r(n)')
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--count-only', action='store_true')
    add_format(p)
    p.set_defaults(func=cmd_partitions)

    for name, func in (('exp-coeffs', cmd_exp_coeffs), ('log-coeffs', cmd_log_coeffs)):
        p = sub.add_parser(name, help=f'coefficients of the {name[:3]} series')
        add_field_args(p)
        add_module_args(p)
        p.add_argument('--n', type=int, required=True, help='largest index')
        p.add_argument('--mode', choices=('formula', 'recursive', 'both'), default='formula')
        add_format(p)
        p.set_defaults(func=func)

    p = sub.add_parser('valuations', help='rank-2 valuation analysis and v(beta_n) check')
    add_field_args(p)
    add_module_args(p, 2)
    p.add_argument('--n', type=int, default=6)
    add_format(p)
    p.set_defaults(func=cmd_valuations)

    for name, func in (('torsion', cmd_torsion), ('periods', cmd_periods)):
        p = sub.add_parser(name, help=f'rank-2 {name}')
        add_field_args(p)
        add_module_args(p, 2)
        p.add_argument('--precision', type=int, default=DEFAULT_PRECISION,
                       help='relative precision in digits of the uniformizer')
        p.add_argument('--convention', choices=('low', 'high'), default='low',
                       help='which torsion slope supplies delta in the two-slope case')
        if name == 'periods':
            p.add_argument('--case-report', action='store_true')
        add_format(p)
        p.set_defaults(func=func)

    p = sub.add_parser('multinomial', help='coefficients c(n;m) of phi_(T^m)')
    add_field_args(p)
    add_module_args(p)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--n', type=int)
    p.add_argument('--mode', choices=('formula', 'recursive', 'both'), default='formula')
    add_format(p)
    p.set_defaults(func=cmd_multinomial)

    p = sub.add_parser('supersingular', help='rank-2 supersingularity at primes of A')
    add_field_args(p)
    p.add_argument('--prime')
    p.add_argument('--degree', type=int)
    p.add_argument('--scan', action='store_true')
    p.add_argument('--A')
    p.add_argument('--B')
    p.add_argument('--all-j', action='store_true')
    p.add_argument('--method', choices=('formula', 'direct', 'both'), default='formula')
    add_format(p)
    p.set_defaults(func=cmd_supersingular)

    p = sub.add_parser('verify', help='run the oracle suite')
    p.add_argument('--seed', type=int, default=0)
    add_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DrinfeldError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
