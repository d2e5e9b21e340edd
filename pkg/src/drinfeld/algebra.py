"""Exact arithmetic over F_q, A = F_q[T], K = F_q(T), residue fields A/p and
twisted polynomials L{tau}.

Finite fields and polynomials over them are backed by python-flint.  Every
coefficient domain exposes the same small interface (``zero``, ``one``,
``T``, ``frob``, ``is_zero``, ``bracket_frob``, ``valuation``) so that the
series and multinomial code can run unchanged over K, over a residue field,
over a quadratic extension of K or over truncated local series.
"""

import atexit
from fractions import Fraction
from functools import lru_cache
import gc
import re

import flint

# python-flint objects left in cycles at shutdown can be torn down after their
# contexts; skip the final collection.
atexit.register(gc.freeze)

from .errors import DomainError, ValuationError, check_degree


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q):
    """Return (p, k) with q = p**k, or raise."""
    if q < 2:
        raise DomainError(f'q={q} is not a prime power')
    p = 2
    while q % p:
        p += 1
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise DomainError(f'q={q} is not a prime power')
    return p, k


def _irreducible_mod_p(coeffs, p):
    return flint.fmpz_mod_poly_ctx(p)(list(coeffs)).is_irreducible()


@lru_cache(maxsize=None)
def smallest_irreducible(p, k):
    """Monic irreducible of degree k over F_p with smallest key sum c_i p^i.

    Returned as the coefficient tuple (c_0, ..., c_{k-1}, 1).
    """
    for key in range(p ** k):
        low = [(key // p ** i) % p for i in range(k)]
        if _irreducible_mod_p(low + [1], p):
            return tuple(low + [1])
    raise AssertionError('unreachable: irreducibles exist in every degree')


# A python-flint polynomial whose context dies in the same garbage cycle can
# crash the collector, so contexts are created once and kept for the process.
_CONTEXTS = {}


def _contexts(p, modulus, name):
    key = (p, modulus, name)
    if key not in _CONTEXTS:
        ctx = flint.fq_default_ctx(modulus=flint.fmpz_mod_poly_ctx(p)(list(modulus)), var=name)
        _CONTEXTS[key] = (ctx, flint.fq_default_poly_ctx(ctx))
    return _CONTEXTS[key]


class FiniteField:
    """F_{p^k} in the power basis of a root g of an explicit modulus.

    Elements are flint ``fq_default`` values.  The total order used for
    canonical choices is the integer key sum c_i p^i of the power-basis
    coordinates.
    """

    def __init__(self, p, k=1, modulus=None, name='g'):
        if not is_prime(p):
            raise DomainError(f'p={p} is not prime')
        if k < 1:
            raise DomainError('extension degree must be positive')
        modulus = tuple(int(c) % p for c in (modulus or smallest_irreducible(p, k)))
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise DomainError('modulus must be monic of degree k')
        if not _irreducible_mod_p(list(modulus), p):
            raise DomainError(f'modulus {modulus} is reducible over F_{p}')
        self.p, self.k, self.order = p, k, p ** k
        self.modulus = modulus
        self.name = name
        self.ctx, self.poly_ctx = _contexts(p, modulus, name)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f'FiniteField({self.p}, {self.k}, modulus={self.modulus})'

    def __call__(self, x):
        if isinstance(x, (list, tuple)):
            return self.ctx([int(c) for c in x]) if self.k > 1 else self.ctx(int(x[0]) if x else 0)
        return self.ctx(x)

    @property
    def zero(self):
        return self.ctx.zero()

    @property
    def one(self):
        return self.ctx.one()

    def gen(self):
        if self.k == 1:
            return self.ctx(-self.modulus[0])
        return self.ctx.gen()

    def coords(self, x):
        c = [int(a) for a in x.to_list()]
        return tuple(c + [0] * (self.k - len(c)))

    def key(self, x):
        return sum(c * self.p ** i for i, c in enumerate(self.coords(x)))

    def from_key(self, key):
        return self([(key // self.p ** i) % self.p for i in range(self.k)])

    def elements(self):
        return [self.from_key(i) for i in range(self.order)]

    def frob(self, x, e=1):
        """x -> x^(p^e)."""
        e %= self.k
        return x.frobenius(e) if e else x

    def sorted_roots(self, poly):
        """Distinct roots of a flint polynomial over this field, canonical order."""
        if poly.is_zero():
            raise DomainError('roots of the zero polynomial')
        return sorted((r for r, _ in poly.roots()), key=self.key)

    def poly(self, coeffs):
        return self.poly_ctx([self.ctx(c) if not isinstance(c, flint.fq_default) else c for c in coeffs])

    def embedding_into(self, big):
        """Field embedding self -> big sending g to the smallest root of the modulus."""
        if big.p != self.p or big.k % self.k:
            raise DomainError(f'cannot embed F_{self.order} into F_{big.order}')
        if self.k == 1:
            return lambda x: big(int(x))
        roots = big.sorted_roots(big.poly(list(self.modulus)))
        image = roots[0]
        powers = [big.one]
        for _ in range(self.k - 1):
            powers.append(powers[-1] * image)
        cache = {}

        def emb(x):
            key = self.key(x)
            if key not in cache:
                acc = big.zero
                for c, pw in zip(self.coords(x), powers):
                    if c:
                        acc += pw * c
                cache[key] = acc
            return cache[key]
        return emb

    def format_elem(self, x):
        c = self.coords(x)
        if self.k == 1:
            return str(c[0])
        terms = []
        for i in reversed(range(self.k)):
            if not c[i]:
                continue
            if i == 0:
                terms.append(str(c[i]))
            else:
                mon = self.name if i == 1 else f'{self.name}^{i}'
                terms.append(mon if c[i] == 1 else f'{c[i]}*{mon}')
        if not terms:
            return '0'
        return terms[0] if len(terms) == 1 else '(' + ' + '.join(terms) + ')'


# ---------------------------------------------------------------------------
# Text parsing shared by polynomials, residue field elements and local series.

_TOKEN = re.compile(r'\s*(?:(\d+)|([A-Za-z_]\w*)|(\^|\*|\+|-|\(|\)|/))')


def tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f'cannot parse {text!r} at position {pos}')
        num, name, op = m.groups()
        out.append(('num', int(num)) if num is not None else ('name', name) if name else ('op', op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class ExprParser:
    """Recursive-descent parser for + - * ^ / and parentheses.

    ``atoms`` maps a variable name to a value in the target ring; ``const``
    converts an integer.  Exponents must be non-negative integers (negative
    exponents are allowed only if ``allow_negative`` is set, for u in local
    series).
    """

    def __init__(self, atoms, const, allow_negative=False, power=None):
        self.atoms, self.const = atoms, const
        self.allow_negative = allow_negative
        self.power = power or (lambda b, e: b ** e)

    def parse(self, text):
        self.toks, self.i = tokenize(text), 0
        if not self.toks:
            raise DomainError('empty expression')
        val = self.expr()
        if self.i != len(self.toks):
            raise DomainError(f'trailing input in {text!r}')
        return val

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise DomainError(f'unexpected token {tok[1]!r}')
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() == ('op', '-'):
            self.take()
            sign = -1
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek() in (('op', '+'), ('op', '-')):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == '+' else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in (('op', '*'), ('op', '/')):
            op = self.take()[1]
            rhs = self.factor()
            val = val * rhs if op == '*' else val / rhs
        return val

    def factor(self):
        base = self.atom()
        if self.peek() == ('op', '^'):
            self.take()
            neg = False
            if self.peek() == ('op', '-'):
                if not self.allow_negative:
                    raise DomainError('negative exponent')
                self.take()
                neg = True
            if self.peek() == ('op', '('):
                self.take()
                if self.peek() == ('op', '-') and self.allow_negative:
                    self.take()
                    neg = not neg
                e = self.take('num')[1]
                self.take('op', ')')
            else:
                e = self.take('num')[1]
            base = self.power(base, -e if neg else e)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == 'num':
            self.take()
            return self.const(val)
        if kind == 'name':
            self.take()
            if val not in self.atoms:
                raise DomainError(f'unknown symbol {val!r}')
            return self.atoms[val]
        if (kind, val) == ('op', '('):
            self.take()
            v = self.expr()
            self.take('op', ')')
            return v
        raise DomainError(f'unexpected token {val!r}')


# ---------------------------------------------------------------------------
# A = F_q[T] and K = F_q(T)


def poly_degree(f):
    return f.degree() if not f.is_zero() else -1


def format_poly(field, f, var='T'):
    """Descending ``c*T^e`` terms joined by ``+``; ``0`` for the zero polynomial."""
    if f.is_zero():
        return '0'
    coeffs = f.coeffs()
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c.is_zero():
            continue
        cs = field.format_elem(c)
        if e == 0:
            terms.append(cs)
        else:
            mon = var if e == 1 else f'{var}^{e}'
            terms.append(mon if cs == '1' else f'{cs}*{mon}')
    return ' + '.join(terms)


class RatFunc:
    """Element of K = F_q(T): reduced fraction with monic denominator."""

    __slots__ = ('K', 'num', 'den')

    def __init__(self, K, num, den=None, reduced=False):
        self.K = K
        if den is None:
            den = K.poly_one
        if den.is_zero():
            raise ZeroDivisionError('zero denominator')
        if not reduced:
            if num.is_zero():
                den = K.poly_one
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_division(g)
                    den = den.exact_division(g)
            lc = den.leading_coefficient()
            if not lc.is_one():
                inv = lc.inverse()
                num, den = num * inv, den * inv
        self.num, self.den = num, den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        return self.K(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFunc(self.K, a + c, b)
        if b.is_one():
            return RatFunc(self.K, a * d + c, d, reduced=True)
        if d.is_one():
            return RatFunc(self.K, a + c * b, b, reduced=True)
        g = b.gcd(d)
        if g.is_one():
            return RatFunc(self.K, a * d + c * b, b * d, reduced=True)
        bg, dg = b.exact_division(g), d.exact_division(g)
        num = a * dg + c * bg
        if num.is_zero():
            return self.K.zero()
        h = num.gcd(g)
        if not h.is_one():
            num = num.exact_division(h)
            g = g.exact_division(h)
        return RatFunc(self.K, num, bg * dg * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.K, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return self.K.zero()
        g1, g2 = a.gcd(d), c.gcd(b)
        if not g1.is_one():
            a, d = a.exact_division(g1), d.exact_division(g1)
        if not g2.is_one():
            c, b = c.exact_division(g2), b.exact_division(g2)
        check_degree(max(a.degree() + c.degree(), b.degree() + d.degree()))
        num, den = a * c, b * d
        lc = den.leading_coefficient()
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num * inv, den * inv
        return RatFunc(self.K, num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError('inverse of zero')
        return RatFunc(self.K, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.K.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self.K(other)
            except (TypeError, DomainError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def frob(self, j=1):
        """x -> x^(q^j); coefficients are fixed by Frobenius so T -> T^(q^j)."""
        if j == 0:
            return self
        m = self.K.q ** j
        check_degree(max(self.num.degree(), self.den.degree()) * m)
        return RatFunc(self.K, self.num.inflate(m), self.den.inflate(m), reduced=True)

    def valuation(self):
        if self.num.is_zero():
            raise ValuationError('valuation of zero')
        return self.den.degree() - self.num.degree()

    def is_poly(self):
        return self.den.is_one()

    def __str__(self):
        n = format_poly(self.K.F, self.num)
        if self.den.is_one():
            return n
        return f'({n})/({format_poly(self.K.F, self.den)})'

    __repr__ = __str__


class RationalFunctionField:
    """The field K = F_q(T), also serving as the coefficient domain for series."""

    def __init__(self, F):
        self.F = F
        self.q = F.order
        self.p = F.p
        self.poly_ctx = F.poly_ctx
        self.poly_one = F.poly_ctx.one()
        self._zero = RatFunc(self, F.poly_ctx.zero(), reduced=True)
        self._one = RatFunc(self, self.poly_one, reduced=True)
        self._T = RatFunc(self, F.poly_ctx([0, 1]), reduced=True)
        self._tq = {}

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and self.F == other.F

    def __hash__(self):
        return hash(('K', self.F))

    def __repr__(self):
        return f'RationalFunctionField(q={self.q})'

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return RatFunc(self, self.poly_ctx([x % self.p]), reduced=True)
        if isinstance(x, flint.fq_default):
            return RatFunc(self, self.poly_ctx([x]), reduced=True)
        if isinstance(x, flint.fq_default_poly):
            return RatFunc(self, x, reduced=True)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f'cannot convert {type(x).__name__} to RatFunc')

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def T(self):
        return self._T

    def poly(self, coeffs):
        return RatFunc(self, self.F.poly(coeffs), reduced=True)

    def monomial(self, c, e):
        check_degree(e)
        return RatFunc(self, self.poly_ctx([0] * e + [c]) if e else self.poly_ctx([c]), reduced=True)

    def T_qpow(self, n):
        """T^(q^n)."""
        if n not in self._tq:
            self._tq[n] = self.monomial(1, self.q ** n)
        return self._tq[n]

    def frob(self, x, j=1):
        return x.frob(j)

    def is_zero(self, x):
        return x.is_zero()

    def valuation(self, x):
        return Fraction(x.valuation())

    def bracket_frob(self, n, i):
        """[n-i]^(q^i) = T^(q^n) - T^(q^i)."""
        return self.T_qpow(n) - self.T_qpow(i)

    def from_K(self, x):
        return x

    def parse(self, text):
        return parse_ratfunc(self, text)

    def format(self, x):
        return str(x)

    def random_poly(self, rng, max_degree, monic=False, nonzero=True):
        while True:
            coeffs = [self.F.from_key(rng.randrange(self.F.order)) for _ in range(max_degree + 1)]
            if monic:
                coeffs[-1] = self.F.one
            x = self.poly(coeffs)
            if not (nonzero and x.is_zero()):
                return x


def parse_ratfunc(K, text):
    F = K.F
    atoms = {'T': K.T()}
    if F.k > 1:
        atoms[F.name] = K(F.gen())
    parser = ExprParser(atoms, lambda n: K(n))
    return parser.parse(text)


def make_K(q, modulus=None):
    p, k = prime_power(q)
    return RationalFunctionField(FiniteField(p, k, modulus))


def bracket(n, K):
    """[n] = T^(q^n) - T as an element of K."""
    if n < 1:
        raise DomainError('bracket needs n >= 1')
    return K.bracket_frob(n, 0)


def carlitz_D(n, K):
    """D_n = [n] D_{n-1}^q, D_0 = 1."""
    if n < 0:
        raise DomainError('D_n needs n >= 0')
    d = K.one()
    for i in range(1, n + 1):
        d = bracket(i, K) * K.frob(d, 1)
    return d


def carlitz_L(n, K):
    """L_n = -[n] L_{n-1}, L_0 = 1."""
    if n < 0:
        raise DomainError('L_n needs n >= 0')
    ell = K.one()
    for i in range(1, n + 1):
        ell = -(bracket(i, K) * ell)
    return ell


def rat_valuation(x):
    return x.valuation()


# ---------------------------------------------------------------------------
# Residue fields A/p (and extensions), flattened into one F_{p^(k d e)}.


class PrimeSpec:
    """A monic irreducible p in A of degree d."""

    def __init__(self, K, poly):
        if isinstance(poly, str):
            poly = K.parse(poly)
        if isinstance(poly, RatFunc):
            if not poly.is_poly():
                raise DomainError('a prime must be a polynomial')
            poly = poly.num
        if poly.is_zero() or poly.degree() < 1:
            raise DomainError('a prime must have positive degree')
        if not poly.leading_coefficient().is_one():
            raise DomainError('prime must be monic')
        if not poly.is_irreducible():
            raise DomainError(f'{format_poly(K.F, poly)} is not irreducible')
        self.K, self.poly, self.d = K, poly, poly.degree()

    def coeffs(self):
        """mu_0..mu_d as elements of F_q."""
        c = self.poly.coeffs()
        return c + [self.K.F.zero] * (self.d + 1 - len(c))

    def __str__(self):
        return format_poly(self.K.F, self.poly)

    def __eq__(self, other):
        return isinstance(other, PrimeSpec) and self.K == other.K and self.poly == other.poly

    def __hash__(self):
        return hash(str(self))


def monic_irreducibles(K, d):
    """All monic irreducibles of degree d over F_q, in key order."""
    F = K.F
    out = []
    for key in range(F.order ** d):
        low = [F.from_key((key // F.order ** i) % F.order) for i in range(d)]
        f = F.poly(low + [F.one])
        if f.is_irreducible():
            out.append(PrimeSpec(K, f))
    return out


class ResidueField:
    """L_p = A/p extended by degree ``ext``: F_{q^(d*ext)} with T -> a canonical root of p."""

    def __init__(self, prime, ext=1):
        K = prime.K
        self.K, self.prime, self.ext = K, prime, ext
        base = K.F
        self.q = K.q
        self.field = FiniteField(base.p, base.k * prime.d * ext)
        self.F = self.field
        self.embed_base = base.embedding_into(self.field)
        pimg = self.field.poly([self.embed_base(c) for c in prime.coeffs()])
        self.t = self.field.sorted_roots(pimg)[0]
        self._bk = base.k

    def __repr__(self):
        return f'ResidueField({self.prime}, ext={self.ext})'

    def zero(self):
        return self.field.zero

    def one(self):
        return self.field.one

    def T(self):
        return self.t

    def frob(self, x, j=1):
        return self.field.frob(x, self._bk * j)

    def is_zero(self, x):
        return x.is_zero()

    def bracket_frob(self, n, i):
        return self.frob(self.t, n) - self.frob(self.t, i)

    def valuation(self, x):
        raise DomainError('no valuation on a residue field')

    def reduce_poly(self, f):
        """Image of a polynomial in A (flint poly over F_q) under T -> t."""
        acc = self.field.zero
        for c in reversed(f.coeffs()):
            acc = acc * self.t + self.embed_base(c)
        return acc

    def from_K(self, x):
        den = self.reduce_poly(x.den)
        if den.is_zero():
            raise DomainError(f'denominator vanishes modulo {self.prime}')
        return self.reduce_poly(x.num) / den

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return self.from_K(x)
        if isinstance(x, str):
            return self.from_K(self.K.parse(x))
        return self.field(x)

    def elements(self):
        return self.field.elements()

    def format(self, x):
        return self.field.format_elem(x)


def residue_reduce(x, prime, ext=1):
    R = ResidueField(prime, ext)
    if isinstance(x, RatFunc):
        return R.from_K(x)
    return R.reduce_poly(x)


# ---------------------------------------------------------------------------
# Twisted polynomials


class SkewPoly:
    """Finite sum c_i tau^i over a coefficient domain, with tau l = l^q tau."""

    __slots__ = ('dom', 'c')

    def __init__(self, dom, coeffs):
        coeffs = list(coeffs)
        while coeffs and dom.is_zero(coeffs[-1]):
            coeffs.pop()
        self.dom, self.c = dom, coeffs

    @classmethod
    def scalar(cls, dom, a):
        return cls(dom, [a])

    @classmethod
    def tau(cls, dom, i=1):
        return cls(dom, [dom.zero()] * i + [dom.one()])

    def degree(self):
        return len(self.c) - 1

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.dom.zero()

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return SkewPoly.scalar(self.dom, other)
        if other.dom is not self.dom and other.dom != self.dom:
            raise DomainError('skew polynomials over different domains')
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.c), len(other.c))
        return SkewPoly(self.dom, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return SkewPoly(self.dom, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        """Composition: (x tau^i)(y tau^j) = x y^(q^i) tau^(i+j)."""
        other = self._check(other)
        if not self.c or not other.c:
            return SkewPoly(self.dom, [])
        out = [self.dom.zero() for _ in range(len(self.c) + len(other.c) - 1)]
        for i, a in enumerate(self.c):
            if self.dom.is_zero(a):
                continue
            for j, b in enumerate(other.c):
                if self.dom.is_zero(b):
                    continue
                out[i + j] = out[i + j] + a * self.dom.frob(b, i)
        return SkewPoly(self.dom, out)

    def scale(self, a):
        return SkewPoly(self.dom, [a * x for x in self.c])

    def __eq__(self, other):
        other = self._check(other)
        return len(self.c) == len(other.c) and all(
            self.dom.is_zero(a - b) for a, b in zip(self.c, other.c))

    def __call__(self, x):
        """Evaluate as the additive polynomial sum c_i x^(q^i)."""
        acc = self.dom.zero()
        for i, a in enumerate(self.c):
            acc = acc + a * self.dom.frob(x, i)
        return acc

    def __repr__(self):
        return 'SkewPoly(' + ', '.join(map(str, self.c)) + ')'


def skew_mul(a, b):
    return a * b


class DrinfeldModule:
    """phi_T = T + sum A_i tau^i over a coefficient domain."""

    def __init__(self, dom, coeffs):
        coeffs = list(coeffs)
        if not coeffs or dom.is_zero(coeffs[-1]):
            raise DomainError('the top coefficient A_r must be nonzero')
        self.dom, self.A = dom, coeffs
        self.rank = len(coeffs)
        self.q = dom.q

    def phi_T(self):
        return SkewPoly(self.dom, [self.dom.T()] + self.A)

    def coeff(self, i):
        """A_i with A_0 = T."""
        return self.dom.T() if i == 0 else self.A[i - 1]

    def j_invariant(self):
        if self.rank != 2:
            raise DomainError('j-invariant is defined here for rank 2 only')
        A, B = self.A
        return self.dom.frob(A, 1) * A / B

    def f_poly(self):
        """The additive polynomial f(x) = phi_T(x) as a SkewPoly."""
        return self.phi_T()

    def over(self, dom, convert=None):
        convert = convert or dom.from_K
        return DrinfeldModule(dom, [convert(a) for a in self.A])

    def __repr__(self):
        return f'DrinfeldModule(rank={self.rank}, A={self.A})'


def drinfeld_action(phi, a):
    """phi_a for a in A (a RatFunc polynomial or flint poly), by Horner in phi_T."""
    if isinstance(a, RatFunc):
        if not a.is_poly():
            raise DomainError('phi_a needs a in A')
        a = a.num
    dom = phi.dom
    pt = phi.phi_T()
    res = SkewPoly(dom, [])
    coeffs = a.coeffs()
    for c in reversed(coeffs):
        res = pt * res + SkewPoly.scalar(dom, dom_scalar(dom, c))
    return res


def dom_scalar(dom, c):
    """Image of a constant c in F_q inside a coefficient domain."""
    if hasattr(dom, 'scalar'):
        return dom.scalar(c)
    if isinstance(dom, RationalFunctionField):
        return dom(c)
    if isinstance(dom, ResidueField):
        return dom.embed_base(c)
    raise TypeError(f'no scalar map for {dom!r}')
