"""Polynomials in indeterminates A_1..A_r with coefficients in a base domain.

Used to compare coefficient formulas term by term with their printed form and
to carry out identities with generic module coefficients.  Only addition,
multiplication, Frobenius twists and division by base scalars are needed.
"""

from .errors import DomainError


class SymPoly:
    __slots__ = ('dom', 'terms')

    def __init__(self, dom, terms):
        base = dom.base
        self.dom = dom
        self.terms = {e: c for e, c in terms.items() if not base.is_zero(c)}

    def _coerce(self, other):
        if isinstance(other, SymPoly):
            return other
        return self.dom.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return SymPoly(self.dom, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.dom, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SymPoly):
            if self.dom.base.is_zero(other):
                return self.dom.zero()
            return SymPoly(self.dom, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return SymPoly(self.dom, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SymPoly):
            scalar = other.as_scalar()
            if scalar is None:
                raise DomainError('division by a non-constant symbolic polynomial')
            other = scalar
        inv = self.dom.base.one() / other
        return SymPoly(self.dom, {e: c * inv for e, c in self.terms.items()})

    def __pow__(self, e):
        result = self.dom.one()
        for _ in range(e):
            result = result * self
        return result

    def as_scalar(self):
        if not self.terms:
            return self.dom.base.zero()
        if list(self.terms) == [self.dom.zero_exp]:
            return self.terms[self.dom.zero_exp]
        return None

    def frob(self, j=1):
        if j == 0:
            return self
        m = self.dom.q ** j
        base = self.dom.base
        return SymPoly(self.dom, {tuple(a * m for a in e): base.frob(c, j) for e, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        other = self._coerce(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = '*'.join(f'{n}^{a}' if a > 1 else n for n, a in zip(self.dom.names, e) if a)
            c = self.dom.base.format(self.terms[e])
            parts.append(f'({c})*{mon}' if mon else f'({c})')
        return ' + '.join(parts)

    __repr__ = __str__


class SymbolicDomain:
    """Coefficient domain base[A_1, ..., A_r]."""

    def __init__(self, base, r, names=None):
        self.base = base
        self.r = r
        self.q = base.q
        self.names = tuple(names or [f'A{i}' for i in range(1, r + 1)])
        self.zero_exp = (0,) * r

    def const(self, c):
        if not isinstance(c, SymPoly):
            if isinstance(c, int):
                c = self.base.one() * c if c else self.base.zero()
            return SymPoly(self, {self.zero_exp: c})
        return c

    def zero(self):
        return SymPoly(self, {})

    def one(self):
        return self.const(self.base.one())

    def T(self):
        return self.const(self.base.T())

    def gens(self):
        out = []
        for i in range(self.r):
            e = [0] * self.r
            e[i] = 1
            out.append(SymPoly(self, {tuple(e): self.base.one()}))
        return out

    def monomial(self, exps, coeff=None):
        return SymPoly(self, {tuple(exps): self.base.one() if coeff is None else coeff})

    def frob(self, x, j=1):
        return x.frob(j)

    def is_zero(self, x):
        return x.is_zero()

    def bracket_frob(self, n, i):
        return self.const(self.base.bracket_frob(n, i))

    def from_K(self, x):
        return self.const(self.base.from_K(x))

    def scalar(self, c):
        from .algebra import dom_scalar
        return self.const(dom_scalar(self.base, c))

    def valuation(self, x):
        raise DomainError('no valuation on a symbolic domain')

    def format(self, x):
        return str(x)
