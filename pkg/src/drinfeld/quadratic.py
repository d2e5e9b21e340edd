"""The quadratic extension K(y), y^2 = D, for odd q.

Elements are pairs a + b*y with a, b in K.  When v(D) is odd the two parts
never share a valuation, so v(a + b*y) = min(v(a), v(b) + v(D)/2) is exact.
"""

from fractions import Fraction

from .algebra import ExprParser, RatFunc, dom_scalar
from .errors import DomainError, ValuationError


class QuadElem:
    __slots__ = ('dom', 'a', 'b')

    def __init__(self, dom, a, b):
        self.dom, self.a, self.b = dom, a, b

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            return other
        return self.dom(other)

    def __add__(self, other):
        other = self._coerce(other)
        return QuadElem(self.dom, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.dom, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        if b.is_zero() and d.is_zero():
            return QuadElem(self.dom, a * c, b)
        return QuadElem(self.dom, a * c + b * d * self.dom.D, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadElem(self.dom, self.a, -self.b)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.dom.D

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError('inverse of zero')
        if self.b.is_zero():
            return QuadElem(self.dom, self.a.inverse(), self.b)
        n = self.norm().inverse()
        return QuadElem(self.dom, self.a * n, -(self.b * n))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.dom.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def frob(self, j=1):
        return self.dom.frob(self, j)

    def valuation(self):
        return self.dom.valuation(self)

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        yb = f'y*({self.b})'
        return yb if self.a.is_zero() else f'{self.a} + {yb}'

    __repr__ = __str__


class QuadraticDomain:
    """K(y) with y^2 = D."""

    def __init__(self, K, D, name='y'):
        if K.p == 2:
            raise DomainError('the quadratic extension is only supported for odd q')
        if isinstance(D, str):
            D = K.parse(D)
        if D.is_zero():
            raise DomainError('D must be nonzero')
        self.K, self.D, self.name = K, D, name
        self.q, self.p = K.q, K.p
        self.F = K.F
        self._ypow = {}

    def __eq__(self, other):
        return isinstance(other, QuadraticDomain) and self.K == other.K and self.D == other.D

    def __hash__(self):
        return hash(('quad', self.K, self.D))

    def __call__(self, x):
        if isinstance(x, QuadElem):
            return x
        if isinstance(x, str):
            return self.parse(x)
        return QuadElem(self, self.K(x), self.K.zero())

    def zero(self):
        return QuadElem(self, self.K.zero(), self.K.zero())

    def one(self):
        return QuadElem(self, self.K.one(), self.K.zero())

    def T(self):
        return QuadElem(self, self.K.T(), self.K.zero())

    def y(self):
        return QuadElem(self, self.K.zero(), self.K.one())

    def from_K(self, x):
        return QuadElem(self, x, self.K.zero())

    def scalar(self, c):
        return self.from_K(dom_scalar(self.K, c))

    def _y_factor(self, j):
        """y^(q^j) / y = D^((q^j - 1)/2)."""
        if j not in self._ypow:
            self._ypow[j] = self.D ** ((self.q ** j - 1) // 2)
        return self._ypow[j]

    def frob(self, x, j=1):
        if j == 0:
            return x
        a = x.a.frob(j)
        b = x.b.frob(j) * self._y_factor(j) if not x.b.is_zero() else x.b
        return QuadElem(self, a, b)

    def is_zero(self, x):
        return x.is_zero()

    def bracket_frob(self, n, i):
        return self.from_K(self.K.bracket_frob(n, i))

    def valuation(self, x):
        if x.is_zero():
            raise ValuationError('valuation of zero')
        half = Fraction(self.D.valuation(), 2)
        if x.b.is_zero():
            return Fraction(x.a.valuation())
        vb = x.b.valuation() + half
        if x.a.is_zero():
            return vb
        va = Fraction(x.a.valuation())
        if va == vb:
            raise DomainError('valuation undetermined: v(D) must be odd')
        return min(va, vb)

    def parse(self, text):
        atoms = {'T': self.T(), self.name: self.y()}
        if self.F.k > 1:
            atoms[self.F.name] = self.scalar(self.F.gen())
        return ExprParser(atoms, lambda n: self(n)).parse(text)

    def format(self, x):
        return str(x)
