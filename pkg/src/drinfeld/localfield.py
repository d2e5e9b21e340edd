"""Truncated Laurent series in a uniformizer u with u^e = 1/T.

A ``LocalField`` stands for the tame extension of F_q((1/T)) with
ramification index e and residue field F_{q^m}.  Elements carry an absolute
precision: the digits of u^i with i >= prec are unknown.  Exact elements
(prec None) are finite Laurent polynomials.  Every element keeps at most
``cap`` significant digits; anything beyond is dropped and the precision
lowered accordingly, so all reported digits are certified.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
import re

import flint

from .algebra import FiniteField, RatFunc, ExprParser
from .errors import (DomainError, ValuationError, PrecisionExhausted, NeedRamification,
                     NeedResidueExtension, UnsupportedExtension, NoConvergentSeries)

DEFAULT_PRECISION = 200
MIN_DIGITS = 10


class LocalField:
    def __init__(self, K, e=1, m=1, prec=DEFAULT_PRECISION):
        if e < 1 or m < 1:
            raise DomainError('need e >= 1 and m >= 1')
        if gcd(e, K.p) != 1:
            raise UnsupportedExtension(f'ramification index {e} is divisible by p={K.p} (wild)')
        self.K, self.e, self.m, self.cap = K, e, m, prec
        self.q, self.p, self.k = K.q, K.p, K.F.k
        self.residue = FiniteField(K.p, K.F.k * m)
        self.pctx = self.residue.poly_ctx
        self._emb = K.F.embedding_into(self.residue)
        self._sqrt_cache = {}

    def __repr__(self):
        return f'LocalField(q={self.q}, e={self.e}, m={self.m}, prec={self.cap})'

    def __eq__(self, other):
        return (isinstance(other, LocalField) and self.K == other.K
                and (self.e, self.m, self.cap) == (other.e, other.m, other.cap))

    def __hash__(self):
        return hash((self.K, self.e, self.m, self.cap))

    def with_cap(self, cap):
        """The same field carrying a different relative precision cap."""
        return LocalField(self.K, self.e, self.m, cap)

    def rehome(self, x):
        """x as an element of this field (digits beyond the cap are dropped)."""
        if x.F is self:
            return x
        if (x.F.K, x.F.e, x.F.m) != (self.K, self.e, self.m):
            raise DomainError('elements live in different local fields')
        return LocalElem(self, x.start, x.digits, x.prec)

    # -- construction --------------------------------------------------------

    def elem(self, start, digits, prec=None):
        if not isinstance(digits, flint.fq_default_poly):
            digits = self.pctx([self.residue_elem(c) for c in digits])
        return LocalElem(self, start, digits, prec)

    def residue_elem(self, c):
        if isinstance(c, flint.fq_default):
            return c
        return self.residue(c)

    def zero(self):
        return LocalElem(self, 0, self.pctx.zero(), None)

    def zero_to(self, prec):
        return LocalElem(self, prec, self.pctx.zero(), prec)

    def one(self):
        return self.monomial(self.residue.one, 0)

    def monomial(self, c, i):
        c = self.residue_elem(c)
        return LocalElem(self, i, self.pctx([c]), None)

    def u(self):
        return self.monomial(1, 1)

    def T(self):
        return self.monomial(1, -self.e)

    def scalar(self, c):
        """Image of c in F_q."""
        return self.monomial(self._emb(c), 0)

    def frob(self, x, j=1):
        return x.frob(j)

    def is_zero(self, x):
        return x.is_exact_zero()

    def valuation(self, x):
        return x.valuation()

    def bracket_frob(self, n, i):
        e = self.e
        return self.monomial(1, -e * self.q ** n) - self.monomial(1, -e * self.q ** i)

    def embed_poly(self, f):
        """A polynomial in T (flint poly over F_q) as a Laurent polynomial in u."""
        if f.is_zero():
            return self.zero()
        D = f.degree()
        coeffs = f.coeffs()
        keep = min(D + 1, -(-self.cap // self.e) + 1)
        digits = [self.residue.zero] * ((keep - 1) * self.e + 1)
        for t in range(keep):
            c = coeffs[D - t]
            if not c.is_zero():
                digits[t * self.e] = self._emb(c)
        prec = None if keep == D + 1 else -self.e * D + self.e * keep
        return LocalElem(self, -self.e * D, self.pctx(digits), prec)

    def embed(self, x):
        """Expansion at T = infinity of an element of K, F_q, an int, or K(y)."""
        if isinstance(x, LocalElem):
            return x
        if isinstance(x, int):
            return self.monomial(self.residue(x % self.p), 0) if x % self.p else self.zero()
        if isinstance(x, flint.fq_default):
            return self.scalar(x)
        if isinstance(x, RatFunc):
            num = self.embed_poly(x.num)
            if x.den.is_one():
                return num
            return num / self.embed_poly(x.den)
        from .quadratic import QuadElem
        if isinstance(x, QuadElem):
            a = self.embed(x.a)
            if x.b.is_zero():
                return a
            return a + self.embed(x.b) * self.sqrt_of(x.dom.D)
        raise TypeError(f'cannot embed {type(x).__name__}')

    from_K = embed

    def sqrt_of(self, D):
        """Canonical square root of an element of K (cached per D)."""
        key = (str(D.num), str(D.den))
        if key not in self._sqrt_cache:
            self._sqrt_cache[key] = nth_root(self.embed(D), 2)
        return self._sqrt_cache[key]

    def parse(self, text):
        return parse_local(self, text)

    def format(self, x):
        return str(x)


class LocalElem:
    __slots__ = ('F', 'start', 'digits', 'prec')

    def __init__(self, F, start, digits, prec=None):
        self.F = F
        if not digits.is_zero():
            low = _lowest_index(digits)
            if low:
                digits = digits.right_shift(low)
                start += low
        if prec is not None:
            if digits.is_zero() or start >= prec:
                digits, start = F.pctx.zero(), prec
            elif digits.degree() >= prec - start:
                digits = digits.truncate(prec - start)
        if not digits.is_zero():
            if prec is None and digits.degree() >= F.cap:
                prec = start + F.cap
                digits = digits.truncate(F.cap)
            elif prec is not None and prec - start > F.cap:
                prec = start + F.cap
                digits = digits.truncate(F.cap)
        elif prec is None:
            start = 0
        self.start, self.digits, self.prec = start, digits, prec

    # -- predicates ----------------------------------------------------------

    def is_exact_zero(self):
        return self.prec is None and self.digits.is_zero()

    def is_zero_to_precision(self):
        return self.digits.is_zero()

    def is_exact(self):
        return self.prec is None

    def relative_precision(self):
        if self.digits.is_zero():
            return 0
        if self.prec is None:
            return None
        return self.prec - self.start

    def precision(self):
        """Absolute precision as a valuation (None if exact)."""
        return None if self.prec is None else Fraction(self.prec, self.F.e)

    def valuation(self):
        if self.digits.is_zero():
            if self.prec is None:
                raise ValuationError('valuation of zero')
            raise PrecisionExhausted(f'element is zero to precision O(u^{self.prec}); valuation unknown')
        return Fraction(self.start, self.F.e)

    def valuation_or_bound(self):
        """(value, exact?) with the precision bound for an indistinguishable-from-zero element."""
        if self.digits.is_zero():
            if self.prec is None:
                return None, True
            return Fraction(self.prec, self.F.e), False
        return Fraction(self.start, self.F.e), True

    def leading(self):
        if self.digits.is_zero():
            raise PrecisionExhausted('no significant digits')
        return self.digits.coeffs()[0]

    def digit(self, i):
        """Coefficient of u^i (requires i below the precision)."""
        if self.prec is not None and i >= self.prec:
            raise PrecisionExhausted(f'digit u^{i} is beyond precision {self.prec}')
        k = i - self.start
        c = self.digits.coeffs()
        if 0 <= k < len(c):
            return c[k]
        return self.F.residue.zero

    def terms(self):
        return [(self.start + i, c) for i, c in enumerate(self.digits.coeffs()) if not c.is_zero()]

    def require_digits(self, n=MIN_DIGITS, what='value'):
        r = self.relative_precision()
        if r is not None and r < n:
            raise PrecisionExhausted(f'{what} has only {r} significant digits (need {n})')
        return self

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LocalElem):
            if other.F is not self.F and other.F != self.F:
                raise DomainError('local elements from different fields')
            return other
        return self.F.embed(other)

    def __add__(self, other):
        other = self._coerce(other)
        if other.is_exact_zero():
            return self
        if self.is_exact_zero():
            return other
        prec = _min_prec(self.prec, other.prec)
        s = min(self.start, other.start)
        if prec is not None and s >= prec:
            return self.F.zero_to(prec)
        a = self.digits.left_shift(self.start - s) if self.start > s else self.digits
        b = other.digits.left_shift(other.start - s) if other.start > s else other.digits
        if prec is not None:
            a, b = a.truncate(prec - s), b.truncate(prec - s)
        return LocalElem(self.F, s, a + b, prec)

    __radd__ = __add__

    def __neg__(self):
        return LocalElem(self.F, self.start, -self.digits, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.F
        if self.is_exact_zero() or other.is_exact_zero():
            return F.zero()
        zx, zy = self.digits.is_zero(), other.digits.is_zero()
        if zx or zy:
            if zx and zy:
                return F.zero_to(self.prec + other.prec)
            if zx:
                return F.zero_to(self.prec + other.start)
            return F.zero_to(other.prec + self.start)
        s = self.start + other.start
        rx, ry = self.relative_precision(), other.relative_precision()
        if rx is None and ry is None:
            n = self.digits.degree() + other.digits.degree() + 1
            if n > F.cap:
                return LocalElem(F, s, self.digits.mul_low(other.digits, F.cap), s + F.cap)
            return LocalElem(F, s, self.digits * other.digits, None)
        r = min(x for x in (rx, ry, F.cap) if x is not None)
        return LocalElem(F, s, self.digits.mul_low(other.digits, r), s + r)

    __rmul__ = __mul__

    def inverse(self):
        F = self.F
        if self.digits.is_zero():
            if self.prec is None:
                raise ZeroDivisionError('inverse of zero')
            raise PrecisionExhausted('inverse of an element indistinguishable from zero')
        if self.prec is None and self.digits.degree() == 0:
            return LocalElem(F, -self.start, self.pctx_const(self.digits.coeffs()[0].inverse()), None)
        r = self.relative_precision()
        r = F.cap if r is None else min(r, F.cap)
        return LocalElem(F, -self.start, self.digits.inverse_series_trunc(r), -self.start + r)

    def pctx_const(self, c):
        return self.F.pctx([c])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.F.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, j=1):
        """x -> x^(q^j): digits to the q^j power, exponents scaled by q^j."""
        if j == 0:
            return self
        F = self.F
        m = F.q ** j
        shift = (F.k * j) % F.residue.k
        prec = None if self.prec is None else self.prec * m
        if self.digits.is_zero():
            return F.zero() if prec is None else F.zero_to(prec)
        keep = -(-F.cap // m)
        digits = self.digits
        if digits.degree() >= keep:
            digits = digits.truncate(keep)
            prec = _min_prec(prec, (self.start + keep) * m)
        coeffs = digits.coeffs()
        if shift:
            coeffs = [c.frobenius(shift) for c in coeffs]
        return LocalElem(F, self.start * m, F.pctx(coeffs).inflate(m), prec)

    def scale_u(self, k):
        """Multiply by u^k exactly."""
        prec = None if self.prec is None else self.prec + k
        return LocalElem(self.F, self.start + k, self.digits, prec)

    def agrees_with(self, other, prec=None):
        """True when the difference vanishes to the joint (or given) precision."""
        d = self - self._coerce(other)
        if prec is not None:
            return d.digits.is_zero() or d.start >= prec
        return d.digits.is_zero()

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.start == other.start and self.prec == other.prec and self.digits == other.digits

    def __hash__(self):
        return hash((self.start, self.prec, str(self.digits)))

    def __str__(self):
        return format_local(self)

    __repr__ = __str__


def _lowest_index(poly):
    for i, c in enumerate(poly.coeffs()):
        if not c.is_zero():
            return i
    return 0


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# text form


def format_local(x):
    F = x.F
    parts = []
    for i, c in x.terms():
        cs = F.residue.format_elem(c)
        mon = '1' if i == 0 else ('u' if i == 1 else f'u^{i}' if i > 0 else f'u^({i})')
        if i == 0:
            parts.append(cs)
        else:
            parts.append(mon if cs == '1' else f'{cs}*{mon}')
    if x.prec is not None:
        tail = f'O(u^{x.prec})' if x.prec >= 0 else f'O(u^({x.prec}))'
        if not parts:
            return tail
        return ' + '.join(parts) + f' ({tail})'
    return ' + '.join(parts) if parts else '0'


_PREC_SUFFIX = re.compile(r'\(?\s*O\(\s*u\s*\^\s*\(?\s*(-?\d+)\s*\)?\s*\)\s*\)?\s*$')


def parse_local(F, text):
    text = text.strip()
    prec = None
    m = _PREC_SUFFIX.search(text)
    if m:
        prec = int(m.group(1))
        text = text[:m.start()].rstrip()
        if text.endswith('+'):
            text = text[:-1].rstrip()
    atoms = {'u': F.u(), 'T': F.T()}
    if F.residue.k > 1:
        atoms[F.residue.name] = F.monomial(F.residue.gen(), 0)
    val = ExprParser(atoms, lambda n: F.embed(n), allow_negative=True).parse(text) if text else F.zero()
    if prec is not None:
        val = val + F.zero_to(prec)
    return val


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    segments: tuple  # (slope, horizontal length, left x, right x)

    def root_valuations(self):
        """Predicted (valuation, multiplicity) pairs: negated slopes."""
        return [(-s, length) for s, length, _, _ in self.segments]


def newton_polygon(points):
    """Lower convex hull of (x, valuation) points; None valuations are ignored."""
    pts = sorted((x, Fraction(v)) for x, v in points if v is not None)
    if len(pts) < 2:
        raise DomainError('a Newton polygon needs at least two finite points')
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1, x2 - x1), x2 - x1, x1, x2))
    return NewtonPolygon(tuple(hull), tuple(segs))


# ---------------------------------------------------------------------------
# residue-field root helpers


def _residue_roots(F, coeffs):
    """Nonzero-or-zero roots of sum coeffs[i] X^i over the residue field, canonical order.

    Raises NeedResidueExtension with the smallest irreducible factor degree
    when there is no root.
    """
    poly = F.pctx(coeffs)
    roots = F.residue.sorted_roots(poly)
    return roots, poly


def _need_extension(F, poly, nonzero=True):
    degs = [f.degree() for f, _ in poly.factor()[1] if f.degree() > 1]
    if not degs:
        raise DomainError('residue equation has no admissible root in any extension')
    d = min(degs)
    raise NeedResidueExtension(d, f'residue equation has no root in F_(q^{F.m}); needs degree {d} extension')


def _canonical_nonzero_root(F, coeffs, exclude=None):
    roots, poly = _residue_roots(F, coeffs)
    cands = [r for r in roots if not r.is_zero() and (exclude is None or not exclude(r))]
    if not cands:
        _need_extension(F, poly)
    return cands[0]


def _need_ramification(val, e):
    """Raise if the valuation val (in units of 1) is not on the grid 1/e."""
    frac = Fraction(val) * e
    if frac.denominator != 1:
        raise NeedRamification(frac.denominator, f'valuation {val} needs ramification index {e * frac.denominator}')
    return int(frac)


# ---------------------------------------------------------------------------
# roots


def nth_root(x, n):
    """Canonical y with y^n = x, p not dividing n; leading coefficient smallest in the residue order."""
    F = x.F
    if n % F.p == 0:
        raise UnsupportedExtension(f'{n}-th roots are inseparable in characteristic {F.p}')
    if x.is_exact_zero():
        return x
    x.require_digits(1, 'radicand')
    if x.start % n:
        g = n // gcd(n, x.start % n)
        raise NeedRamification(g, f'valuation {x.valuation()} is not divisible by {n} at e={F.e}')
    c = x.leading()
    coeffs = [-c] + [F.residue.zero] * (n - 1) + [F.residue.one]
    roots, poly = _residue_roots(F, coeffs)
    if not roots:
        _need_extension(F, poly)
    y = F.monomial(roots[0], x.start // n)
    # Newton iteration on y^n - x; derivative n y^(n-1) is a unit times u^(...)
    target = x.prec if x.prec is not None else x.start + F.cap
    for _ in range(64):
        r = y ** n - x
        if r.is_zero_to_precision() or r.start >= target:
            break
        y = y - r / (y ** (n - 1) * n)
    return _with_prec(y, x.relative_precision())


def _with_prec(y, rel):
    if rel is None or y.digits.is_zero():
        return y
    return y + y.F.zero_to(y.start + rel)


def root_qminus1(x):
    """Canonical (q-1)-st root."""
    return nth_root(x, x.F.q - 1)


def hensel_root(coeffs, x0, max_iter=200):
    """Root of sum coeffs[i] x^i near x0 by Newton iteration.

    Requires the classical condition v(f(x0)) > 2 v(f'(x0)).
    """
    F = x0.F
    f = list(coeffs)
    df = [c * i for i, c in enumerate(f)][1:]

    def ev(cs, x):
        acc = F.zero()
        for c in reversed(cs):
            acc = acc * x + c
        return acc
    r0, d0 = ev(f, x0), ev(df, x0)
    if r0.is_zero_to_precision():
        return x0
    if d0.is_zero_to_precision():
        raise DomainError('derivative indistinguishable from zero at the starting point')
    if not r0.valuation() > 2 * d0.valuation():
        raise DomainError(f'Hensel condition fails: v(f)={r0.valuation()} <= 2 v(df)={2 * d0.valuation()}')
    x = x0
    for _ in range(max_iter):
        r = ev(f, x)
        if r.is_zero_to_precision():
            return x
        x = x - r / ev(df, x)
    raise PrecisionExhausted('Hensel iteration did not converge')


def eval_additive(coeffs, x):
    """sum coeffs[i] x^(q^i) for a list of LocalElem coefficients."""
    acc = x.F.zero()
    for i, a in enumerate(coeffs):
        if not a.is_exact_zero():
            acc = acc + a * x.frob(i)
    return acc


def _segment_points(points, seg):
    s, _, x1, _ = seg
    y1 = dict(points)[x1]
    return [x for x, v in points if v is not None and v == y1 + s * (x - x1)]


def additive_root(coeffs, slope_index=0, exclude=None, max_iter=None):
    """A root of the additive polynomial sum coeffs[i] x^(q^i) (coeffs[0] != 0).

    ``slope_index`` selects the Newton polygon segment of f(x)/x counted from
    the left (largest root valuation first).  ``exclude`` rejects leading
    residue coefficients (used to pick a root independent of an earlier one).
    The leading term comes from the residual equation of the segment, then
    digits are fixed one at a time until the correction is small enough for
    Newton steps h = -f(x)/coeffs[0].
    """
    F = coeffs[0].F
    q = F.q
    pts = [(q ** i, a.valuation()) for i, a in enumerate(coeffs) if not a.is_exact_zero()]
    poly = newton_polygon(pts)
    seg = poly.segments[slope_index]
    t = -seg[0]
    ti = _need_ramification(t, F.e)
    on = _segment_points(pts, seg)
    rc = [F.residue.zero] * (max(on) + 1)
    for i, a in enumerate(coeffs):
        if q ** i in on:
            rc[q ** i] = a.leading()
    c0 = _canonical_nonzero_root(F, rc, exclude)
    x = F.monomial(c0, ti)
    return refine_additive_root(coeffs, x, max_iter=max_iter)


def refine_additive_root(coeffs, x, max_iter=None):
    F = x.F
    q = F.q
    a0 = coeffs[0]
    max_iter = max_iter or 4 * F.cap + 50
    last = None
    for _ in range(max_iter):
        R = eval_additive(coeffs, x)
        if R.is_zero_to_precision():
            return x
        if last is not None and R.start <= last:
            raise PrecisionExhausted('root refinement stalled')
        last = R.start
        pts = [(0, R.valuation())] + [(q ** i, a.valuation()) for i, a in enumerate(coeffs)
                                      if not a.is_exact_zero()]
        seg = newton_polygon(pts).segments[0]
        on = _segment_points(pts, seg)
        if on == [0, 1]:
            x = x - R / a0
            continue
        ti = _need_ramification(-seg[0], F.e)
        rc = [F.residue.zero] * (max(on) + 1)
        rc[0] = R.leading()
        for i, a in enumerate(coeffs):
            if q ** i in on:
                rc[q ** i] = a.leading()
        roots, poly = _residue_roots(F, rc)
        if not roots:
            _need_extension(F, poly, nonzero=False)
        x = x + F.monomial(roots[0], ti)
    raise PrecisionExhausted('root refinement did not converge')


def artin_schreier_series(gamma):
    """X = -sum gamma^(q^i) for v(gamma) > 0; X^q - X = gamma."""
    F = gamma.F
    if gamma.is_exact_zero():
        return gamma
    if gamma.digits.is_zero():
        return gamma
    if gamma.start <= 0:
        raise NoConvergentSeries(f'Artin-Schreier series needs v(gamma) > 0, got {gamma.valuation()}')
    target = gamma.prec if gamma.prec is not None else gamma.start + F.cap
    acc = F.zero()
    g = gamma
    while g.start < target and not g.digits.is_zero():
        acc = acc - g
        g = g.frob(1)
    return acc + F.zero_to(target)


def artin_schreier_solve(gamma):
    """A solution X of X^q - X = gamma; the full solution set is X + F_q.

    Positive valuation uses the convergent series.  A unit gamma first
    solves the residue equation; negative valuation peels off q-th powers
    when the exponent allows it, otherwise the extension is wild.
    """
    F = gamma.F
    q = F.q
    X = F.zero()
    g = gamma
    for _ in range(4 * F.cap):
        if g.digits.is_zero() or g.start > 0:
            break
        c = g.leading()
        if g.start < 0:
            if g.start % q:
                raise UnsupportedExtension(
                    f'X^q - X = gamma with v(gamma) = {g.valuation()} needs a wildly ramified extension')
            root = F.residue.frob(c, F.residue.k - F.k)  # c^(1/q)
            h = F.monomial(root, g.start // q)
        else:
            rc = [-c, -F.residue.one] + [F.residue.zero] * (q - 2) + [F.residue.one]
            roots, poly = _residue_roots(F, rc)
            if not roots:
                _need_extension(F, poly, nonzero=False)
            h = F.monomial(roots[0], 0)
        X = X + h
        g = g - (h.frob(1) - h)
    return X + artin_schreier_series(g)
