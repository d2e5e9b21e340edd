"""Shadowed partitions of {0, ..., n-1}.

An element of P_r(n) is an r-tuple (S_1, ..., S_r) of index sets such that
the translates S_i + j (1 <= i <= r, 0 <= j < i) tile {0, ..., n-1}.  The
union of the S_i determines the tuple, so enumeration walks over admissible
unions: sets that contain 0, have consecutive gaps in 1..r, and end at most r
below n.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidUnion, DomainError, check_terms


@dataclass(frozen=True, order=True)
class ShadowedPartition:
    r: int
    n: int
    sets: tuple

    def union(self):
        return tuple(sorted(i for s in self.sets for i in s))

    def size(self):
        """|S| = total number of indices across the r sets."""
        return sum(len(s) for s in self.sets)

    def class_index(self):
        """The i with 0 in S_i, or 0 for the empty partition of n = 0."""
        for i, s in enumerate(self.sets, 1):
            if s and s[0] == 0:
                return i
        return 0

    def shift(self, i):
        """The bijection P_r(n - i) -> P_r^i(n): add i to every index and put 0 into S_i."""
        sets = [tuple(x + i for x in s) for s in self.sets]
        sets[i - 1] = (0,) + sets[i - 1]
        return ShadowedPartition(self.r, self.n + i, tuple(sets))

    def unshift(self):
        i = self.class_index()
        if i == 0:
            raise DomainError('the empty partition has no predecessor')
        sets = [tuple(x - i for x in s if x != 0) for s in self.sets]
        return ShadowedPartition(self.r, self.n - i, tuple(sets))

    def shadows(self):
        """Multiset of covered indices, for checking the tiling condition."""
        return sorted(x + j for i, s in enumerate(self.sets, 1) for x in s for j in range(i))

    def is_valid(self):
        return len(self.sets) == self.r and self.shadows() == list(range(self.n))

    def weights(self, q):
        return tuple(weight(s, q) for s in self.sets)

    def __str__(self):
        return ';'.join(f'S{i}={{{",".join(map(str, s))}}}' for i, s in enumerate(self.sets, 1))


def weight(S, q):
    """w(S) = sum of q^i over i in S."""
    return sum(q ** i for i in S)


def from_union(r, n, U):
    """Rebuild the unique partition with union U: s_k lands in S_(s_(k+1) - s_k)."""
    U = sorted(set(U))
    if n == 0:
        if U:
            raise InvalidUnion('P_r(0) contains only the empty partition')
        return ShadowedPartition(r, 0, tuple(() for _ in range(r)))
    if not U or U[0] != 0:
        raise InvalidUnion(f'{U} does not contain 0, so index 0 is not covered')
    if U[-1] >= n:
        raise InvalidUnion(f'{U} is not a subset of 0..{n - 1}')
    sets = [[] for _ in range(r)]
    for a, b in zip(U, U[1:] + [n]):
        gap = b - a
        if gap > r:
            raise InvalidUnion(f'gap {gap} after {a} exceeds r={r}')
        sets[gap - 1].append(a)
    return ShadowedPartition(r, n, tuple(tuple(s) for s in sets))


def _unions(r, n):
    """Admissible unions, members-first lexicographic order on characteristic words."""
    if n == 0:
        yield ()
        return
    path = [0]

    def walk(pos):
        for gap in range(1, r + 1):
            nxt = pos + gap
            if nxt == n:
                yield tuple(path)
            elif nxt < n:
                path.append(nxt)
                yield from walk(nxt)
                path.pop()
    yield from walk(0)


def enumerate_partitions(r, n):
    if r < 1 or n < 0:
        raise DomainError('need r >= 1 and n >= 0')
    for U in _unions(r, n):
        yield from_union(r, n, U)


@lru_cache(maxsize=None)
def partitions_list(r, n):
    check_terms(rfib(r, n), 'shadowed partitions')
    return tuple(enumerate_partitions(r, n))


def count(r, n):
    return sum(1 for _ in _unions(r, n))


def rfib(r, n):
    """r-step Fibonacci number with F_0 = 1 and F_m = 0 for m < 0."""
    if n < 0:
        return 0
    vals = [1]
    for m in range(1, n + 1):
        vals.append(sum(vals[max(0, m - r):m]))
    return vals[n]


def monomial(dom, A, S):
    """A^S = prod A_i^(w(S_i)), computed as a product of Frobenius twists."""
    acc = dom.one()
    for a, s in zip(A, S.sets):
        for i in s:
            acc = acc * dom.frob(a, i)
    return acc


def weight_identity_holds(S, q):
    """Check sum (q^i - 1) w(S_i) = q^n - 1."""
    return sum((q ** i - 1) * w for i, w in enumerate(S.weights(q), 1)) == q ** S.n - 1
