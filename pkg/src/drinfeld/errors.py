"""Exception hierarchy and global resource caps.

Every error carries an ``exit_code`` used by the command line front end:
1 for domain / method-scope failures, 3 for resource or precision exhaustion.
"""

import os
from contextlib import contextmanager
from dataclasses import dataclass


class DrinfeldError(Exception):
    exit_code = 1


class DomainError(DrinfeldError, ValueError):
    """An input violates a mathematical precondition."""


class ValuationError(DomainError):
    """Valuation of zero requested."""


class InvalidUnion(DomainError):
    """A set of indices is not the union of any shadowed partition."""


class MethodScopeError(DomainError):
    """The requested quantity lies outside what the method can produce."""


class UnsupportedExtension(MethodScopeError):
    """The computation needs a wildly ramified or otherwise unsupported field."""


class NoConvergentSeries(MethodScopeError):
    """A series solution does not converge for the given input."""


class ResourceError(DrinfeldError):
    exit_code = 3


class PrecisionExhausted(ResourceError):
    """Too few significant digits remain to continue or to report a value."""


class Cancelled(DrinfeldError):
    exit_code = 3


class FieldTooSmall(DrinfeldError):
    """Signal: the local field must be enlarged; ``factor`` says by how much."""

    def __init__(self, factor, message=''):
        super().__init__(message or f'enlarge by factor {factor}')
        self.factor = factor


class NeedRamification(FieldTooSmall):
    pass


class NeedResidueExtension(FieldTooSmall):
    pass


@dataclass
class Limits:
    max_degree: int = 1 << 22
    max_terms: int = 1 << 20
    max_exponent_bits: int = 4096


def _from_env():
    lim = Limits()
    for name in ('max_degree', 'max_terms', 'max_exponent_bits'):
        raw = os.environ.get('DRINFELD_' + name.upper())
        if raw:
            setattr(lim, name, int(raw))
    return lim


limits = _from_env()


@contextmanager
def override_limits(**kwargs):
    old = {k: getattr(limits, k) for k in kwargs}
    for k, v in kwargs.items():
        setattr(limits, k, v)
    try:
        yield limits
    finally:
        for k, v in old.items():
            setattr(limits, k, v)


def check_degree(deg, what='polynomial'):
    if deg > limits.max_degree:
        raise ResourceError(f'{what} degree {deg} exceeds cap {limits.max_degree} '
                            '(set DRINFELD_MAX_DEGREE to raise it)')


def check_terms(count, what='terms'):
    if count > limits.max_terms:
        raise ResourceError(f'{what}: {count} exceeds cap {limits.max_terms} '
                            '(set DRINFELD_MAX_TERMS to raise it)')


def check_exponent(value):
    if value.bit_length() > limits.max_exponent_bits:
        raise ResourceError(f'exponent with {value.bit_length()} bits exceeds cap '
                            f'{limits.max_exponent_bits}')


class CancelToken:
    """Cooperative cancellation flag checked inside long loops."""

    def __init__(self):
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def check(self):
        if self.cancelled:
            raise Cancelled('computation cancelled')


def check_cancel(token):
    if token is not None:
        token.check()
