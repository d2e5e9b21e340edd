"""Explicit exponential, logarithm, torsion and period computations for
Drinfeld modules over F_q[T]."""

__version__ = '0.1.0'
