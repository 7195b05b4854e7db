"""Exact Bernoulli numbers via the binomial convolution recurrence.

Convention: B_0 = 1, B_1 = -1/2 (the even-index values, which are all the
engine consumes, are convention independent).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

_CACHE: list[Fraction] = [Fraction(1)]


def _extend(m: int) -> None:
    while len(_CACHE) <= m:
        k = len(_CACHE)
        # sum_{j=0}^{k} C(k+1, j) B_j = 0
        s = sum(comb(k + 1, j) * _CACHE[j] for j in range(k))
        _CACHE.append(Fraction(-s, k + 1))


def bernoulli(m: int) -> Fraction:
    """B_m for even m >= 0."""
    if m < 0 or m % 2:
        raise ValueError("Bernoulli index must be an even integer >= 0")
    _extend(m)
    return _CACHE[m]
