"""Bernoulli numbers for the generating series t*e^t / (e^t - 1).

This convention has B_1 = +1/2; all other values agree with the more common
t / (e^t - 1) convention.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

_table: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Return B_n with B_1 = +1/2.  Results are memoised (thread-safe)."""
    if n < 0:
        raise ValueError("bernoulli index must be non-negative")
    if n < len(_table):
        return _table[n]
    with _lock:
        # sum_{j=0}^{m} C(m+1, j) B_j = m + 1 for this convention
        for m in range(len(_table), n + 1):
            s = sum(comb(m + 1, j) * _table[j] for j in range(m))
            _table.append((Fraction(m + 1) - s) / (m + 1))
    return _table[n]


def bernoulli_list(n: int) -> list[Fraction]:
    """B_0, ..., B_n."""
    bernoulli(n)
    return _table[: n + 1]
