"""Monomial bookkeeping shared by polynomials, operators and truncated ideals.

All monomials of degree ``< D`` in ``n`` variables are indexed in a fixed
*local* order: ascending total degree, and degrevlex (largest first) inside
each degree.  This order is multiplicative, so the lowest-index nonzero
coordinate of ``alpha_i * v`` is ``alpha_i`` times that of ``v`` whenever it
survives truncation.  Echelon forms use it to pick pivots.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from math import comb

import numpy as np

Exp = tuple  # exponent vector


def degree(a: Exp) -> int:
    return sum(a)


def count_upto(n: int, D: int) -> int:
    """Number of monomials of degree ``< D`` in ``n`` variables."""
    return comb(n + D - 1, n) if D > 0 else 0


def monomials_of_degree(n: int, d: int) -> list[Exp]:
    """Degree-``d`` monomials, degrevlex descending (``x_1^d`` first)."""
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    rec((), d, 0)
    out.sort(key=lambda a: a[::-1])
    return out


def degrevlex_key(a: Exp):
    """Sort key, increasing in degrevlex."""
    return (sum(a), tuple(-e for e in reversed(a)))


def local_key(a: Exp):
    """Sort key of the local order used for column indices."""
    return (sum(a), a[::-1])


def divides(b: Exp, a: Exp) -> bool:
    return all(x <= y for x, y in zip(b, a))


class MonomialTable:
    """Index of all monomials of degree ``< D`` in ``n`` variables."""

    def __init__(self, n: int, D: int):
        self.n = n
        self.D = D
        mons: list[Exp] = []
        starts = [0]
        for d in range(D):
            mons.extend(monomials_of_degree(n, d))
            starts.append(len(mons))
        self.monomials = mons
        self.N = len(mons)
        self.degree_start = starts  # monomials of degree d live in [starts[d], starts[d+1])
        self.index = {a: k for k, a in enumerate(mons)}
        self.exps = np.array(mons, dtype=np.int64).reshape(self.N, n)
        self.degrees = self.exps.sum(axis=1) if n else np.zeros(self.N, dtype=np.int64)
        mult = np.full((self.N, n), -1, dtype=np.int64)
        for k, a in enumerate(mons):
            for i in range(n):
                b = list(a)
                b[i] += 1
                mult[k, i] = self.index.get(tuple(b), -1)
        self.mult = mult
        mult.setflags(write=False)
        self.exps.setflags(write=False)

    def degree_range(self, lo: int, hi: int) -> range:
        """Indices of monomials with ``lo <= degree < hi`` (clipped to the table)."""
        lo = max(lo, 0)
        hi = min(hi, self.D)
        if lo >= hi:
            return range(0)
        return range(self.degree_start[lo], self.degree_start[hi])

    def __repr__(self):
        return f"MonomialTable(n={self.n}, D={self.D}, N={self.N})"


_lock = threading.Lock()


@lru_cache(maxsize=64)
def _table(n: int, D: int) -> MonomialTable:
    return MonomialTable(n, D)


def table(n: int, D: int) -> MonomialTable:
    with _lock:
        return _table(n, D)
