"""Hilbert-function combinatorics and symmetric decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .apolar import contraction_rows, hilbert_vector
from .errors import PreconditionError, UndefinedApolarError
from .linalg import Subspace
from .poly import Polynomial


def binomial_expansion(m: int, i: int) -> list[tuple[int, int]]:
    """The ``i``-binomial expansion ``m = C(m_i, i) + C(m_{i-1}, i-1) + ...``.

    Returns pairs ``(m_k, k)`` with ``m_i > m_{i-1} > ... >= k >= 1``.
    """
    out = []
    k = i
    while m > 0 and k >= 1:
        top = k
        while comb(top + 1, k) <= m:
            top += 1
        out.append((top, k))
        m -= comb(top, k)
        k -= 1
    return out


def macaulay_bound(m: int, i: int) -> int:
    """``m^<i>``: the largest value ``H(i+1)`` may take when ``H(i) = m``."""
    if m < 0 or i < 1:
        raise PreconditionError("macaulay_bound needs m >= 0 and i >= 1")
    return sum(comb(top + 1, k + 1) for top, k in binomial_expansion(m, i))


def is_o_sequence(H) -> bool:
    H = list(H)
    if not H or H[0] != 1 or any(h < 0 for h in H):
        return False
    for m in range(1, len(H) - 1):
        if H[m + 1] > macaulay_bound(H[m], m):
            return False
    return True


@dataclass(frozen=True)
class HilbertProfile:
    H: tuple
    s: int
    rows: tuple  # rows[a] = Delta_a, of length s + 1 - a
    e: tuple  # e[a] = sum_{t <= a} Delta_t(1), for a = 0..s

    def row(self, a: int) -> tuple:
        if 0 <= a < len(self.rows):
            return self.rows[a]
        return (0,) * max(self.s + 1 - a, 0)

    def e_at(self, a: int) -> int:
        if a < 0:
            return 0
        return self.e[min(a, len(self.e) - 1)]

    def to_json(self):
        return {
            "hilbert_function": list(self.H),
            "socle_degree": self.s,
            "rows": [list(r) for r in self.rows],
            "e": list(self.e),
        }


def _e_vector(rows, s):
    e, acc = [], 0
    for a in range(s + 1):
        if a < len(rows) and len(rows[a]) > 1:
            acc += rows[a][1]
        e.append(acc)
    return tuple(e)


def symmetric_decomposition(f: Polynomial) -> HilbertProfile:
    """Rows ``Delta_a`` of the symmetric decomposition of ``H_{Apolar(f)}``.

    With ``W_i = m^i ⌟ f`` and ``V(i, j) = dim((W_i ∩ P_{<=j}) + W_{i+1})``,
    ``Delta_a(i) = V(i, s-a-i) - V(i, s-a-1-i)``: the pieces of ``m^i`` cut
    out by the annihilators of powers of ``m``, read on the dual side.
    """
    if f.is_zero():
        raise UndefinedApolarError()
    s = f.degree
    H = hilbert_vector(f)
    T, rows = contraction_rows(f)
    F = f.field
    W = [None] * (s + 2)
    W[s + 1] = Subspace.zero(F, T.N)
    for l in range(s, -1, -1):
        W[l] = W[l + 1].add_vectors([rows[k] for k in T.degree_range(l, l + 1)])
    low = [Subspace.coordinate(F, T.N, T.degree_range(0, j + 1)) for j in range(s + 1)]
    memo: dict = {}

    def V(i, j):
        if j < 0:
            return W[i + 1].dim
        j = min(j, s)
        key = (i, j)
        if key not in memo:
            memo[key] = W[i].intersect(low[j]).sum(W[i + 1]).dim
        return memo[key]

    nrows = max(1, s - 1)
    out = []
    for a in range(nrows):
        out.append(tuple(V(i, s - a - i) - V(i, s - a - 1 - i) for i in range(s + 1 - a)))
    return HilbertProfile(H=tuple(H), s=s, rows=tuple(out), e=_e_vector(out, s))


# ---------------------------------------------------------------- search


def _symmetric_rows(length: int, cap, first: int | None):
    """Symmetric non-negative rows of ``length`` bounded by ``cap`` pointwise."""
    half = (length + 1) // 2
    choices = []
    for k in range(half):
        hi = min(cap[k], cap[length - 1 - k])
        if k == 0 and first is not None:
            if first > hi:
                return
            choices.append((first,))
        else:
            choices.append(range(hi + 1))

    def rec(k, acc):
        if k == half:
            yield tuple(acc + acc[: length - half][::-1])
            return
        for v in choices[k]:
            yield from rec(k + 1, acc + [v])

    yield from rec(0, [])


def check_decomposition(H, rows) -> bool:
    """Whether ``rows`` passes the screening used by :func:`decomposition_search`."""
    H = list(H)
    s = len(H) - 1
    acc = [0] * (s + 1)
    for a, r in enumerate(rows):
        if len(r) != s + 1 - a or list(r) != list(r)[::-1] or min(r) < 0:
            return False
        if r[0] != (1 if a == 0 else 0):
            return False
        for k, v in enumerate(r):
            acc[k] += v
        if not is_o_sequence(_strip(acc)):
            return False
    return acc == H


def _strip(v):
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return v


def decomposition_search(H, constraints: dict | None = None) -> list[tuple]:
    """All row tuples ``(Delta_0, ..., Delta_{s-2})`` passing the screening.

    Rows are symmetric and non-negative, ``Delta_0`` is an O-sequence
    starting with 1, later rows start with 0, every partial sum is an
    O-sequence and the rows add up to ``H``.  ``constraints`` pins rows by
    index.  The output is sorted.
    """
    H = list(H)
    if not H or H[0] != 1 or H[-1] != 1:
        raise PreconditionError("H must start and end with 1")
    if not is_o_sequence(H):
        raise PreconditionError(f"{tuple(H)} is not an O-sequence")
    s = len(H) - 1
    constraints = {a: tuple(r) for a, r in (constraints or {}).items()}
    nrows = max(1, s - 1)
    found = []

    def rec(a, acc, rows):
        if a == nrows:
            if acc == H:
                found.append(tuple(rows))
            return
        length = s + 1 - a
        cap = [H[k] - acc[k] for k in range(length)]
        # positions beyond this row must already be filled
        if any(H[k] != acc[k] for k in range(length, s + 1)):
            return
        cands = [constraints[a]] if a in constraints else _symmetric_rows(length, cap, 1 if a == 0 else 0)
        for r in cands:
            if len(r) != length or list(r) != list(r)[::-1]:
                continue
            if any(v > c for v, c in zip(r, cap)) or r[0] != (1 if a == 0 else 0):
                continue
            nacc = acc[:]
            for k, v in enumerate(r):
                nacc[k] += v
            if not is_o_sequence(_strip(nacc)):
                continue
            rec(a + 1, nacc, rows + [tuple(r)])

    rec(0, [0] * (s + 1), [])
    return sorted(found)
