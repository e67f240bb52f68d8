"""Exact subspaces of k^N in canonical reduced echelon form.

Pivots are the lowest nonzero column of each row, so two subspaces are equal
iff their pivots and rows agree.  Over F_p rows are dense ``int64`` arrays
driven by :mod:`apolar._kernels`; over Q they are sparse ``{col: Fraction}``
dicts.
"""
from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, DimensionMismatchError
from .field import Field

Vector = dict  # sparse {column: scalar}


def _budget_matrix() -> int | None:
    spec = os.environ.get("APOLAR_BUDGET", "")
    for part in spec.split(","):
        k, _, v = part.partition("=")
        if k.strip() == "matrix" and v.strip():
            return int(v)
    return None


def check_matrix_budget(rows: int, cols: int):
    cap = _budget_matrix()
    if cap is not None and max(rows, cols) > cap:
        raise BudgetExceededError(f"matrix {rows}x{cols} exceeds APOLAR_BUDGET matrix={cap}")


# ------------------------------------------------------------------ Q helpers


def _q_reduce(v: dict, basis: dict) -> dict:
    """Reduce ``v`` by a fully reduced basis ``{pivot: row}``."""
    hits = [c for c in v if c in basis]
    if not hits:
        return v
    v = dict(v)
    for c in hits:
        f = v.get(c)
        if not f:
            continue
        for k, x in basis[c].items():
            y = v.get(k, 0) - f * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    return v


def _q_insert(basis: dict, v: dict):
    """Insert ``v`` (already reduced) keeping ``basis`` in RREF. Returns the pivot."""
    c = min(v)
    inv = 1 / v[c]
    v = {k: x * inv for k, x in v.items()}
    for pc, row in basis.items():
        f = row.get(c)
        if f:
            for k, x in v.items():
                y = row.get(k, 0) - f * x
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
    basis[c] = v
    return c


# ------------------------------------------------------------------ Subspace


class Subspace:
    """Row space in reduced echelon form. Treat as immutable."""

    __slots__ = ("field", "N", "pivots", "_rows")

    def __init__(self, field: Field, N: int, pivots, rows):
        self.field = field
        self.N = N
        self.pivots = tuple(int(c) for c in pivots)
        self._rows = rows

    # construction
    @classmethod
    def from_vectors(cls, field: Field, N: int, vectors) -> "Subspace":
        """Span of vectors given as sparse dicts or (over F_p) a 2-D array."""
        if field.p:
            M = _as_dense(field, N, vectors)
            return cls._from_dense(field, N, M)
        basis: dict = {}
        for v in _as_sparse(field, vectors):
            v = _q_reduce(v, basis)
            if v:
                _q_insert(basis, v)
        return cls._from_qbasis(field, N, basis)

    @classmethod
    def _from_dense(cls, field, N, M):
        check_matrix_budget(*M.shape)
        r, piv = _kernels.rref_modp(M, field.p)
        return cls(field, N, piv, np.ascontiguousarray(M[:r]))

    @classmethod
    def _from_qbasis(cls, field, N, basis: dict):
        piv = sorted(basis)
        return cls(field, N, piv, [basis[c] for c in piv])

    @classmethod
    def zero(cls, field: Field, N: int) -> "Subspace":
        if field.p:
            return cls(field, N, (), np.zeros((0, N), dtype=np.int64))
        return cls(field, N, (), [])

    @classmethod
    def coordinate(cls, field: Field, N: int, cols) -> "Subspace":
        """Span of the unit vectors ``e_c`` for ``c`` in ``cols``."""
        cols = sorted(set(int(c) for c in cols))
        if field.p:
            M = np.zeros((len(cols), N), dtype=np.int64)
            M[np.arange(len(cols)), cols] = 1
            return cls(field, N, cols, M)
        return cls(field, N, cols, [{c: Fraction(1)} for c in cols])

    @classmethod
    def whole(cls, field: Field, N: int) -> "Subspace":
        return cls.coordinate(field, N, range(N))

    # inspection
    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def vectors(self) -> list[Vector]:
        if self.field.p:
            out = []
            for row in self._rows:
                nz = np.flatnonzero(row)
                out.append({int(c): int(row[c]) for c in nz})
            return out
        return [dict(r) for r in self._rows]

    def dense(self) -> np.ndarray:
        """Rows as an int64 array (F_p only)."""
        if not self.field.p:
            raise TypeError("dense rows are only available over F_p")
        return self._rows

    def _same(self, other):
        if self.field != other.field or self.N != other.N:
            raise DimensionMismatchError(
                f"subspaces of {self.field}^{self.N} and {other.field}^{other.N}"
            )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.field != other.field or self.N != other.N or self.pivots != other.pivots:
            return False
        if self.field.p:
            return bool(np.array_equal(self._rows, other._rows))
        return self._rows == other._rows

    def __hash__(self):
        return hash((self.field, self.N, self.pivots))

    # membership
    def reduce(self, vectors):
        """Remainders of vectors modulo the subspace (same container kind)."""
        if self.field.p:
            X = _as_dense(self.field, self.N, vectors)
            return self._reduce_dense(X)
        basis = dict(zip(self.pivots, self._rows))
        return [_q_reduce(v, basis) for v in _as_sparse(self.field, vectors)]

    def _reduce_dense(self, X):
        if not self.pivots or X.shape[0] == 0:
            return X
        p = self.field.p
        P = np.asarray(self.pivots, dtype=np.int64)
        return (X - _kernels.matmul_mod(X[:, P], self._rows, p)) % p

    def contains_vectors(self, vectors) -> bool:
        red = self.reduce(vectors)
        if self.field.p:
            return not red.any()
        return all(not v for v in red)

    def contains_vector(self, v) -> bool:
        return self.contains_vectors([v])

    def contains(self, other: "Subspace") -> bool:
        self._same(other)
        if other.dim == 0:
            return True
        if not set(other.pivots) <= set(self.pivots):
            return False
        return self.contains_vectors(other._rows)

    __ge__ = contains

    def __le__(self, other):
        return other.contains(self)

    # combination
    def sum(self, other: "Subspace") -> "Subspace":
        self._same(other)
        if self.field.p:
            return self._merge_dense(other._rows)
        return Subspace.from_vectors(self.field, self.N, list(self._rows) + list(other._rows))

    __add__ = sum

    def add_vectors(self, vectors) -> "Subspace":
        if self.field.p:
            return self._merge_dense(_as_dense(self.field, self.N, vectors))
        basis = {c: dict(r) for c, r in zip(self.pivots, self._rows)}
        for v in _as_sparse(self.field, vectors):
            v = _q_reduce(v, basis)
            if v:
                _q_insert(basis, v)
        return Subspace._from_qbasis(self.field, self.N, basis)

    def _merge_dense(self, X, return_new=False):
        p = self.field.p
        X = self._reduce_dense(X)
        X = X[X.any(axis=1)]
        if X.shape[0] == 0:
            return (self, X) if return_new else self
        check_matrix_budget(*X.shape)
        r, newpiv = _kernels.rref_modp(X, p)
        new = X[:r]
        B = self._rows
        if B.shape[0]:
            B = (B - _kernels.matmul_mod(B[:, newpiv], new, p)) % p
        rows = np.vstack([B, new])
        piv = np.concatenate([np.asarray(self.pivots, dtype=np.int64), newpiv])
        order = np.argsort(piv, kind="stable")
        out = Subspace(self.field, self.N, piv[order], np.ascontiguousarray(rows[order]))
        return (out, new) if return_new else out

    def perp(self) -> "Subspace":
        """Annihilator under the standard dot product."""
        piv = set(self.pivots)
        free = [c for c in range(self.N) if c not in piv]
        if self.field.p:
            p = self.field.p
            M = np.zeros((len(free), self.N), dtype=np.int64)
            if free:
                M[np.arange(len(free)), free] = 1
                if self.pivots:
                    P = np.asarray(self.pivots, dtype=np.int64)
                    F = np.asarray(free, dtype=np.int64)
                    M[:, P] = (-self._rows[:, F].T) % p
            return Subspace._from_dense(self.field, self.N, M)
        vecs = []
        for f in free:
            v = {f: Fraction(1)}
            for c, row in zip(self.pivots, self._rows):
                x = row.get(f)
                if x:
                    v[c] = -x
            vecs.append(v)
        return Subspace.from_vectors(self.field, self.N, vecs)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same(other)
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        return self.perp().sum(other.perp()).perp()

    __and__ = intersect

    def truncate(self, N_new: int) -> "Subspace":
        """Image under projection to the first ``N_new`` coordinates."""
        keep = [k for k, c in enumerate(self.pivots) if c < N_new]
        if self.field.p:
            rows = np.ascontiguousarray(self._rows[keep, :N_new])
        else:
            rows = [{c: x for c, x in self._rows[k].items() if c < N_new} for k in keep]
        return Subspace(self.field, N_new, [self.pivots[k] for k in keep], rows)

    def pad(self, N_new: int) -> "Subspace":
        """Same vectors inside a larger ambient space (zero padding)."""
        if self.field.p:
            rows = np.zeros((self.dim, N_new), dtype=np.int64)
            rows[:, : self.N] = self._rows
        else:
            rows = [dict(r) for r in self._rows]
        return Subspace(self.field, N_new, self.pivots, rows)

    # closure under a family of injective coordinate maps
    def closure(self, mult: np.ndarray) -> "Subspace":
        """Smallest subspace containing this one and stable under every shift.

        ``mult[c, i]`` is the image column of ``e_c`` under the ``i``-th shift,
        or ``-1`` if it vanishes.  New vectors are shifted exactly once.
        """
        if self.field.p:
            return self._closure_dense(mult)
        return self._closure_q(mult)

    def _closure_dense(self, mult):
        cur = self
        frontier = self._rows
        while frontier.shape[0]:
            cand = _shift_dense(frontier, mult)
            cand = cand[cand.any(axis=1)]
            if cand.shape[0] == 0:
                break
            cur, frontier = cur._merge_dense(cand, return_new=True)
        return cur

    def _closure_q(self, mult):
        basis = {c: dict(r) for c, r in zip(self.pivots, self._rows)}
        queue = list(basis.values())
        n = mult.shape[1]
        while queue:
            nxt = []
            for v in queue:
                for i in range(n):
                    w = {}
                    for c, x in v.items():
                        t = mult[c, i]
                        if t >= 0:
                            w[int(t)] = x
                    w = _q_reduce(w, basis)
                    if w:
                        c = _q_insert(basis, w)
                        nxt.append(basis[c])
            queue = nxt
        return Subspace._from_qbasis(self.field, self.N, basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, N={self.N}, field={self.field})"


def _shift_dense(rows: np.ndarray, mult: np.ndarray) -> np.ndarray:
    k, N = rows.shape
    n = mult.shape[1]
    out = np.zeros((n * k, N), dtype=np.int64)
    for i in range(n):
        tgt = mult[:, i]
        valid = np.flatnonzero(tgt >= 0)
        out[i * k:(i + 1) * k][:, tgt[valid]] = rows[:, valid]
    return out


# ------------------------------------------------------------------ conversions


def _as_dense(field: Field, N: int, vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        M = np.array(vectors, dtype=np.int64, copy=True).reshape(-1, N)
        return M % field.p
    vectors = list(vectors)
    M = np.zeros((len(vectors), N), dtype=np.int64)
    for k, v in enumerate(vectors):
        for c, x in v.items():
            M[k, c] = field.convert(x)
    return M


def _as_sparse(field: Field, vectors):
    if isinstance(vectors, np.ndarray):
        for row in vectors:
            yield {int(c): field.convert(int(row[c])) for c in np.flatnonzero(row)}
        return
    for v in vectors:
        out = {}
        for c, x in v.items():
            x = field.convert(x)
            if x:
                out[int(c)] = x
        yield out


# ------------------------------------------------------------------ matrices


def rank(field: Field, rows, N: int) -> int:
    return Subspace.from_vectors(field, N, rows).dim


def left_kernel(field: Field, rows: list[Vector], K: int) -> list[Vector]:
    """Basis of ``{c : sum_k c_k rows[k] = 0}`` as sparse coefficient dicts."""
    m = len(rows)
    aug = []
    for k, v in enumerate(rows):
        w = dict(v)
        w[K + k] = 1
        aug.append(w)
    S = Subspace.from_vectors(field, K + m, aug)
    out = []
    for c, v in zip(S.pivots, S.vectors()):
        if c >= K:
            out.append({k - K: x for k, x in v.items()})
    return out


def solve_square(field: Field, A: list[list], b: list | None = None):
    """Inverse of a small square matrix (or solution of ``A x = b``); ``None`` if singular."""
    n = len(A)
    M = [[field.convert(x) for x in row] + ([field.convert(b[i])] if b is not None else
                                            [field.one() if j == i else field.zero() for j in range(n)])
         for i, row in enumerate(A)]
    width = len(M[0])
    for c in range(n):
        k = next((r for r in range(c, n) if M[r][c] != 0), None)
        if k is None:
            return None
        M[c], M[k] = M[k], M[c]
        inv = field.inv(M[c][c])
        M[c] = [field.convert(x * inv) for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [field.convert(x - f * y) for x, y in zip(M[r], M[c])]
    if b is not None:
        return [M[i][n] for i in range(n)]
    return [row[n:width] for row in M]
