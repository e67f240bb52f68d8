"""Hot loops of exact F_p linear algebra.

Two interchangeable implementations of the reduced-echelon kernel: a numba
``@njit`` loop and a vectorised numpy one.  ``APOLAR_NUMBA=0`` in the
environment (or :func:`use_backend`) selects numpy; otherwise numba is used
when it imports.  Matrices are ``int64`` with entries in ``[0, p)`` and
``p < 2**31`` so a product of two entries fits in a machine word.
"""
from __future__ import annotations

import contextlib
import os
import threading

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_local = threading.local()


def active_backend() -> str:
    forced = getattr(_local, "backend", None)
    if forced is not None:
        return forced
    if not HAVE_NUMBA or os.environ.get("APOLAR_NUMBA", "1").strip().lower() in ("0", "false", "no", "off"):
        return "numpy"
    return "numba"


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily force ``"numba"`` or ``"numpy"`` in this thread."""
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    old = getattr(_local, "backend", None)
    _local.backend = name
    try:
        yield
    finally:
        _local.backend = old


# ---------------------------------------------------------------- numpy path


def rref_modp_numpy(M: np.ndarray, p: int):
    """In-place reduced echelon form; returns ``(rank, pivot_columns)``."""
    rows, cols = M.shape
    r = 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        prow = M[r, c:] * inv % p
        M[r, c:] = prow
        col = M[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            sub = M[idx, c:] - (col[idx, None] * prow[None, :]) % p
            sub %= p
            M[idx, c:] = sub
        piv.append(c)
        r += 1
    return r, np.array(piv, dtype=np.int64)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_nb(a, p):
        t, newt = 0, 1
        r, newr = p, a % p
        while newr != 0:
            q = r // newr
            t, newt = newt, t - q * newt
            r, newr = newr, r - q * newr
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_nb(M, p):
        rows, cols = M.shape
        piv = np.empty(min(rows, cols), dtype=np.int64)
        nzbuf = np.empty(cols, dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if M[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(c, cols):
                    tmp = M[r, j]
                    M[r, j] = M[k, j]
                    M[k, j] = tmp
            inv = _inv_nb(M[r, c], p)
            cnt = 0
            for j in range(c, cols):
                v = M[r, j]
                if v != 0:
                    M[r, j] = v * inv % p
                    nzbuf[cnt] = j
                    cnt += 1
            for i in range(rows):
                if i == r:
                    continue
                f = M[i, c]
                if f == 0:
                    continue
                for t in range(cnt):
                    j = nzbuf[t]
                    v = (M[i, j] - f * M[r, j]) % p
                    M[i, j] = v
            piv[r] = c
            r += 1
        return r, piv[:r].copy()


def rref_modp_numba(M: np.ndarray, p: int):
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not available")
    r, piv = _rref_nb(M, np.int64(p))
    return int(r), piv


def rref_modp(M: np.ndarray, p: int):
    """Reduced echelon form of ``M`` mod ``p`` in place; ``(rank, pivots)``."""
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0, np.zeros(0, dtype=np.int64)
    if active_backend() == "numba":
        return rref_modp_numba(M, p)
    return rref_modp_numpy(M, p)


# ---------------------------------------------------------------- matmul

_F64_EXACT = 2**53


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact ``A @ B mod p`` for reduced int64 operands.

    Uses float64 BLAS when every partial sum stays below 2**53, otherwise
    splits ``A`` into 16-bit limbs and multiplies in int64.
    """
    k = A.shape[1]
    if k == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if k * (p - 1) ** 2 < _F64_EXACT:
        C = A.astype(np.float64) @ B.astype(np.float64)
        return np.mod(C, p).astype(np.int64)
    # limb split keeps every partial sum below k * 2**16 * p < 2**63
    chunk = max(1, (2**62) // ((1 << 16) * p))
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    lo = A & 0xFFFF
    hi = A >> 16
    for s in range(0, k, chunk):
        e = min(k, s + chunk)
        Bs = B[s:e]
        t_hi = (hi[:, s:e] @ Bs) % p
        t_lo = (lo[:, s:e] @ Bs) % p
        out = (out + (t_hi * 65536) % p + t_lo) % p
    return out
