"""Catalecticant ranks, the fourth-secant test and m-saturation."""
from __future__ import annotations

from .errors import PreconditionError
from .field import Field
from .ideal import TruncatedIdeal
from .linalg import Subspace, left_kernel, rank
from .monomials import monomials_of_degree, table
from .poly import Polynomial


def divided_power(coeffs, s: int, field: Field) -> Polynomial:
    """``l^[s] = sum_{|a|=s} l^a x^a`` for ``l = sum coeffs[i] x_i``.

    Under contraction ``a^b ⌟ l^[s] = l^b l^[s-|b|]``, so these are the
    rank-one forms (ordinary powers are not, in general).
    """
    n = len(coeffs)
    c = [field.convert(x) for x in coeffs]
    terms = {}
    for a in monomials_of_degree(n, s):
        v = field.one()
        for ci, e in zip(c, a):
            if e:
                v = v * ci ** e
        terms[a] = v
    return Polynomial(n, terms, field)


def catalecticant_matrix(F: Polynomial, a: int) -> tuple[list, list, list]:
    """``(rows, row_monomials, col_monomials)`` of ``S_a -> P_{s-a}``."""
    if not F.is_homogeneous() or F.is_zero():
        raise PreconditionError("catalecticant needs a nonzero homogeneous form")
    s = F.degree
    if not 0 <= a <= s:
        raise PreconditionError(f"need 0 <= a <= {s}")
    rmons = monomials_of_degree(F.n, a)
    cmons = monomials_of_degree(F.n, s - a)
    cidx = {m: k for k, m in enumerate(cmons)}
    rows = []
    for b in rmons:
        row = [F.field.zero()] * len(cmons)
        for m, x in F.items():
            if all(i >= j for i, j in zip(m, b)):
                row[cidx[tuple(i - j for i, j in zip(m, b))]] = x
        rows.append(row)
    return rows, rmons, cmons


def catalecticant_rank(F: Polynomial, a: int) -> int:
    rows, _, cmons = catalecticant_matrix(F, a)
    return rank(F.field, [{k: x for k, x in enumerate(r) if x} for r in rows], len(cmons))


def sigma4_membership(F: Polynomial) -> bool:
    """``rank phi_{a, s-a}(F) <= 4`` at ``a = floor(s/2)``.

    A set-theoretic test for the fourth secant variety; over finite fields the
    verdict is the same rank condition without the geometric guarantee.
    """
    s = F.degree
    if s < 4:
        raise PreconditionError(f"sigma4_membership needs degree >= 4, got {s}")
    return catalecticant_rank(F, s // 2) <= 4


def is_m_saturated(I: TruncatedIdeal, m: int) -> bool:
    """For all ``l <= m``: ``sigma in S_l`` and ``sigma m^(m-l) ⊆ I`` imply ``sigma in I``."""
    if not I.is_graded():
        raise PreconditionError("is_m_saturated needs a homogeneous ideal")
    if m < 0:
        raise PreconditionError("m must be non-negative")
    J = I.at(max(I.D, m + 1))
    T = J.table
    F = J.field
    space = J.space
    for l in range(m + 1):
        deg_l = list(T.degree_range(l, l + 1))
        shifts = monomials_of_degree(J.n, m - l)
        # rows: sigma = e_b  ->  (b * tau mod I) for every tau of degree m-l
        targets = list(T.degree_range(m, m + 1))
        piv = set(space.pivots)
        free = [k for k in targets if k not in piv]
        if not free:
            colon_dim = len(deg_l)
        else:
            col = {k: j for j, k in enumerate(free)}
            blocks = []
            for b_idx in deg_l:
                b = T.monomials[b_idx]
                vecs = [{T.index[tuple(x + y for x, y in zip(b, t))]: 1} for t in shifts]
                red = space.reduce(vecs)
                row = {}
                for j, r in enumerate(red):
                    items = ((int(k), int(r[k])) for k in r.nonzero()[0]) if F.p else r.items()
                    for k, x in items:
                        row[j * len(free) + col[k]] = x
                blocks.append(row)
            colon_dim = len(left_kernel(F, blocks, len(shifts) * len(free)))
        in_I = sum(1 for p in space.pivots if T.degrees[p] == l)
        if colon_dim != in_I:
            return False
    return True
