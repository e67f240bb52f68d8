"""Ideals of S = k[[a_1..a_n]] stored exactly modulo m^D.

A :class:`TruncatedIdeal` keeps the image of ``I`` in ``S/m^D`` as a subspace
closed under multiplication by the variables, together with a certified
bound ``c <= D`` such that ``m^c`` lies in ``I``.  Because ``m^D`` is then in
``I`` too, the image determines ``I``.  Every operation derives the output's
``(D, c)`` and refuses to build an object it cannot certify.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, InsufficientPrecisionError, PreconditionError
from .field import Field
from .linalg import Subspace, left_kernel
from .monomials import table
from .poly import Operator


def operator_to_vector(op: Operator, D: int) -> dict:
    T = table(op.n, D)
    return {T.index[a]: c for a, c in op.items() if sum(a) < D}


def vector_to_operator(v: dict, n: int, field: Field, D: int) -> Operator:
    T = table(n, D)
    return Operator(n, {T.monomials[k]: x for k, x in v.items()}, field, trunc=D)


class TruncatedIdeal:
    __slots__ = ("field", "n", "D", "c", "space")

    def __init__(self, field: Field, n: int, D: int, c: int, space: Subspace):
        if c > D:
            raise InsufficientPrecisionError(f"completeness bound c={c} exceeds truncation D={D}")
        if space.N != table(n, D).N:
            raise DimensionMismatchError("subspace does not match the monomial table")
        self.field = field
        self.n = n
        self.D = D
        self.c = c
        self.space = space

    # ------------------------------------------------------------ builders
    @classmethod
    def from_generators(cls, gens, D: int, c: int | None = None, n: int | None = None,
                        field: Field | None = None) -> "TruncatedIdeal":
        """Ideal generated by ``gens`` (plus ``m^c`` when ``c`` is given).

        Without ``c`` the bound is certified from the result: if every
        monomial of degree ``D-1`` is in the image then ``m^(D-1) ⊆ I``
        (Nakayama), and ``c`` is the least degree from which all monomials
        are present.
        """
        gens = list(gens)
        if gens:
            n = gens[0].n if n is None else n
            field = gens[0].field if field is None else field
        if n is None or field is None:
            raise PreconditionError("empty generator list needs n and field")
        T = table(n, D)
        vecs = [operator_to_vector(g, D) for g in gens]
        if c is not None:
            vecs.extend({k: 1} for k in T.degree_range(c, D))
        space = Subspace.from_vectors(field, T.N, [v for v in vecs if v]).closure(T.mult)
        cert = _certified_c(space, T)
        if c is None:
            if cert is None:
                raise InsufficientPrecisionError(
                    f"cannot certify m^c ⊆ I at truncation D={D}; raise D or pass c"
                )
            c = cert
        elif cert is not None:
            c = min(c, cert)
        return cls(field, n, D, c, space)

    @classmethod
    def unit(cls, n: int, field: Field, D: int) -> "TruncatedIdeal":
        return cls(field, n, D, 0, Subspace.whole(field, table(n, D).N))

    @classmethod
    def power_of_max(cls, n: int, field: Field, k: int, D: int) -> "TruncatedIdeal":
        """``m^k`` modulo ``m^D``."""
        if k > D:
            raise InsufficientPrecisionError(f"m^{k} is not exact below D={D}")
        T = table(n, D)
        return cls(field, n, D, k, Subspace.coordinate(field, T.N, T.degree_range(k, D)))

    # ------------------------------------------------------------ inspection
    @property
    def table(self):
        return table(self.n, self.D)

    @property
    def dim(self) -> int:
        return self.space.dim

    def colength(self) -> int:
        """``dim_k S/I``."""
        return self.table.N - self.space.dim

    def hilbert_function(self) -> list[int]:
        """Hilbert function of the associated graded ring of ``S/I``."""
        T = self.table
        counts = [0] * self.D
        for p in self.space.pivots:
            counts[int(T.degrees[p])] += 1
        H = [T.degree_start[d + 1] - T.degree_start[d] - counts[d] for d in range(self.D)]
        while H and H[-1] == 0:
            H.pop()
        return H

    def basis(self) -> list[Operator]:
        return [vector_to_operator(v, self.n, self.field, self.D) for v in self.space.vectors()]

    def leading_monomials(self) -> list[tuple]:
        T = self.table
        return [T.monomials[p] for p in self.space.pivots]

    def is_graded(self) -> bool:
        T = self.table
        for v in self.space.vectors():
            if len({int(T.degrees[k]) for k in v}) > 1:
                return False
        return True

    def contains_operator(self, op: Operator) -> bool:
        self._ring(op)
        return self.space.contains_vector(operator_to_vector(op, self.D))

    __contains__ = contains_operator

    def _ring(self, other):
        if other.n != self.n or other.field != self.field:
            raise DimensionMismatchError(
                f"ring mismatch: {self.n} vars over {self.field} vs {other.n} vars over {other.field}"
            )

    def __repr__(self):
        return f"TruncatedIdeal(n={self.n}, D={self.D}, c={self.c}, dim={self.dim}, colength={self.colength()})"

    # ------------------------------------------------------------ truncation
    def at(self, D_new: int) -> "TruncatedIdeal":
        """The same ideal modulo ``m^D_new`` (requires ``D_new >= c``)."""
        if D_new == self.D:
            return self
        if D_new < self.c:
            raise InsufficientPrecisionError(f"cannot truncate below the completeness bound c={self.c}")
        T_new = table(self.n, D_new)
        if D_new < self.D:
            return TruncatedIdeal(self.field, self.n, D_new, self.c, self.space.truncate(T_new.N))
        space = self.space.pad(T_new.N).add_vectors(
            [{k: 1} for k in T_new.degree_range(max(self.c, self.D), D_new)]
        )
        return TruncatedIdeal(self.field, self.n, D_new, self.c, space)

    def _common(self, other: "TruncatedIdeal", D: int | None = None):
        self._ring(other)
        if D is None:
            if self.D != other.D:
                raise DimensionMismatchError(f"truncations differ ({self.D} vs {other.D})")
            return self, other
        return self.at(D), other.at(D)

    # ------------------------------------------------------------ operations
    def sum(self, other: "TruncatedIdeal") -> "TruncatedIdeal":
        a, b = self._common(other)
        return TruncatedIdeal(self.field, self.n, a.D, min(a.c, b.c), a.space.sum(b.space))

    __add__ = sum

    def intersect(self, other: "TruncatedIdeal") -> "TruncatedIdeal":
        a, b = self._common(other)
        return TruncatedIdeal(self.field, self.n, a.D, max(a.c, b.c), a.space.intersect(b.space))

    __and__ = intersect

    def product(self, other: "TruncatedIdeal") -> "TruncatedIdeal":
        a, b = self._common(other)
        c = a.c + b.c
        if a.D < c:
            raise InsufficientPrecisionError(
                f"product needs D >= c_I + c_J = {c}, have D={a.D}"
            )
        ga, gb = a.minimal_generators(), b.minimal_generators()
        prods = [(x * y).truncate(a.D) for x in ga for y in gb]
        T = a.table
        vecs = [operator_to_vector(g, a.D) for g in prods]
        space = Subspace.from_vectors(self.field, T.N, [v for v in vecs if v]).closure(T.mult)
        cert = _certified_c(space, T)
        return TruncatedIdeal(self.field, self.n, a.D, min(c, cert) if cert is not None else c, space)

    __mul__ = product

    def power(self, k: int) -> "TruncatedIdeal":
        out = self
        for _ in range(k - 1):
            out = out.product(self)
        return out

    def colon(self, d: Operator) -> "TruncatedIdeal":
        """``(I : d) = {s : s*d in I}``, modulo ``m^(D-o)`` with ``o = ord d``."""
        self._ring(d)
        d = d.truncate(None)
        if d.is_zero():
            raise PreconditionError("colon by the zero operator")
        o = d.order
        D2 = self.D - o
        c2 = max(0, self.c - o)
        if D2 < c2 or D2 < 1:
            raise InsufficientPrecisionError(f"truncation D={self.D} too small for colon by order {o}")
        T, T2 = self.table, table(self.n, D2)
        rows = []
        dvec = [(a, x) for a, x in d.items()]
        for b in T2.monomials:
            v = {}
            for a, x in dvec:
                e = tuple(i + j for i, j in zip(a, b))
                k = T.index.get(e)
                if k is not None:
                    v[k] = v.get(k, 0) + x
            rows.append(v)
        red = self.space.reduce(rows)
        piv = set(self.space.pivots)
        free = [k for k in range(T.N) if k not in piv]
        col = {k: j for j, k in enumerate(free)}
        if self.field.p:
            red_rows = [{col[int(k)]: int(r[k]) for k in np.flatnonzero(r)} for r in red]
        else:
            red_rows = [{col[k]: x for k, x in r.items()} for r in red]
        ker = left_kernel(self.field, red_rows, len(free))
        space = Subspace.from_vectors(self.field, T2.N, ker)
        return TruncatedIdeal(self.field, self.n, D2, c2, space)

    def contains(self, other: "TruncatedIdeal") -> bool:
        """``other ⊆ self``, compared at the common truncation."""
        self._ring(other)
        D = min(self.D, other.D)
        if D < max(self.c, other.c):
            raise InsufficientPrecisionError(
                f"incomparable truncations: common D={D} < max c={max(self.c, other.c)}"
            )
        a, b = self.at(D), other.at(D)
        return a.space.contains(b.space)

    def __le__(self, other):
        return other.contains(self)

    def __ge__(self, other):
        return self.contains(other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedIdeal):
            return NotImplemented
        if other.n != self.n or other.field != self.field:
            return False
        D = max(self.c, other.c, 1)
        return self.at(D).space == other.at(D).space

    def __hash__(self):
        D = max(self.c, 1)
        return hash((self.n, self.field, self.at(D).space.pivots))

    def minimal_generators(self) -> list[Operator]:
        """A minimal generating set; lifts are taken of degree ``<= c``."""
        if self.c == 0:
            return [Operator.constant(self.n, 1, self.field)]
        D1 = self.c + 1
        I1 = self.at(D1)
        T = I1.table
        basis = I1.space.vectors()
        # m*I modulo m^(c+1)
        shifted = []
        for v in basis:
            for i in range(self.n):
                w = {}
                for k, x in v.items():
                    t = T.mult[k, i]
                    if t >= 0:
                        w[int(t)] = x
                if w:
                    shifted.append(w)
        mI = Subspace.from_vectors(self.field, T.N, shifted)
        gens = []
        cur = mI
        # walk the basis in pivot order so low-degree generators come first
        for v in basis:
            if not cur.contains_vector(v):
                cur = cur.add_vectors([v])
                gens.append(vector_to_operator(v, self.n, self.field, D1).truncate(None))
        return gens

    def num_generators(self) -> int:
        return len(self.minimal_generators())

    def project_variable(self, i: int) -> "TruncatedIdeal":
        """Image in k[[a_i]] after killing the other variables, as an ideal in 1 variable."""
        T = self.table
        T1 = table(1, self.D)
        vecs = []
        for v in self.space.vectors():
            w = {}
            for k, x in v.items():
                a = T.monomials[k]
                if all(e == 0 for j, e in enumerate(a) if j != i):
                    w[a[i]] = x
            if w:
                vecs.append(w)
        space = Subspace.from_vectors(self.field, T1.N, vecs).closure(T1.mult)
        return TruncatedIdeal(self.field, 1, self.D, min(self.c, self.D), space)


def _certified_c(space: Subspace, T) -> int | None:
    """Least ``d < D`` with every monomial of degree in ``[d, D)`` a pivot, if any."""
    if T.D == 0:
        return 0
    piv = space.pivots
    if not piv or piv[-1] != T.N - 1:
        return None
    # trailing run of consecutive pivots ending at N-1 consists of unit vectors
    k = len(piv) - 1
    while k > 0 and piv[k - 1] == piv[k] - 1:
        k -= 1
    first = piv[k]
    for d in range(T.D):
        if T.degree_start[d] >= first:
            return d
    return None
