"""Apolar ideals and the basic invariants of apolar algebras."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InsufficientPrecisionError, UndefinedApolarError
from .ideal import TruncatedIdeal
from .linalg import Subspace, left_kernel
from .monomials import table
from .poly import Polynomial


def _require_nonzero(f: Polynomial):
    if f.is_zero():
        raise UndefinedApolarError()


def contraction_rows(f: Polynomial):
    """``(T, rows)``: for each monomial ``b`` of degree ``<= s`` the vector ``b ⌟ f``."""
    s = f.degree
    T = table(f.n, s + 1)
    rows = []
    fterms = list(f.items())
    for b in T.monomials:
        v = {}
        for a, x in fterms:
            if all(i >= j for i, j in zip(a, b)):
                k = T.index[tuple(i - j for i, j in zip(a, b))]
                v[k] = x
        rows.append(v)
    return T, rows


def apolar_ideal(f: Polynomial, D: int | None = None) -> TruncatedIdeal:
    """``Ann(f)`` modulo ``m^D`` (default ``D = deg f + 1``), with ``c = deg f + 1``."""
    _require_nonzero(f)
    s = f.degree
    if D is None:
        D = s + 1
    if D < s + 1:
        raise InsufficientPrecisionError(f"need D >= deg f + 1 = {s + 1}, got {D}")
    T, rows = contraction_rows(f)
    ker = left_kernel(f.field, rows, T.N)
    TD = table(f.n, D)
    # monomial indices agree on the common prefix of degree <= s
    ker.extend({k: 1} for k in TD.degree_range(s + 1, D))
    space = Subspace.from_vectors(f.field, TD.N, ker)
    return TruncatedIdeal(f.field, f.n, D, s + 1, space)


@dataclass(frozen=True)
class ApolarReport:
    hilbert_function: tuple
    length: int
    socle_degree: int
    essential_variables: int
    tangent_dimension: int | None = None

    def to_json(self):
        return {
            "hilbert_function": list(self.hilbert_function),
            "length": self.length,
            "socle_degree": self.socle_degree,
            "essential_variables": self.essential_variables,
            "tangent_dimension": self.tangent_dimension,
        }


def derivative_ranks(f: Polynomial) -> list[int]:
    """``r[l] = dim(m^l ⌟ f)`` for ``l = 0..s+1``."""
    _require_nonzero(f)
    s = f.degree
    T, rows = contraction_rows(f)
    ranks = [0] * (s + 2)
    span = Subspace.zero(f.field, T.N)
    for l in range(s, -1, -1):
        span = span.add_vectors([rows[k] for k in T.degree_range(l, l + 1)])
        ranks[l] = span.dim
    return ranks


def hilbert_vector(f: Polynomial) -> tuple:
    r = derivative_ranks(f)
    return tuple(r[l] - r[l + 1] for l in range(len(r) - 1))


def hilbert_function(f: Polynomial) -> ApolarReport:
    """Hilbert function of ``Apolar(f)`` from the derivative filtration."""
    H = hilbert_vector(f)
    return ApolarReport(
        hilbert_function=H,
        length=sum(H),
        socle_degree=len(H) - 1,
        essential_variables=H[1] if len(H) > 1 else 0,
    )


def tangent_space_dimension(f: Polynomial) -> int:
    """``dim S/I^2 - dim S/I`` for ``I = Ann(f)``, exact at ``D = 2s + 2``."""
    _require_nonzero(f)
    s = f.degree
    I = apolar_ideal(f, 2 * s + 2)
    I2 = I.product(I)
    return I2.colength() - I.colength()


def is_complete_intersection(f: Polynomial) -> bool:
    """Whether ``Apolar(f)`` is a complete intersection.

    Adding a variable the form does not use adds exactly one minimal
    generator, so comparing the generator count with ``n`` is the same as
    comparing it with ``H(1)`` after passing to essential variables.
    """
    _require_nonzero(f)
    return apolar_ideal(f).num_generators() == f.n


@dataclass(frozen=True)
class UnobstructednessReport:
    length: int
    embedding_dim: int
    tangent_dim: int
    is_unobstructed: bool
    ambient_vars: int = 0
    ambient_tangent_dim: int = 0
    extra: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "length": self.length,
            "embedding_dim": self.embedding_dim,
            "tangent_dim": self.tangent_dim,
            "is_unobstructed": self.is_unobstructed,
        }


def unobstructedness_report(f: Polynomial) -> UnobstructednessReport:
    """Tangent dimension in the minimal embedding, compared with ``H(1) * len``.

    The dimension is measured in the ``n`` given variables and shifted by
    ``(n - H(1)) * len``, which is what each unused variable contributes.
    """
    rep = hilbert_function(f)
    t_n = tangent_space_dimension(f)
    e = rep.essential_variables
    t_e = t_n - (f.n - e) * rep.length
    return UnobstructednessReport(
        length=rep.length,
        embedding_dim=e,
        tangent_dim=t_e,
        is_unobstructed=t_e == e * rep.length,
        ambient_vars=f.n,
        ambient_tangent_dim=t_n,
    )
