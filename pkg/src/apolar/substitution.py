"""Automorphisms of S/m^D given by the images of the variables."""
from __future__ import annotations

import threading

from .errors import DimensionMismatchError, InsufficientPrecisionError, NotAutomorphismError
from .field import Field
from .linalg import solve_square
from .poly import Operator, Polynomial, pairing


class Substitution:
    """``phi(a_i) = images[i]``, acting on operators truncated at ``D``."""

    def __init__(self, images, D: int):
        images = [im.truncate(D) for im in images]
        if not images:
            raise DimensionMismatchError("substitution needs at least one variable")
        n = len(images)
        self.field: Field = images[0].field
        for im in images:
            if im.n != n or im.field != self.field:
                raise DimensionMismatchError("images must live in the same ring")
            if im.constant_term() != 0:
                raise NotAutomorphismError(f"image {im} has a nonzero constant term")
        self.n = n
        self.D = D
        self.images = tuple(images)
        lin = [im.linear_part() for im in images]
        # lin[i][j] = coefficient of a_j in phi(a_i)
        self._lin = lin
        if D >= 2 and solve_square(self.field, lin) is None:
            raise NotAutomorphismError("linear part of the substitution is singular")
        self._memo: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def identity(cls, n: int, field: Field, D: int) -> "Substitution":
        return cls([Operator.variable(n, i, field, trunc=D) for i in range(n)], D)

    @classmethod
    def from_dict(cls, n: int, field: Field, D: int, images: dict) -> "Substitution":
        """Identity except on the variables listed in ``images``."""
        ims = [images.get(i, Operator.variable(n, i, field)) for i in range(n)]
        return cls(ims, D)

    def _monomial_image(self, a: tuple) -> Operator:
        hit = self._memo.get(a)
        if hit is not None:
            return hit
        if sum(a) == 0:
            out = Operator.constant(self.n, 1, self.field, trunc=self.D)
        else:
            i = next(k for k, e in enumerate(a) if e)
            b = list(a)
            b[i] -= 1
            out = self._monomial_image(tuple(b)) * self.images[i]
        with self._lock:
            self._memo[a] = out
        return out

    def apply(self, sigma: Operator) -> Operator:
        """``sigma(phi(a_1), ..., phi(a_n))`` truncated at ``D``."""
        if sigma.n != self.n or sigma.field != self.field:
            raise DimensionMismatchError("operator and substitution rings differ")
        acc: dict = {}
        for a, c in sigma.items():
            if sum(a) >= self.D:
                continue
            for b, d in self._monomial_image(a).items():
                acc[b] = acc.get(b, 0) + c * d
        return Operator(self.n, acc, self.field, trunc=self.D)

    __call__ = apply

    def compose(self, other: "Substitution") -> "Substitution":
        """``self ∘ other``: ``a_i -> self(other(a_i))``."""
        D = min(self.D, other.D)
        return Substitution([self.apply(im).truncate(D) for im in other.images], D)

    def inverse(self) -> "Substitution":
        """Fixed-point inversion ``psi = L^{-1}(a - h(psi))`` iterated ``D`` times."""
        F, n, D = self.field, self.n, self.D
        Linv = solve_square(F, self._lin)
        if Linv is None:
            raise NotAutomorphismError("linear part of the substitution is singular")
        # higher-order parts h_i = phi(a_i) - linear part
        highs = [Operator(n, {a: c for a, c in im.items() if sum(a) >= 2}, F, D) for im in self.images]
        xs = [Operator.variable(n, i, F, trunc=D) for i in range(n)]

        def lin_comb(coeffs, ops):
            acc = Operator.zero(n, F, trunc=D)
            for c, op in zip(coeffs, ops):
                if c:
                    acc = acc + op.scale(c)
            return acc

        # solve L psi = a - h(psi) by fixed-point iteration; each pass fixes one more degree
        psi = [lin_comb([Linv[i][j] for j in range(n)], xs) for i in range(n)]
        for _ in range(max(D - 1, 1)):
            cur = Substitution(psi, D)
            rhs = [xs[i] - cur.apply(highs[i]) for i in range(n)]
            psi = [lin_comb([Linv[i][j] for j in range(n)], rhs) for i in range(n)]
        return Substitution(psi, D)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.D == other.D and self.images == other.images

    def __hash__(self):
        return hash((self.D, self.images))

    def __repr__(self):
        body = ", ".join(f"a{i + 1} -> {im}" for i, im in enumerate(self.images))
        return f"Substitution({body}; D={self.D})"

    def to_json(self):
        return {"trunc": self.D, "images": [str(im) for im in self.images]}


def apply_substitution(phi: Substitution, sigma: Operator) -> Operator:
    return phi.apply(sigma)


def invert_substitution(phi: Substitution) -> Substitution:
    return phi.inverse()


def dual_substitution(phi: Substitution, f: Polynomial, s: int | None = None) -> Polynomial:
    """The polynomial ``g`` with ``<phi(sigma), g> = <sigma, f>`` for ``deg sigma <= s``.

    Then ``Ann(g) = phi(Ann f)``.
    """
    if s is None:
        s = f.degree
    if f.degree > s:
        raise InsufficientPrecisionError(f"deg f = {f.degree} exceeds the stated bound {s}")
    if phi.D < s + 1:
        raise InsufficientPrecisionError(f"substitution truncated at {phi.D}, need at least {s + 1}")
    if f.n != phi.n or f.field != phi.field:
        raise DimensionMismatchError("polynomial and substitution rings differ")
    from .monomials import table

    psi = phi.inverse()
    T = table(f.n, s + 1)
    out = {}
    for a in T.monomials:
        v = pairing(psi.apply(Operator.monomial(f.n, a, 1, f.field, trunc=phi.D)), f)
        if v:
            out[a] = v
    return Polynomial(f.n, out, f.field)
