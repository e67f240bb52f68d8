"""Sparse polynomials in P = k[x_1..x_n] and truncated operators in S/m^D.

Both are immutable maps ``exponent tuple -> nonzero scalar``.  Operators use
the dual variables ``a1..an`` and may carry a truncation degree: terms of
degree ``>= trunc`` are dropped on construction and after every product.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatchError
from .field import QQ, Field

ZERO_DEGREE = -1  # degree of the zero polynomial


class _Sparse:
    __slots__ = ("n", "field", "_terms", "_hash")
    _var = "x"

    def __init__(self, n: int, terms: Mapping | Iterable = (), field: Field = QQ):
        self.n = n
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        conv = field.convert
        for a, c in items:
            a = tuple(int(e) for e in a)
            if len(a) != n or min(a, default=0) < 0:
                raise DimensionMismatchError(f"exponent {a} does not fit {n} variables")
            if not self._keep(a):
                continue
            acc[a] = conv(acc.get(a, 0) + conv(c))
        self._terms = {a: c for a, c in acc.items() if c != 0}
        self._hash = None

    def _keep(self, a) -> bool:
        return True

    def _new(self, terms):
        return type(self)(self.n, terms, self.field)

    @classmethod
    def _from_clean(cls, n, field, terms, **kw):
        obj = cls.__new__(cls)
        obj.n = n
        obj.field = field
        obj._terms = terms
        obj._hash = None
        for k, v in kw.items():
            setattr(obj, k, v)
        return obj

    # constructors
    @classmethod
    def zero(cls, n: int, field: Field = QQ, **kw):
        return cls(n, {}, field, **kw)

    @classmethod
    def constant(cls, n: int, c=1, field: Field = QQ, **kw):
        return cls(n, {(0,) * n: c}, field, **kw)

    @classmethod
    def variable(cls, n: int, i: int, field: Field = QQ, **kw):
        """The ``i``-th variable, 0-based."""
        a = [0] * n
        a[i] = 1
        return cls(n, {tuple(a): 1}, field, **kw)

    @classmethod
    def monomial(cls, n: int, a, c=1, field: Field = QQ, **kw):
        return cls(n, {tuple(a): c}, field, **kw)

    # inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, a):
        return self._terms.get(tuple(a), self.field.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self._terms), default=ZERO_DEGREE)

    @property
    def order(self) -> int:
        """Lowest total degree of a term (``ZERO_DEGREE`` for zero)."""
        return min((sum(a) for a in self._terms), default=ZERO_DEGREE)

    def component(self, d: int):
        return self._new({a: c for a, c in self._terms.items() if sum(a) == d})

    def components_below(self, d: int):
        return self._new({a: c for a, c in self._terms.items() if sum(a) < d})

    def leading_form(self):
        return self.component(self.degree)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self._terms}) <= 1

    def constant_term(self):
        return self._terms.get((0,) * self.n, self.field.zero())

    def used_variables(self) -> list[int]:
        return [i for i in range(self.n) if any(a[i] for a in self._terms)]

    def linear_part(self) -> list:
        """Coefficients of the degree-one terms, one per variable."""
        out = [self.field.zero()] * self.n
        for a, c in self._terms.items():
            if sum(a) == 1:
                out[a.index(1)] = c
        return out

    # arithmetic
    def _check(self, other):
        if not isinstance(other, _Sparse):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n or other.field != self.field:
            raise DimensionMismatchError(
                f"ring mismatch: {self.n} vars over {self.field} vs {other.n} vars over {other.field}"
            )

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return self.constant(self.n, other, self.field)
        return other

    def __add__(self, other):
        other = self._lift(other)
        self._check(other)
        t = dict(self._terms)
        for a, c in other._terms.items():
            t[a] = t.get(a, 0) + c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.field.convert(c)
        return self._new({a: c * v for a, v in self._terms.items()})

    def _mul_terms(self, other):
        t: dict = {}
        keep = self._keep
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                if keep(e):
                    t[e] = t.get(e, 0) + c * d
        return t

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return self._new(self._mul_terms(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.constant(self.n, 1, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, _Sparse) or type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.n, self.field, frozenset(self._terms.items())))
        return self._hash

    # embedding
    def extend(self, n_new: int):
        """Same element viewed in ``n_new >= n`` variables (new ones appended)."""
        pad = (0,) * (n_new - self.n)
        return type(self)._from_clean(n_new, self.field, {a + pad: c for a, c in self._terms.items()},
                                      **self._extra())

    def permute(self, perm: list[int]):
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for a, c in self._terms.items():
            b = [0] * self.n
            for i, e in enumerate(a):
                b[perm[i]] = e
            out[tuple(b)] = c
        return type(self)._from_clean(self.n, self.field, out, **self._extra())

    def _extra(self):
        return {}

    def to_field(self, field: Field):
        return type(self)(self.n, self._terms, field, **self._extra())

    # printing
    def sorted_terms(self):
        from .monomials import degrevlex_key

        return sorted(self._terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            mon = "*".join(
                f"{self._var}{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e
            )
            if self.field.p:
                cs = str(c) if c <= self.field.p // 2 else f"-{self.field.p - c}"
            else:
                cs = str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if mon:
                body = mon if mag == "1" else (f"({mag})" if "/" in mag else mag) + "*" + mon
            else:
                body = mag
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def to_json(self):
        return [[list(a), self.field.to_json(c)] for a, c in self.sorted_terms()]


class Polynomial(_Sparse):
    """Element of P = k[x_1..x_n]."""

    __slots__ = ()
    _var = "x"


class Operator(_Sparse):
    """Element of S/m^D, written in the dual variables a1..an.

    ``trunc=None`` means no truncation (a polynomial operator).
    """

    __slots__ = ("trunc",)
    _var = "a"

    def __init__(self, n: int, terms=(), field: Field = QQ, trunc: int | None = None):
        self.trunc = trunc
        super().__init__(n, terms, field)

    def _keep(self, a) -> bool:
        return self.trunc is None or sum(a) < self.trunc

    def _new(self, terms):
        return Operator(self.n, terms, self.field, self.trunc)

    def _extra(self):
        return {"trunc": self.trunc}

    def _mul_trunc(self, other):
        ts = [t for t in (self.trunc, other.trunc) if t is not None]
        return min(ts) if ts else None

    def __add__(self, other):
        other = self._lift(other)
        out = super().__add__(other)
        tr = self._mul_trunc(other)
        return out if tr == out.trunc else out.truncate(tr)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        tr = self._mul_trunc(other)
        return Operator(self.n, self._mul_terms_trunc(other, tr), self.field, tr)

    def _mul_terms_trunc(self, other, tr):
        t: dict = {}
        for a, c in self._terms.items():
            da = sum(a)
            for b, d in other._terms.items():
                if tr is not None and da + sum(b) >= tr:
                    continue
                e = tuple(x + y for x, y in zip(a, b))
                t[e] = t.get(e, 0) + c * d
        return t

    def truncate(self, D: int | None):
        return Operator(self.n, self._terms, self.field, D)

    def __eq__(self, other):
        # equality ignores the truncation tag; compare terms only
        return super().__eq__(other)

    __hash__ = _Sparse.__hash__


def contract(sigma: Operator, f: Polynomial) -> Polynomial:
    """``sigma ⌟ f``: ``a^b ⌟ x^a = x^(a-b)`` when ``a >= b``, else 0."""
    if not isinstance(sigma, Operator) or not isinstance(f, Polynomial):
        raise TypeError("contract expects (Operator, Polynomial)")
    if sigma.n != f.n or sigma.field != f.field:
        raise DimensionMismatchError(
            f"cannot contract: operator in {sigma.n} vars over {sigma.field}, "
            f"polynomial in {f.n} vars over {f.field}"
        )
    out: dict = {}
    fterms = f._terms
    for b, c in sigma._terms.items():
        for a, v in fterms.items():
            ok = True
            for x, y in zip(a, b):
                if x < y:
                    ok = False
                    break
            if ok:
                e = tuple(x - y for x, y in zip(a, b))
                out[e] = out.get(e, 0) + c * v
    return Polynomial(f.n, out, f.field)


def pairing(sigma: Operator, f: Polynomial):
    """Constant term of ``sigma ⌟ f``."""
    if sigma.n != f.n or sigma.field != f.field:
        raise DimensionMismatchError("pairing of mismatched rings")
    acc = 0
    for a, c in sigma._terms.items():
        v = f._terms.get(a)
        if v is not None:
            acc += c * v
    return f.field.convert(acc)


def as_operator(p: Polynomial, trunc: int | None = None) -> Operator:
    """Reinterpret ``x``-exponents as ``a``-exponents."""
    return Operator(p.n, p._terms, p.field, trunc)


def as_polynomial(s: Operator) -> Polynomial:
    return Polynomial(s.n, s._terms, s.field)
