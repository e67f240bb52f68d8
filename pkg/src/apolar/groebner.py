"""A small Buchberger engine for zero-dimensional ideals.

Polynomials are dicts ``exponent -> scalar``; inputs may be any
:class:`~apolar.poly.Operator` or :class:`~apolar.poly.Polynomial`.
Besides reduced bases it provides multiplication matrices, minimal
polynomials and the split of the quotient into local pieces.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import BudgetExceededError, NotZeroDimensionalError, PreconditionError
from .field import Field
from .linalg import Subspace, left_kernel
from .monomials import degrevlex_key, divides
from .poly import Operator

ORDERS = {
    "degrevlex": degrevlex_key,
    "lex": lambda a: tuple(a),
}


def _step_budget() -> int:
    for part in os.environ.get("APOLAR_BUDGET", "").split(","):
        k, _, v = part.partition("=")
        if k.strip() == "steps" and v.strip():
            return int(v)
    return 200_000


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lcm_mon(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Ring:
    def __init__(self, n: int, field: Field, order: str):
        if order not in ORDERS:
            raise PreconditionError(f"unknown monomial order {order!r}")
        self.n = n
        self.field = field
        self.key = ORDERS[order]

    def lm(self, p):
        return max(p, key=self.key)

    def monic(self, p):
        m = self.lm(p)
        inv = self.field.inv(p[m])
        conv = self.field.convert
        return {a: conv(c * inv) for a, c in p.items()}

    def axpy(self, p, c, q, shift):
        """``p -= c * x^shift * q`` in place."""
        conv = self.field.convert
        for e, x in q.items():
            ee = _add(e, shift)
            v = conv(p.get(ee, 0) - c * x)
            if v:
                p[ee] = v
            else:
                p.pop(ee, None)

    def reduce(self, p, G, lms, full=True):
        p = dict(p)
        r = {}
        key = self.key
        while p:
            m = max(p, key=key)
            c = p[m]
            for g, lg in zip(G, lms):
                if divides(lg, m):
                    self.axpy(p, c, g, _sub(m, lg))
                    break
            else:
                if not full:
                    r.update(p)
                    return r
                r[m] = c
                del p[m]
        return r


@dataclass(frozen=True)
class GroebnerBasis:
    n: int
    field: Field
    order: str
    generators: tuple  # reduced, monic Operators sorted by leading monomial
    leading: tuple
    quotient_basis: tuple | None  # standard monomials, None if infinite

    @property
    def is_zero_dimensional(self) -> bool:
        return self.quotient_basis is not None

    def dimension(self) -> int:
        if self.quotient_basis is None:
            raise NotZeroDimensionalError("quotient is not finite-dimensional")
        return len(self.quotient_basis)

    def _dicts(self):
        return [dict(g.items()) for g in self.generators]

    def contains(self, p) -> bool:
        return normal_form(p, self).is_zero()


def buchberger(gens, order: str = "degrevlex", n: int | None = None, field: Field | None = None) -> GroebnerBasis:
    """Reduced Groebner basis (normal pair selection, criteria 1 and 2)."""
    gens = [g for g in gens]
    if not gens and (n is None or field is None):
        raise PreconditionError("buchberger needs a nonempty generator list")
    if gens:
        n = gens[0].n if n is None else n
        field = gens[0].field if field is None else field
    R = _Ring(n, field, order)
    budget = _step_budget()
    G: list[dict] = []
    lms: list[tuple] = []
    pairs: set = set()
    steps = 0

    def add(h):
        h = R.monic(h)
        G.append(h)
        lms.append(R.lm(h))
        k = len(G) - 1
        for i in range(k):
            pairs.add((i, k))

    for g in gens:
        h = {a: c for a, c in g.items()}
        h = R.reduce(h, G, lms) if G else h
        if h:
            add(h)
    if any(sum(m) == 0 for m in lms):
        G, lms = [{(0,) * n: field.one()}], [(0,) * n]
        pairs.clear()
    done: set = set()
    while pairs:
        steps += 1
        if steps > budget:
            raise BudgetExceededError(f"Buchberger exceeded {budget} steps (APOLAR_BUDGET steps=)")
        i, j = min(pairs, key=lambda ij: (sum(_lcm_mon(lms[ij[0]], lms[ij[1]])),
                                           R.key(_lcm_mon(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        L = _lcm_mon(lms[i], lms[j])
        # criterion 1: coprime leading monomials
        if all(min(x, y) == 0 for x, y in zip(lms[i], lms[j])):
            continue
        # criterion 2: chain through some k already paired with both
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not divides(lms[k], L):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                skip = True
                break
        if skip:
            continue
        s = {}
        R.axpy(s, -field.one(), G[i], _sub(L, lms[i]))
        R.axpy(s, field.one(), G[j], _sub(L, lms[j]))
        h = R.reduce(s, G, lms)
        if h:
            add(h)
            if sum(lms[-1]) == 0:
                G, lms = [{(0,) * n: field.one()}], [(0,) * n]
                pairs.clear()
                break
    return _finish(R, G, lms, order)


def _finish(R: _Ring, G, lms, order) -> GroebnerBasis:
    keep = []
    for k, m in enumerate(lms):
        if any(j != k and divides(lms[j], m) and (lms[j] != m or j < k) for j in range(len(lms))):
            continue
        keep.append(k)
    G = [G[k] for k in keep]
    lms = [lms[k] for k in keep]
    red = []
    for k in range(len(G)):
        others = [G[j] for j in range(len(G)) if j != k]
        olms = [lms[j] for j in range(len(G)) if j != k]
        h = R.reduce(G[k], others, olms)
        red.append(R.monic(h))
    order_idx = sorted(range(len(red)), key=lambda k: R.key(lms[k]))
    gens = tuple(Operator(R.n, red[k], R.field) for k in order_idx)
    leading = tuple(lms[k] for k in order_idx)
    return GroebnerBasis(R.n, R.field, order, gens, leading, _standard_monomials(R, leading))


def _standard_monomials(R: _Ring, leading):
    n = R.n
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in leading):
            return None
    if any(sum(m) == 0 for m in leading):
        return ()
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(n):
                b = list(a)
                b[i] += 1
                b = tuple(b)
                if b in seen or any(divides(m, b) for m in leading):
                    continue
                seen.add(b)
                nxt.append(b)
        frontier = nxt
    return tuple(sorted(seen, key=R.key))


def normal_form(p, G: GroebnerBasis) -> Operator:
    if p.n != G.n or p.field != G.field:
        raise PreconditionError("ring mismatch in normal_form")
    R = _Ring(G.n, G.field, G.order)
    r = R.reduce(dict(p.items()), G._dicts(), list(G.leading))
    return Operator(G.n, r, G.field)


# ---------------------------------------------------------------- univariate


def _utrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _udivmod(a, b, F: Field):
    a = list(a)
    q = [F.zero()] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while len(_utrim(a)) >= len(b):
        c = F.convert(a[-1] * inv)
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] = F.convert(a[k + i] - c * x)
        _utrim(a)
    return _utrim(q), a


def _umul(a, b, F: Field):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _utrim([F.convert(v) for v in out])


def _ugcd(a, b, F: Field):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        a, b = b, _udivmod(a, b, F)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.convert(x * inv) for x in a]
    return a


def _upowmod(base, e, mod, F: Field):
    out = [F.one()]
    base = _udivmod(base, mod, F)[1]
    while e:
        if e & 1:
            out = _udivmod(_umul(out, base, F), mod, F)[1]
        base = _udivmod(_umul(base, base, F), mod, F)[1]
        e >>= 1
    return out


def _usub(a, b, F: Field):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return _utrim([F.convert(x - y) for x, y in zip(a, b)])


def _roots_fp(f, F: Field, rng: random.Random) -> list:
    p = F.p
    roots = []
    if f and f[0] == 0:
        roots.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return roots
    g = _ugcd(f, _usub(_upowmod([0, 1], p, f, F), [0, 1], F), F)  # product of distinct linear factors

    def split(h):
        if len(h) <= 1:
            return []
        if len(h) == 2:
            return [F.convert(-h[0] * F.inv(h[1]))]
        while True:
            a = rng.randrange(p)
            w = _usub(_upowmod([a, 1], (p - 1) // 2, h, F), [1], F)
            d = _ugcd(h, w, F)
            if 1 < len(d) < len(h):
                return split(d) + split(_udivmod(h, d, F)[0])

    return sorted(set(roots + split(g)))


def _divisors(m: int):
    m = abs(m)
    out = set()
    k = 1
    while k * k <= m:
        if m % k == 0:
            out.add(k)
            out.add(m // k)
        k += 1
    return out


def _roots_q(f) -> list:
    roots = []
    if f and f[0] == 0:
        roots.append(Fraction(0))
        while f and f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return roots
    den = lcm(*[Fraction(c).denominator for c in f])
    ints = [int(Fraction(c) * den) for c in f]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for r in sorted(cands):
        v = Fraction(0)
        for c in reversed(ints):
            v = v * r + c
        if v == 0:
            roots.append(r)
    return sorted(set(roots))


def univariate_roots(f, F: Field, seed: int = 0) -> list:
    """Roots in the base field of ``sum f[k] T^k``."""
    f = _utrim([F.convert(c) for c in f])
    if not f:
        raise PreconditionError("zero polynomial has every element as a root")
    if F.p:
        return _roots_fp(f, F, random.Random(seed))
    return _roots_q(f)


def root_multiplicity(f, r, F: Field) -> int:
    f = _utrim([F.convert(c) for c in f])
    k = 0
    lin = [F.neg(F.convert(r)), F.one()]
    while len(f) > 1:
        q, rem = _udivmod(f, lin, F)
        if rem:
            break
        f = q
        k += 1
    return k


# ---------------------------------------------------------------- quotient algebra


@dataclass(frozen=True)
class MultiplicationData:
    matrix: tuple  # matrix[r][c]: coefficient of basis r in a_i * basis c
    minimal_polynomial: tuple  # coefficients, low degree first, monic


def _mult_matrix(G: GroebnerBasis, i: int):
    B = G.quotient_basis
    if B is None:
        raise NotZeroDimensionalError("quotient is not finite-dimensional")
    idx = {b: k for k, b in enumerate(B)}
    L = len(B)
    F = G.field
    M = [[F.zero()] * L for _ in range(L)]
    R = _Ring(G.n, F, G.order)
    gd, gl = G._dicts(), list(G.leading)
    for c, b in enumerate(B):
        e = list(b)
        e[i] += 1
        nf = R.reduce({tuple(e): F.one()}, gd, gl)
        for a, x in nf.items():
            M[idx[a]][c] = x
    return M


def _matmul(A, B, F):
    n, m, k = len(A), len(B[0]) if B else 0, len(B)
    return [[F.convert(sum(A[r][t] * B[t][c] for t in range(k) if A[r][t])) for c in range(m)] for r in range(n)]


def minimal_polynomial(M, F: Field) -> tuple:
    """Minimal polynomial by Krylov iteration on flattened powers."""
    L = len(M)
    if L == 0:
        return (F.one(),)
    ident = [[F.one() if r == c else F.zero() for c in range(L)] for r in range(L)]
    powers = [ident]
    while True:
        flat = [{k: x for k, x in enumerate(v for row in P for v in row) if x} for P in powers]
        ker = left_kernel(F, flat, L * L)
        if ker:
            # smallest dependency: the kernel vector with the lowest top index
            v = min(ker, key=lambda d: max(d))
            top = max(v)
            inv = F.inv(v[top])
            coeffs = [F.convert(v.get(k, 0) * inv) for k in range(top + 1)]
            return tuple(coeffs)
        powers.append(_matmul(powers[-1], M, F))


def multiplication_data(G: GroebnerBasis, i: int) -> MultiplicationData:
    M = _mult_matrix(G, i)
    return MultiplicationData(tuple(tuple(r) for r in M), minimal_polynomial(M, G.field))


@dataclass(frozen=True)
class SupportResult:
    status: str  # "complete" or "partial"
    points: tuple  # ((coords...), local_length)
    unsplit: tuple  # (variable, leftover factor coefficients) when partial
    total_length: int

    def local_length_at(self, point) -> int | None:
        for pt, ln in self.points:
            if pt == tuple(point):
                return ln
        return None

    def to_json(self, field: Field):
        return {
            "status": self.status,
            "total_length": self.total_length,
            "points": [{"point": [field.to_json(c) for c in pt], "local_length": ln} for pt, ln in self.points],
        }


def _kernel_of_power(A, k, F: Field, L: int) -> Subspace:
    P = [[F.one() if r == c else F.zero() for c in range(L)] for r in range(L)]
    for _ in range(k):
        P = _matmul(P, A, F)
    cols = [{r: P[r][c] for r in range(L) if P[r][c]} for c in range(L)]
    ker = left_kernel(F, cols, L)
    return Subspace.from_vectors(F, L, ker)


def support_and_local_lengths(G: GroebnerBasis, seed: int = 0) -> SupportResult:
    """Points of ``V(I)`` in the base field with local lengths.

    Each coordinate's generalized eigenspaces are intersected in turn; if a
    minimal polynomial does not split the result is marked ``partial``.
    """
    B = G.quotient_basis
    if B is None:
        raise NotZeroDimensionalError("quotient is not finite-dimensional")
    F = G.field
    L = len(B)
    if L == 0:
        return SupportResult("complete", (), (), 0)
    pieces = [((), Subspace.whole(F, L))]
    unsplit = []
    for i in range(G.n):
        M = _mult_matrix(G, i)
        mu = list(minimal_polynomial(M, F))
        roots = univariate_roots(mu, F, seed)
        split_deg = sum(root_multiplicity(mu, r, F) for r in roots)
        if split_deg < len(mu) - 1:
            rest = mu
            for r in roots:
                for _ in range(root_multiplicity(mu, r, F)):
                    rest = _udivmod(rest, [F.neg(r), F.one()], F)[0]
            unsplit.append((i, tuple(rest)))
        new = []
        for pt, W in pieces:
            for r in roots:
                A = [[F.convert(M[a][b] - (r if a == b else 0)) for b in range(L)] for a in range(L)]
                K = _kernel_of_power(A, L, F, L)
                Wr = W.intersect(K)
                if Wr.dim:
                    new.append((pt + (r,), Wr))
        pieces = new
    pts = tuple(sorted(((pt, W.dim) for pt, W in pieces), key=lambda t: [(Fraction(c) if not F.p else c) for c in t[0]]))
    status = "complete" if not unsplit and sum(ln for _, ln in pts) == L else "partial"
    return SupportResult(status, pts, tuple(unsplit), L)
