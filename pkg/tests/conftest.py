"""Shared fixtures and brute-force oracles.

The oracles below deliberately avoid the package's linear algebra: ranks
use plain Gaussian elimination over Fractions or ints mod p, and
contraction is re-implemented from the monomial rule.
"""
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from apolar.field import QQ, Field
from apolar.poly import Operator, Polynomial

settings.register_profile(
    "apolar", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("apolar")

FP = Field(65537)


@pytest.fixture(params=["fp", "q"])
def field(request):
    return FP if request.param == "fp" else QQ


# ---------------------------------------------------------------- oracles


def oracle_rank(rows, p=0):
    """Rank of a list of equal-length lists, exact."""
    M = [[Fraction(x) if p == 0 else int(x) % p for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][c] if p == 0 else pow(M[rank][c], p - 2, p)
        M[rank] = [x * inv if p == 0 else x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                t = M[i][c]
                M[i] = [a - t * b if p == 0 else (a - t * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def oracle_contract(b, f):
    """``a^b`` applied to a polynomial given as a dict ``exp -> coeff``."""
    out = {}
    for a, c in f.items():
        if all(x >= y for x, y in zip(a, b)):
            e = tuple(x - y for x, y in zip(a, b))
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def _monomials_upto(n, d):
    return [a for a in itertools.product(range(d + 1), repeat=n) if sum(a) <= d]


def oracle_span_dim(polys, p=0):
    keys = sorted({e for q in polys for e in q})
    if not keys:
        return 0
    return oracle_rank([[q.get(k, 0) for k in keys] for q in polys], p)


def oracle_hilbert(f: Polynomial):
    """``H(l) = dim(m^l ⌟ f) - dim(m^(l+1) ⌟ f)`` by brute force."""
    terms = dict(f.items())
    s = f.degree
    mons = _monomials_upto(f.n, s)
    p = f.field.p

    def dim_from(l):
        return oracle_span_dim([oracle_contract(b, terms) for b in mons if sum(b) >= l], p)

    dims = [dim_from(l) for l in range(s + 2)]
    return tuple(dims[l] - dims[l + 1] for l in range(s + 1))


def oracle_in_span(polys, target, p=0):
    return oracle_span_dim(polys + [target], p) == oracle_span_dim(polys, p)


# ---------------------------------------------------------------- random inputs


def random_poly(rng: random.Random, n: int, deg: int, field: Field, terms: int = 5, lowdeg: int = 0):
    """Random polynomial of exact degree ``deg`` with terms in degrees ``[lowdeg, deg]``."""
    while True:
        t = {}
        for _ in range(terms):
            d = rng.randint(lowdeg, deg)
            a = [0] * n
            for _ in range(d):
                a[rng.randrange(n)] += 1
            t[tuple(a)] = rng.randint(-5, 5)
        f = Polynomial(n, t, field)
        if f.degree == deg:
            return f


def random_operator(rng: random.Random, n: int, deg: int, field: Field, terms: int = 3, order: int = 1):
    while True:
        t = {}
        for _ in range(terms):
            d = rng.randint(order, deg)
            a = [0] * n
            for _ in range(d):
                a[rng.randrange(n)] += 1
            t[tuple(a)] = rng.randint(-4, 4)
        op = Operator(n, t, field)
        if not op.is_zero():
            return op


def random_form(rng: random.Random, n: int, deg: int, field: Field):
    from apolar.monomials import monomials_of_degree

    return Polynomial(n, {a: rng.randint(-9, 9) for a in monomials_of_degree(n, deg)}, field)


# ---------------------------------------------------------------- acceptance ledger

ACCEPTANCE: dict = {}


def record_acceptance(num: int, ok: bool, detail: str):
    line = f"ACCEPTANCE {num:>2} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[num] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
