import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FP, oracle_rank, random_poly
from apolar.apolar import apolar_ideal, hilbert_vector
from apolar.errors import BudgetExceededError, NotZeroDimensionalError
from apolar.field import QQ, Field
from apolar.groebner import (
    buchberger,
    minimal_polynomial,
    multiplication_data,
    normal_form,
    root_multiplicity,
    support_and_local_lengths,
    univariate_roots,
)
from apolar.parse import parse_operator
from apolar.poly import Operator


def O(t, n, F=QQ):
    return parse_operator(t, n, F)


def _poly_from_roots(roots, F):
    c = [F.one()]
    for r in roots:
        nxt = [F.zero()] * (len(c) + 1)
        for k, x in enumerate(c):
            nxt[k + 1] = F.convert(nxt[k + 1] + x)
            nxt[k] = F.convert(nxt[k] - r * x)
        c = nxt
    return c


@pytest.mark.parametrize("F", [QQ, FP])
def test_univariate_roots_known(F):
    roots = [F.convert(x) for x in (1, 2, 2, -3)]
    f = _poly_from_roots(roots, F)
    assert univariate_roots(f, F) == sorted(set(roots))
    assert root_multiplicity(f, F.convert(2), F) == 2


def test_rational_roots():
    f = [Fraction(-1), Fraction(0), Fraction(4)]  # 4T^2 - 1
    assert univariate_roots(f, QQ) == [Fraction(-1, 2), Fraction(1, 2)]
    assert univariate_roots([Fraction(1), Fraction(0), Fraction(1)], QQ) == []


def test_roots_fp_irreducible_factor():
    F = Field(7)
    # T^2 + 1 has no root mod 7; times (T - 3)
    f = _poly_from_roots([3], F)
    g = [1, 0, 1]
    prod = [0] * 4
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            prod[i + j] = (prod[i + j] + a * b) % 7
    assert univariate_roots(prod, F) == [3]


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_minimal_polynomial_oracle(seed):
    rng = random.Random(seed)
    F = FP
    L = rng.randint(1, 5)
    M = [[F.convert(rng.randint(-2, 2)) for _ in range(L)] for _ in range(L)]
    mu = minimal_polynomial(M, F)
    k = len(mu) - 1
    # powers I, M, ..., M^k: first dependency occurs at k
    powers = [[[int(i == j) for j in range(L)] for i in range(L)]]
    for _ in range(L):
        A = powers[-1]
        powers.append([[sum(A[i][t] * M[t][j] for t in range(L)) % F.p for j in range(L)] for i in range(L)])
    flat = [[x for row in P for x in row] for P in powers]
    assert oracle_rank(flat[:k], F.p) == k
    assert oracle_rank(flat[: k + 1], F.p) == k
    assert mu[-1] == 1
    total = [[sum(mu[d] * powers[d][i][j] for d in range(k + 1)) % F.p for j in range(L)] for i in range(L)]
    assert not any(any(r) for r in total)


def test_reduced_basis_and_normal_form():
    a1, a2 = Operator.variable(2, 0, QQ), Operator.variable(2, 1, QQ)
    G = buchberger([a1 ** 2 - a2, a2 ** 2])
    assert G.dimension() == 4
    assert G.contains(a1 ** 4)
    assert normal_form(a1 ** 2, G) == a2
    assert not G.contains(a1)


def test_not_zero_dimensional():
    a1 = Operator.variable(2, 0, QQ)
    G = buchberger([a1 ** 2])
    assert not G.is_zero_dimensional
    with pytest.raises(NotZeroDimensionalError):
        G.dimension()


def test_lex_and_degrevlex_agree_on_length():
    gens = [O("a1^2 - a2", 2), O("a2^3 - a1", 2)]
    assert buchberger(gens, "lex").dimension() == buchberger(gens).dimension()


@pytest.mark.parametrize("F", [QQ, FP])
def test_support_two_points(F):
    a1 = Operator.variable(1, 0, F)
    G = buchberger([(a1 - 1) * (a1 - 2) ** 2])
    sup = support_and_local_lengths(G)
    assert sup.status == "complete"
    assert sup.points == ((( F.convert(1),), 1), ((F.convert(2),), 2))


def test_support_partial_over_q():
    a1 = Operator.variable(1, 0, QQ)
    G = buchberger([(a1 - 1) * (a1 ** 2 + 1)])
    sup = support_and_local_lengths(G)
    assert sup.status == "partial"
    assert sup.local_length_at((1,)) == 1
    assert sup.total_length == 3


def test_support_in_two_variables():
    F = FP
    a1, a2 = Operator.variable(2, 0, F), Operator.variable(2, 1, F)
    # two reduced points on the diagonal
    gens = [a1 * (a1 - 1), a2 * (a2 - 1), a1 - a2]
    G = buchberger(gens)
    sup = support_and_local_lengths(G)
    assert sup.points == (((0, 0), 1), ((1, 1), 1))
    md = multiplication_data(G, 0)
    assert md.minimal_polynomial == (0, F.p - 1, 1)


def test_step_budget(monkeypatch):
    monkeypatch.setenv("APOLAR_BUDGET", "steps=1")
    with pytest.raises(BudgetExceededError):
        buchberger([O("a1^3 - a2", 2), O("a2^2 - a1*a2", 2), O("a1*a2^2", 2)])


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_groebner_length_equals_apolar_length(seed):
    """20 random f: dim S/(Ann f) by Buchberger equals sum of H."""
    rng = random.Random(seed)
    F = FP if seed % 2 else QQ
    n = rng.randint(1, 3)
    f = random_poly(rng, n, rng.randint(1, 4), F)
    I = apolar_ideal(f)
    s = f.degree
    gens = I.minimal_generators() + [Operator.monomial(n, tuple(s + 1 if k == j else 0 for k in range(n)), 1, F)
                                      for j in range(n)]
    G = buchberger(gens)
    assert G.dimension() == sum(hilbert_vector(f))
    sup = support_and_local_lengths(G)
    assert sup.points == ((tuple([F.zero()] * n), G.dimension()),)
