import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FP, oracle_contract, oracle_in_span, oracle_span_dim, random_operator, random_poly
from apolar.apolar import apolar_ideal
from apolar.errors import DimensionMismatchError, InsufficientPrecisionError, PreconditionError
from apolar.field import QQ
from apolar.ideal import TruncatedIdeal, operator_to_vector, vector_to_operator
from apolar.monomials import table
from apolar.parse import parse_operator as O, parse_polynomial as P
from apolar.poly import Operator, contract

seeds = st.integers(0, 10**6)


def _vec_poly(op, D):
    return {e: c for e, c in op.items() if sum(e) < D}


def _brute_ideal_span(gens, n, D):
    """Span of all monomial multiples of ``gens`` below degree ``D``."""
    T = table(n, D)
    out = []
    for g in gens:
        for a in T.monomials:
            m = Operator.monomial(n, a, 1, g.field)
            v = _vec_poly(m * g, D)
            if v:
                out.append(v)
    return out


def test_vector_roundtrip():
    op = O("a1^2 - 3*a1*a2 + a2", 2)
    v = operator_to_vector(op, 4)
    assert vector_to_operator(v, 2, QQ, 4) == op


def test_apolar_ideal_examples():
    I = apolar_ideal(P("x1^6 + x1^4*x2"), 8)
    assert I.c == 7
    gens = I.minimal_generators()
    assert len(gens) == 2
    assert I == TruncatedIdeal.from_generators([O("a2^2", 2), O("a1^5 - a1^3*a2", 2)], 8)
    J = apolar_ideal(P("(x1^2 + x2^2)*x3"))
    assert J == TruncatedIdeal.from_generators([O(t, 3) for t in ("a1^2 - a2^2", "a1*a2", "a3^2")], 5)


def test_power_of_one_variable():
    f = P("x1^4", n=3)
    I = apolar_ideal(f)
    want = TruncatedIdeal.from_generators([O("a2", 3), O("a3", 3), O("a1^5", 3)], 6)
    assert I == want
    assert I.num_generators() == 3


def test_sum_of_two_annihilators_brute_force():
    f, g = P("x1^3", n=2), P("x2^3")
    D = 5
    I, J = apolar_ideal(f, D), apolar_ideal(g, D)
    S = I.sum(J)
    gens = I.minimal_generators() + J.minimal_generators()
    span = _brute_ideal_span(gens, 2, D)
    assert S.colength() == table(2, D).N - oracle_span_dim(span)
    assert S.c == min(I.c, J.c)


def test_identities_trivial():
    I = apolar_ideal(P("x1^2*x2 + x2^3"), 6)
    U = TruncatedIdeal.unit(2, QQ, 6)
    assert I.sum(I) == I
    assert I.intersect(I) == I
    assert I.sum(U) == U
    assert I.product(U) == I
    assert I.colon(Operator.constant(2, 1, QQ)) == I


def test_monomial_intersection_and_product():
    a, b = TruncatedIdeal.from_generators([O("a1", 2)], 4, c=4), TruncatedIdeal.from_generators([O("a2", 2)], 4, c=4)
    want = TruncatedIdeal.from_generators([O("a1*a2", 2)], 4, c=4)
    assert a.intersect(b) == want
    with pytest.raises(InsufficientPrecisionError):
        a.product(b)
    prod = a.at(8).product(b.at(8))
    assert prod.space.truncate(table(2, 4).N) == want.space


def test_colon_of_power_of_max():
    for k in (2, 3, 4):
        M = TruncatedIdeal.power_of_max(2, FP, k, k + 2)
        assert M.colon(Operator.variable(2, 0, FP)) == TruncatedIdeal.power_of_max(2, FP, k - 1, k + 1)


def test_product_needs_enough_truncation():
    I = apolar_ideal(P("x1^3"), 4)
    with pytest.raises(InsufficientPrecisionError):
        I.product(I)
    I2 = apolar_ideal(P("x1^3"), 8).product(apolar_ideal(P("x1^3"), 8))
    assert I2.colength() == 8


def test_square_brute_force():
    f = P("x1^3", n=2) + P("x1*x2")
    D = 2 * f.degree + 2
    I = apolar_ideal(f, D)
    I2 = I.product(I)
    gens = I.minimal_generators()
    prods = [x * y for x in gens for y in gens]
    span = _brute_ideal_span(prods, 2, D)
    assert I2.colength() == table(2, D).N - oracle_span_dim(span)


def test_mismatch_errors():
    I = apolar_ideal(P("x1^2 + x2^2"), 4)
    J = apolar_ideal(P("x1^2 + x2^2"), 5)
    with pytest.raises(DimensionMismatchError):
        I.sum(J)
    with pytest.raises(PreconditionError):
        I.colon(Operator.zero(2, QQ))


def test_containment_both_directions():
    I = apolar_ideal(P("x1^6 + x1^4*x2"), 8)
    J = apolar_ideal(P("x1^4*x2", n=2), 8)
    # brute force: sigma kills f and kills x1^4 x2 ?
    f = dict(P("x1^6 + x1^4*x2").items())
    g = dict(P("x1^4*x2", n=2).items())

    def kills(op, h):
        acc = {}
        for b, c in op.items():
            for e, y in oracle_contract(b, h).items():
                acc[e] = acc.get(e, 0) + c * y
        return all(v == 0 for v in acc.values())

    assert J.contains(I) == all(kills(x, g) for x in I.basis())
    assert I.contains(J) == all(kills(x, f) for x in J.basis())


@settings(max_examples=30)
@given(seeds)
def test_truncation_independence(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = random_poly(rng, n, rng.randint(1, 4), FP)
    s = f.degree
    D1, D2 = s + 1 + rng.randint(0, 2), s + 1 + rng.randint(0, 2)
    a, b = apolar_ideal(f, D1), apolar_ideal(f, D2)
    m = min(D1, D2)
    assert a.at(m).space == b.at(m).space


@settings(max_examples=50)
@given(seeds)
def test_colon_equals_annihilator_of_derivative(seed):
    """50 random pairs: (Ann f : d) = Ann(d ⌟ f)."""
    rng = random.Random(seed)
    F = FP if seed % 3 else QQ
    n = rng.randint(1, 3)
    while True:
        f = random_poly(rng, n, rng.randint(2, 5), F)
        d = random_operator(rng, n, 2, F, terms=2)
        if not contract(d, f).is_zero():
            break
    I = apolar_ideal(f, f.degree + 3)
    assert I.colon(d) == apolar_ideal(contract(d, f))


@settings(max_examples=20)
@given(seeds)
def test_product_intersection_laws(seed):
    rng = random.Random(seed)
    n = 2
    f = random_poly(rng, n, rng.randint(1, 3), FP)
    g = random_poly(rng, n, rng.randint(1, 3), FP)
    D = f.degree + g.degree + 2
    I, J = apolar_ideal(f, D), apolar_ideal(g, D)
    IJ, JI = I.product(J), J.product(I)
    assert IJ == JI
    cap = I.intersect(J)
    assert I.contains(cap) and J.contains(cap)
    assert cap.contains(IJ)


def test_product_associative():
    I = apolar_ideal(P("x1^2 + x2^2"), 9)
    J = apolar_ideal(P("x1*x2"), 9)
    K = apolar_ideal(P("x1^2", n=2), 9)
    assert I.product(J).product(K) == I.product(J.product(K))


@settings(max_examples=20)
@given(seeds)
def test_basis_is_annihilator(seed):
    """Every basis element kills f and the colength matches the span of contractions."""
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = random_poly(rng, n, rng.randint(0, 4), FP)
    if f.is_zero():
        return
    I = apolar_ideal(f)
    for b in I.basis():
        assert contract(b.truncate(None), f).is_zero()
    T = I.table
    conts = [oracle_contract(a, dict(f.items())) for a in T.monomials]
    assert I.colength() == oracle_span_dim([c for c in conts if c], FP.p)
