import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FP, random_form, random_poly
from apolar.apolar import hilbert_vector
from apolar.errors import PreconditionError
from apolar.hilbert import (
    binomial_expansion,
    check_decomposition,
    decomposition_search,
    is_o_sequence,
    macaulay_bound,
    symmetric_decomposition,
)
from apolar.parse import parse_polynomial
from math import comb


def P(t, n=None):
    return parse_polynomial(t, n, FP)


@pytest.mark.parametrize("m,i,v", [(3, 2, 4), (4, 2, 5), (6, 2, 10), (4, 3, 5)])
def test_macaulay_examples(m, i, v):
    assert macaulay_bound(m, i) == v


def test_macaulay_one():
    assert all(macaulay_bound(1, n) == 1 for n in range(1, 11))
    assert macaulay_bound(0, 3) == 0


@settings(max_examples=100)
@given(st.integers(1, 500), st.integers(1, 8))
def test_binomial_expansion_reconstructs(m, i):
    exp = binomial_expansion(m, i)
    assert sum(comb(a, b) for a, b in exp) == m
    tops = [a for a, _ in exp]
    assert tops == sorted(tops, reverse=True) and len(set(tops)) == len(tops)
    assert macaulay_bound(m, i) == sum(comb(a + 1, b + 1) for a, b in exp)


def test_polynomial_ring_is_extremal():
    # H of k[x1..x3] attains the bound in every degree
    H = [comb(2 + d, 2) for d in range(6)]
    for d in range(1, 5):
        assert macaulay_bound(H[d], d) == H[d + 1]


def test_o_sequence():
    assert is_o_sequence((1, 3, 6, 10))
    assert not is_o_sequence((1, 2, 4))
    assert not is_o_sequence((1, 1, 2))


def test_decomposition_example():
    prof = symmetric_decomposition(P("x1^6 + x1^4*x2"))
    assert prof.row(0) == (1, 1, 1, 1, 1, 1, 1)
    assert prof.row(1) == (0, 0, 0, 0, 0, 0)
    assert prof.row(2) == (0, 1, 1, 1, 0)


def test_two_variable_small():
    prof = symmetric_decomposition(P("x1^3 + x2^2"))
    assert prof.row(0) == (1, 1, 1, 1)
    assert prof.row(1) == (0, 1, 0)


def test_search_with_constraint():
    got = decomposition_search((1, 4, 4, 3, 1, 1), {3: (0, 0, 0)})
    assert got == [((1, 1, 1, 1, 1, 1), (0, 2, 2, 2, 0), (0, 1, 1, 0), (0, 0, 0))]
    assert len(decomposition_search((1, 4, 4, 3, 1, 1))) >= 1


@pytest.mark.parametrize("n", [2, 3, 6])
def test_search_stretched(n):
    assert decomposition_search((1, n, 1, 1)) == [((1, 1, 1, 1), (0, n - 1, 0))]


def test_impossible_rows_rejected():
    assert not check_decomposition((1, 1, 2, 1, 1, 1), [(1, 1, 1, 1, 1, 1), (0, 0, 1, 0, 0)])
    with pytest.raises(PreconditionError):
        decomposition_search((1, 1, 2, 1, 1, 1))


def test_search_output_sorted_and_valid():
    H = (1, 3, 3, 2, 1, 1)
    got = decomposition_search(H)
    assert got == sorted(got)
    for rows in got:
        assert check_decomposition(H, rows)


def test_actual_decomposition_is_found_by_search():
    f = P("x1^5 + x2^4 + x3^2*x1^2 + x4^2*x3")
    prof = symmetric_decomposition(f)
    assert prof.rows in decomposition_search(prof.H)


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_decomposition_rows_symmetric_and_sum(seed):
    """50 random f: rows symmetric about (s-a)/2, sum to H, Delta_0 = H(leading form)."""
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    f = random_poly(rng, n, rng.randint(1, 6), FP, terms=6)
    prof = symmetric_decomposition(f)
    H = hilbert_vector(f)
    s = f.degree
    total = [0] * (s + 1)
    for a, row in enumerate(prof.rows):
        assert len(row) == s - a + 1
        assert tuple(row) == tuple(reversed(row))
        assert min(row) >= 0
        for i, v in enumerate(row):
            total[i] += v
    assert tuple(total) == H
    assert prof.row(0) == hilbert_vector(f.leading_form())
    assert check_decomposition(H, prof.rows)
    assert is_o_sequence(H)


@pytest.mark.parametrize("n,d,seed", [(3, 3, 1), (3, 4, 2), (4, 3, 3), (2, 6, 4), (4, 4, 5)])
def test_graded_has_only_row_zero(n, d, seed):
    f = random_form(random.Random(seed), n, d, FP)
    prof = symmetric_decomposition(f)
    assert prof.row(0) == hilbert_vector(f)
    assert all(not any(r) for r in prof.rows[1:])
