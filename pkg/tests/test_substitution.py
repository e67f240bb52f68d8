import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FP, random_operator, random_poly
from apolar.apolar import apolar_ideal, hilbert_vector, tangent_space_dimension
from apolar.errors import NotAutomorphismError
from apolar.field import QQ
from apolar.ideal import TruncatedIdeal
from apolar.parse import parse_operator as O, parse_polynomial as P
from apolar.poly import Operator, pairing
from apolar.substitution import Substitution, dual_substitution


def _random_auto(rng, n, F, D):
    while True:
        imgs = {}
        for i in range(n):
            lin = Operator(n, {tuple(int(j == k) for k in range(n)): rng.randint(-2, 2) or 1 for j in range(n)
                               if j == i or rng.random() < 0.3}, F)
            imgs[i] = lin + random_operator(rng, n, 3, F, terms=2, order=2)
        try:
            phi = Substitution.from_dict(n, F, D, imgs)
            phi.inverse()
            return phi
        except NotAutomorphismError:
            continue


def test_rejects_constant_term_and_singular_linear_part():
    a1, a2 = Operator.variable(2, 0, QQ), Operator.variable(2, 1, QQ)
    with pytest.raises(NotAutomorphismError):
        Substitution.from_dict(2, QQ, 4, {0: a1 + 1})
    with pytest.raises(NotAutomorphismError):
        Substitution.from_dict(2, QQ, 4, {1: a1}).inverse()


def test_inverse_of_quadratic_shear():
    a1, a2 = Operator.variable(2, 0, QQ), Operator.variable(2, 1, QQ)
    phi = Substitution.from_dict(2, QQ, 8, {1: a2 + a1 ** 2})
    assert phi.inverse().images[1] == a2 - a1 ** 2


def test_standard_transport_example():
    F = QQ
    f = P("x1^6 + x1^4*x2")
    phi = Substitution.from_dict(2, F, 8, {1: O("a2 + a1^2", 2)})
    g = dual_substitution(phi, f)
    assert g == P("x1^6 - x1^2*x2^2 + 2*x2^3")
    img = TruncatedIdeal.from_generators([phi.apply(x) for x in apolar_ideal(f, 8).minimal_generators()], 8)
    assert apolar_ideal(g, 8) == img
    assert img == TruncatedIdeal.from_generators([O("(a2 + a1^2)^2", 2), O("a1^3*a2", 2)], 8)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_inverse_composes_to_identity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    D = 5
    phi = _random_auto(rng, n, FP, D)
    psi = phi.inverse()
    ident = Substitution.identity(n, FP, D)
    assert phi.compose(psi) == ident
    assert psi.compose(phi) == ident


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_dual_substitution_pairing_and_invariants(seed):
    """<phi(s), g> = <s, f>, Hilbert function and tangent dimension are preserved."""
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = random_poly(rng, n, rng.randint(1, 4), FP)
    s = f.degree
    phi = _random_auto(rng, n, FP, s + 1)
    g = dual_substitution(phi, f)
    for _ in range(5):
        sig = random_operator(rng, n, s, FP, order=0)
        assert pairing(phi.apply(sig).truncate(None), g) == pairing(sig, f)
    assert hilbert_vector(g) == hilbert_vector(f)
    if seed % 5 == 0:
        assert tangent_space_dimension(g) == tangent_space_dimension(f)
