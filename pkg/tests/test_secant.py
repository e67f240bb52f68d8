import random

import pytest

from conftest import FP, oracle_rank
from apolar.apolar import apolar_ideal, hilbert_vector
from apolar.errors import PreconditionError
from apolar.field import QQ
from apolar.ideal import TruncatedIdeal
from apolar.parse import parse_operator, parse_polynomial
from apolar.poly import Operator, contract
from apolar.secant import catalecticant_matrix, catalecticant_rank, divided_power, is_m_saturated, sigma4_membership


def P(t, n=None, F=FP):
    return parse_polynomial(t, n, F)


def test_divided_power_contracts_like_rank_one():
    l = [2, 3, 5]
    f = divided_power(l, 4, FP)
    a1 = Operator.variable(3, 0, FP)
    assert contract(a1, f) == divided_power(l, 3, FP).scale(2)
    assert catalecticant_rank(f, 2) == 1


@pytest.mark.parametrize("s", [4, 5, 6])
def test_power_has_rank_one(s):
    assert catalecticant_rank(P(f"x1^{s}", n=3), 2) == 1


def test_catalecticant_matches_explicit_matrix():
    rng = random.Random(3)
    F = FP
    f = sum((divided_power([rng.randrange(F.p) for _ in range(4)], 4, F) for _ in range(4)),
            divided_power([0, 0, 0, 0], 4, F))
    rows, _, _ = catalecticant_matrix(f, 2)
    assert catalecticant_rank(f, 2) == oracle_rank(rows, F.p) == 4


@pytest.mark.parametrize("s", [4, 5, 6, 7])
@pytest.mark.parametrize("form", ["x1^{s} + x2^{s} + x3^{s}", "x1^{t}*x2 + x3^{s}", "x1^{u}*(x1*x3 + x2^2)"])
def test_third_secant_representatives(s, form):
    F = P(form.format(s=s, t=s - 1, u=s - 2), n=3)
    assert catalecticant_rank(F, 2) == 3
    assert hilbert_vector(F)[:4] == (1, 3, 3, 3)


def test_sigma4_rank_three_example():
    assert sigma4_membership(P("x1^5*x2 + x3^6"))


@pytest.mark.parametrize("s,n", [(4, 4), (6, 5)])
def test_sigma4_sums_of_powers(s, n):
    rng = random.Random(s)
    F = FP
    for k in range(1, 6):
        while True:
            f = divided_power([0] * n, s, F)
            for _ in range(k):
                f = f + divided_power([rng.randrange(F.p) for _ in range(n)], s, F)
            if catalecticant_rank(f, s // 2) == k:  # retry degenerate draws
                break
        assert sigma4_membership(f) == (k <= 4)


def test_sigma4_low_degree():
    with pytest.raises(PreconditionError):
        sigma4_membership(P("x1^3"))
    with pytest.raises(PreconditionError):
        catalecticant_rank(P("x1^3 + x2"), 1)


def test_m_saturation():
    F = QQ
    I = TruncatedIdeal.from_generators([parse_operator(t, 2, F) for t in ("a1^2", "a1*a2", "a2^2")], 4)
    assert not is_m_saturated(I, 2)
    assert is_m_saturated(TruncatedIdeal.unit(2, F, 3), 2)
    f = P("x1^2*x2 + x3^3", F=F)
    J = apolar_ideal(f)
    assert all(is_m_saturated(J, m) for m in range(f.degree + 1))


def test_m_saturation_needs_graded():
    with pytest.raises(PreconditionError):
        is_m_saturated(apolar_ideal(P("x1^3 + x2^2")), 2)
