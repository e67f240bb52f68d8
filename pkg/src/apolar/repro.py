"""Reproduction suites: fixed published values recomputed from scratch.

Each suite is a list of cases ``(name, expected, thunk)``.  Cases run on a
thread pool and results are reported in declaration order, so output is
identical for identical ``seed`` regardless of scheduling.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .apolar import (
    apolar_ideal,
    hilbert_vector,
    is_complete_intersection,
    tangent_space_dimension,
    unobstructedness_report,
)
from .errors import ApolarError, PreconditionError
from .field import Field
from .hilbert import check_decomposition, decomposition_search, macaulay_bound, symmetric_decomposition
from .ideal import TruncatedIdeal
from .parse import parse_operator, parse_polynomial
from .poly import Operator, Polynomial, contract
from .rays import (
    LOWER,
    UPPER,
    RayFamily,
    build_ray_family,
    fiber_at,
    fiber_structure_check,
    flatness_probe,
    ray_sum,
    ray_sum_annihilator_check,
    stretched_degeneration_check,
    tangent_preserving_check,
)
from .secant import catalecticant_rank, divided_power, is_m_saturated, sigma4_membership
from .standard_form import check_standard_form, replay_certificate, split_off_squares
from .substitution import Substitution, dual_substitution

REPRO_FIELD = Field(65537)
BIG_PRIME = 1000003


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    expected: object
    thunk: Callable[[], object]


def _j(x):
    """Canonical JSON-friendly form (tuples to lists, recursively)."""
    if isinstance(x, (list, tuple)):
        return [_j(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _j(v) for k, v in x.items()}
    return x


def _P(text, F=REPRO_FIELD, n=None):
    return parse_polynomial(text, n, F)


def _O(text, n, F=REPRO_FIELD):
    return parse_operator(text, n, F)


def _error_name(fn):
    try:
        fn()
    except ApolarError as e:
        return type(e).__name__
    return "no error"


def random_form(n: int, deg: int, F: Field, rng: random.Random, bound: int = 100) -> Polynomial:
    from .monomials import monomials_of_degree

    return Polynomial(n, {a: rng.randint(-bound, bound) for a in monomials_of_degree(n, deg)}, F)


def generic_cubic_tangent(seed: int, F: Field) -> tuple:
    """``(H, tangent dim)`` for a random cubic in six variables with ``H = (1,6,6,1)``."""
    rng = random.Random(seed)
    while True:
        f = random_form(6, 3, F, rng)
        H = hilbert_vector(f)
        if H == (1, 6, 6, 1):
            return H, tangent_space_dimension(f)


# ---------------------------------------------------------------- suites

HILBERT_ROWS = [
    ("x1^6 + x1^4*x2", (1, 2, 2, 2, 1, 1, 1)),
    ("x1^2*x2*x3 + x4^2*x1", (1, 4, 5, 3, 1)),
    ("x1^2*x3 + x2^2*x3 + x4^2*x1", (1, 4, 4, 1)),
    ("x1^2*x3 + x2^2*x3 + x4^2*x1 + x5^2*x4", (1, 5, 5, 1)),
    ("x1^5 + x2^4 + x3^2*x1^2 + x4^2*x3", (1, 4, 4, 3, 1, 1)),
]

RAY_TRIPLES = [
    ("x1^2*x2^2*x3", "a2^2", 3),
    ("x1^3", "a1^2", 2),
    ("x1*x2*x3", "a1*a2", 3),
    ("x1^2*x3 + x2^2*x3", "a1*a3", 2),
    ("x1^2*x2*x3", "a2*a3", 4),
]

# (f, partial, d, lambda): d - 1 divides p - 1 and lambda has all its (d-1)-th roots
FIBER_TRIPLES = [
    ("x1^3", "a1^2", 2, 7),
    ("x1^2*x2^2*x3", "a2^2", 3, 4),
    ("x1^2*x2*x3", "a2*a3", 5, 1),
]

MONOMIAL_CIS = [
    ("x1^2*x2^2*x3", "a2^2"),
    ("x1^3*x2", "a1^2"),
    ("x1^2*x2^2", "a1^2"),
    ("x1*x2*x3", "a1*a2"),
    ("x1^4*x2^2*x3", "a1^3*a3"),
]


def _hilbert(seed):
    out = [Case("hilbert", f"H({t})", list(H), lambda t=t: list(hilbert_vector(_P(t)))) for t, H in HILBERT_ROWS]
    out.append(Case("hilbert", "generators of Ann(x1^6 + x1^4*x2)", True, lambda: apolar_ideal(
        _P("x1^6 + x1^4*x2"), 8) == TruncatedIdeal.from_generators(
        [_O("a2^2", 2), _O("a1^5 - a1^3*a2", 2)], 8, n=2, field=REPRO_FIELD)))
    out.append(Case("hilbert", "a2^2 and a1^5 - a1^3*a2 kill x1^6 + x1^4*x2", ["0", "0"], lambda: [
        str(contract(_O(o, 2), _P("x1^6 + x1^4*x2"))) for o in ("a2^2", "a1^5 - a1^3*a2")]))
    out.append(Case("hilbert", "Ann((x1^2 + x2^2)*x3)", True, lambda: apolar_ideal(_P("(x1^2 + x2^2)*x3"), 5) ==
                    TruncatedIdeal.from_generators([_O(g, 3) for g in ("a1^2 - a2^2", "a1*a2", "a3^2")],
                                                   5, n=3, field=REPRO_FIELD)))
    out.append(Case("hilbert", "#generators Ann((x1^2 + x2^2)*x3)", 3,
                    lambda: len(apolar_ideal(_P("(x1^2 + x2^2)*x3")).minimal_generators())))
    for t in ("x1^2*x2^2*x3", "(x1^2 + x2^2)*x3"):
        out.append(Case("hilbert", f"CI({t})", True, lambda t=t: is_complete_intersection(_P(t))))
    return out


def _decomposition(seed):
    def rows(t):
        return [list(r) for r in symmetric_decomposition(_P(t)).rows]

    out = [
        Case("decomposition", "rows(x1^6 + x1^4*x2)",
             [[1, 1, 1, 1, 1, 1, 1], [0, 0, 0, 0, 0, 0], [0, 1, 1, 1, 0], [0, 0, 0, 0], [0, 0, 0]],
             lambda: rows("x1^6 + x1^4*x2")),
        Case("decomposition", "search (1,4,4,3,1,1) with zero row 3",
             [[[1, 1, 1, 1, 1, 1], [0, 2, 2, 2, 0], [0, 1, 1, 0], [0, 0, 0]]],
             lambda: _j(decomposition_search((1, 4, 4, 3, 1, 1), {3: (0, 0, 0)}))),
        Case("decomposition", "reject (1,1,1,1,1,1) + (0,0,1,0,0)", False,
             lambda: check_decomposition((1, 1, 2, 1, 1, 1), [(1, 1, 1, 1, 1, 1), (0, 0, 1, 0, 0)])),
        Case("decomposition", "graded form has only row 0", [[1, 3, 3, 1], [0, 0, 0]],
             lambda: rows("x1^3 + x2^3 + x3^3")),
    ]
    for n in (3, 5):
        out.append(Case("decomposition", f"search (1,{n},1,1)", [[[1, 1, 1, 1], [0, n - 1, 0]]],
                        lambda n=n: _j(decomposition_search((1, n, 1, 1)))))
    return out


def _transport(seed):
    F = REPRO_FIELD
    a1, a2 = Operator.variable(2, 0, F), Operator.variable(2, 1, F)
    phi = Substitution.from_dict(2, F, 8, {1: a2 + a1 ** 2})
    f = _P("x1^6 + x1^4*x2")

    def ann_transport():
        g = dual_substitution(phi, f)
        I = apolar_ideal(f, 8)
        J = apolar_ideal(g, 8)
        img = TruncatedIdeal.from_generators([phi.apply(x) for x in I.minimal_generators()], 8, n=2, field=F)
        return J == img

    def psi_image():
        I = apolar_ideal(f, 8)
        img = TruncatedIdeal.from_generators([phi.apply(x) for x in I.minimal_generators()], 8, n=2, field=F)
        return img == TruncatedIdeal.from_generators([(a2 + a1 ** 2) ** 2, a1 ** 3 * a2], 8, n=2, field=F)

    def squares():
        h = _P("x1^3 + x2^3 + x3*x4 + x1*x3")
        res = split_off_squares(h)
        return [res.q, res.core_variables, replay_certificate(h, res.certificate) == res.polynomial,
                hilbert_vector(res.polynomial) == hilbert_vector(h)]

    out = [
        Case("transport", "dual substitution of x1^6 + x1^4*x2", "x1^6 - x1^2*x2^2 + 2*x2^3",
             lambda: str(dual_substitution(phi, f))),
        Case("transport", "Ann transport", True, ann_transport),
        Case("transport", "image of Ann(f)", True, psi_image),
        Case("transport", "inverse of a2 -> a2 + a1^2 is a2 - a1^2", True,
             lambda: phi.inverse().images[1] == _O("a2 - a1^2", 2)),
        Case("transport", "split off squares (1,4,2,1)", [2, 2, True, True], squares),
    ]
    for t, v in [("x1^6 + x2^5 + x3^3", True), ("x3^6 + x2^5 + x1^3", False), ("x1^6 + x1^4*x2", False)]:
        out.append(Case("transport", f"standard form {t}", v, lambda t=t: check_standard_form(_P(t)).ok))
    return out


def _macaulay(seed):
    out = [Case("macaulay", f"{m}<{i}>", v, lambda m=m, i=i: macaulay_bound(m, i))
           for m, i, v in [(3, 2, 4), (4, 2, 5), (6, 2, 10), (4, 3, 5)]]
    out.append(Case("macaulay", "1<n> for n <= 10", [1] * 10, lambda: [macaulay_bound(1, n) for n in range(1, 11)]))
    return out


def _tangent(seed):
    def rep(t):
        r = unobstructedness_report(_P(t))
        return [r.length, r.tangent_dim, r.is_unobstructed]

    out = [
        Case("tangent", "x1*x2*x3 + x4^2 + x5^2*x4", [12, 67, False], lambda: rep("x1*x2*x3 + x4^2 + x5^2*x4")),
        Case("tangent", "x1^2*x2*x3 + x4^2*x1", [14, 56, True], lambda: rep("x1^2*x2*x3 + x4^2*x1")),
        Case("tangent", "x1^2*x3 + x2^2*x3 + x4^2*x1", [10, 40, True], lambda: rep("x1^2*x3 + x2^2*x3 + x4^2*x1")),
        Case("tangent", "x1^2*x3 + x2^2*x3 + x4^2*x1 + x5^2*x4", [12, 60, True],
             lambda: rep("x1^2*x3 + x2^2*x3 + x4^2*x1 + x5^2*x4")),
        Case("tangent", "x1^5 + x2^4 + x3^2*x1^2 + x4^2*x3", [14, 56, True],
             lambda: rep("x1^5 + x2^4 + x3^2*x1^2 + x4^2*x3")),
        Case("tangent", "x1^3 in one variable", 4, lambda: tangent_space_dimension(_P("x1^3"))),
    ]
    big = Field(BIG_PRIME)
    for k in range(3):
        out.append(Case("tangent", f"random (1,6,6,1) cubic over GF({BIG_PRIME}), seed {seed + k}",
                        [[1, 6, 6, 1], 76], lambda s=seed + k: _j(generic_cubic_tangent(s, big))))
    out.append(Case("tangent", f"random (1,6,6,1) cubic over QQ, seed {seed}",
                    [[1, 6, 6, 1], 76], lambda: _j(generic_cubic_tangent(seed, Field(0)))))
    return out


def _raysum(seed):
    out = [Case("raysum", "ray sum of (x1^2*x2^2*x3, a2^2, 3) is x1^2*x2^2*x3 + x4^3*x1^2*x3", True,
                lambda: ray_sum(_P("x1^2*x2^2*x3"), _O("a2^2", 3), 3) == _P("x1^2*x2^2*x3 + x4^3*x1^2*x3"))]
    for t, o, d in RAY_TRIPLES:
        out.append(Case("raysum", f"Ann identity ({t}, {o}, {d})", True,
                        lambda t=t, o=o, d=d: ray_sum_annihilator_check(_P(t), _O(o, _P(t).n), d).ok))
    out.append(Case("raysum", "dropping a*Ann(d f) is detected", False,
                    lambda: ray_sum_annihilator_check(_P("x1^2*x2^2*x3"), _O("a2^2", 3), 3,
                                                      parts=["ann_f", "binomial"]).ok))

    def bump():
        # f_0 = f_1 = f_2 = 0 and d f linear
        f = _P("x1^2*x2*x3 + x4^3")
        g = ray_sum(f, _O("a1^2*a2", 4), 2)
        Hf, Hg = hilbert_vector(f), hilbert_vector(g)
        return [Hg[1] - Hf[1], Hg[2] - Hf[2]]

    out.append(Case("raysum", "H bump at m = 1, 2", [1, 1], bump))
    return out


def _flatness(seed):
    out = []
    for t, o, d in RAY_TRIPLES:
        for kind in (LOWER, UPPER):
            out.append(Case("flatness", f"{kind} family ({t}, {o}, {d})", "FLAT_CONSISTENT",
                            lambda t=t, o=o, d=d, kind=kind: flatness_probe(
                                build_ray_family(_P(t), _O(o, _P(t).n), d, kind), 5, seed).verdict))
    F = REPRO_FIELD
    a = Operator.variable(1, 0, F)
    hand = RayFamily(1, F, ((a ** 2, -a), (a ** 3, Operator.zero(1, F))), LOWER, 2, 0)
    out.append(Case("flatness", "hand family (a^2 - t a, a^3)", "NOT_FLAT",
                    lambda: flatness_probe(hand, 5, seed).verdict))

    def d2_agree():
        f, o = _P("x1^2*x3 + x2^2*x3"), _O("a1*a3", 3)
        lo, up = build_ray_family(f, o, 2, LOWER), build_ray_family(f, o, 2, UPPER)
        return lo.generators == up.generators

    out.append(Case("flatness", "lower = upper for d = 2", True, d2_agree))

    def stretched(t):
        fam = stretched_degeneration_check(_P(t), 5, seed)
        L = sum(hilbert_vector(_P(t)))
        pts = sorted(n for _, n in fiber_at(fam, 3).support().points)
        return [fam.source["c"], fam.source["flatness"].verdict, fiber_at(fam, 0).length == L, pts == [1, L - 1]]

    out.append(Case("flatness", "stretched x1^4 + x2^2*x1 + x3^3", [2, "FLAT_CONSISTENT", True, True],
                    lambda: stretched("x1^4 + x2^2*x1 + x3^3")))
    out.append(Case("flatness", "stretched x1^6 + x1^2*x2^2 + x3^3", [3, "FLAT_CONSISTENT", True, True],
                    lambda: stretched("x1^6 + x1^2*x2^2 + x3^3")))
    return out


def _fibers(seed):
    out = []
    for t, o, d, lam in FIBER_TRIPLES:
        def run(t=t, o=o, d=d, lam=lam):
            r = fiber_structure_check(_P(t), _O(o, _P(t).n), d, lam)
            return [r.ok, r.total_length, r.expected_total]

        f = _P(t)
        e = sum(hilbert_vector(f)) + (d - 1) * sum(hilbert_vector(contract(_O(o, f.n), f)))
        out.append(Case("fibers", f"fiber ({t}, {o}, {d}) at t = {lam}", [True, e, e], run))
    return out


def _tangent_preserve(seed):
    out = []
    for t, o in MONOMIAL_CIS:
        out.append(Case("tangent-preserve", f"CI ({t}, {o})", True,
                        lambda t=t, o=o: tangent_preserving_check(_P(t), _O(o, _P(t).n)).ok))
    out.append(Case("tangent-preserve", "((x1^2 + x2^2)*x3, a1*a3)", True,
                    lambda: tangent_preserving_check(_P("(x1^2 + x2^2)*x3"), _O("a1*a3", 3)).ok))

    def ledger():
        r = tangent_preserving_check(_P("x1^2*x3 + x2^2*x3 + x4^2*x1"), _O("a4*a1", 4))
        return [r.ok, _j(r.necessary)]

    out.append(Case("tangent-preserve", "(x1^2*x3 + x2^2*x3 + x4^2*x1, a4*a1)",
                    [True, {"I": True, "J^2": True, "(I^2:d)": True}], ledger))
    out.append(Case("tangent-preserve", "(x1*x2*x3 + x4^2, a4) is rejected", "PreconditionError",
                    lambda: _error_name(lambda: tangent_preserving_check(_P("x1*x2*x3 + x4^2"), _O("a4", 4)))))
    out.append(Case("tangent-preserve", "double ray x1^5 + x2^4 + x3^2*x1^2 + x4^2*x3 unobstructed", True,
                    lambda: unobstructedness_report(_P("x1^5 + x2^4 + x3^2*x1^2 + x4^2*x3")).is_unobstructed))
    return out


def _secant(seed):
    F = REPRO_FIELD
    out = []
    for s in (4, 6):
        reps = [f"x1^{s} + x2^{s} + x3^{s}", f"x1^{s - 1}*x2 + x3^{s}", f"x1^{s - 2}*(x1*x3 + x2^2)"]
        for t in reps:
            def run(t=t, s=s):
                g = _P(t, n=3)
                return [catalecticant_rank(g, 2), list(hilbert_vector(g)[:4])]

            out.append(Case("secant", f"third-secant representative {t}", [3, [1, 3, 3, 3]], run))
    out.append(Case("secant", "x1^5*x2 + x3^6 in sigma4", True, lambda: sigma4_membership(_P("x1^5*x2 + x3^6"))))
    for s in (4, 6):
        for k in (1, 2, 3, 4, 5):
            def run(s=s, k=k):
                rng = random.Random(seed * 1000 + 10 * s + k)
                n = 4 if s == 4 else 3
                while True:
                    f = Polynomial.zero(n, F)
                    for _ in range(k):
                        f = f + divided_power([rng.randrange(F.p) for _ in range(n)], s, F)
                    # a degenerate draw has smaller middle rank than the number of summands
                    if catalecticant_rank(f, s // 2) == k:
                        return sigma4_membership(f)

            out.append(Case("secant", f"sum of {k} powers of degree {s}", k <= 4, run))
    out.append(Case("secant", "Ann(x1^2*x2 + x3^3) is 3-saturated", True,
                    lambda: is_m_saturated(apolar_ideal(_P("x1^2*x2 + x3^3")), 3)))
    return out


SUITES: dict[str, Callable[[int], list[Case]]] = {
    "hilbert": _hilbert,
    "decomposition": _decomposition,
    "transport": _transport,
    "macaulay": _macaulay,
    "tangent": _tangent,
    "raysum": _raysum,
    "flatness": _flatness,
    "fibers": _fibers,
    "tangent-preserve": _tangent_preserve,
    "secant": _secant,
}


@dataclass(frozen=True)
class CaseResult:
    suite: str
    name: str
    expected: object
    computed: object
    ok: bool

    def to_json(self):
        return {"suite": self.suite, "name": self.name, "expected": _j(self.expected),
                "computed": _j(self.computed), "ok": self.ok}


def _run_case(case: Case) -> CaseResult:
    try:
        got = _j(case.thunk())
    except ApolarError as e:
        got = f"error: {type(e).__name__}: {e}"
    return CaseResult(case.suite, case.name, case.expected, got, got == _j(case.expected))


def collect(suite: str, seed: int = 0) -> list[Case]:
    if suite == "all":
        return [c for name in SUITES for c in SUITES[name](seed)]
    if suite not in SUITES:
        raise PreconditionError(f"unknown suite {suite!r}; choose from: all, {', '.join(SUITES)}")
    return SUITES[suite](seed)


def run(suite: str, seed: int = 0, workers: int | None = None) -> list[CaseResult]:
    cases = collect(suite, seed)
    workers = workers or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_case, cases))


def to_report(suite: str, seed: int, results: list[CaseResult]) -> dict:
    passed = sum(r.ok for r in results)
    return {
        "schema_version": 1,
        "kind": "repro",
        "suite": suite,
        "seed": seed,
        "passed": passed,
        "failed": len(results) - passed,
        "cases": [r.to_json() for r in results],
    }
