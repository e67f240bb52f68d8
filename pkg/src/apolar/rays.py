"""Ray sums, ray decompositions and one-parameter ray families."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .apolar import apolar_ideal, hilbert_vector
from .errors import (
    CharacteristicError,
    HypothesisNotMetError,
    InsufficientPrecisionError,
    PreconditionError,
    RootAvailabilityError,
    VerificationError,
)
from .field import Field
from .groebner import GroebnerBasis, buchberger, support_and_local_lengths, univariate_roots
from .ideal import TruncatedIdeal, operator_to_vector, vector_to_operator
from .linalg import Subspace
from .monomials import table
from .poly import Operator, Polynomial, contract

LOWER, UPPER = "lower", "upper"


# ---------------------------------------------------------------- ray order


def ray_order(I: TruncatedIdeal, i: int) -> int:
    """Least ``nu`` with ``a_i^nu`` in the image of ``I`` after killing the other variables."""
    P = I.project_variable(i)
    if not P.space.pivots:
        raise InsufficientPrecisionError("projection is zero modulo the truncation")
    return int(P.space.pivots[0])


# ---------------------------------------------------------------- ray sums


def _check_ray_inputs(f: Polynomial, d_op: Operator, d: int):
    if f.is_zero():
        raise PreconditionError("ray sum of the zero polynomial")
    if d < 2:
        raise PreconditionError(f"ray sums need d >= 2, got {d}")
    if d_op.n != f.n or d_op.field != f.field:
        raise PreconditionError("operator and polynomial rings differ")
    if d_op.is_zero() or d_op.constant_term() != 0:
        raise PreconditionError("the operator must be a nonzero element of the maximal ideal")


def ray_sum(f: Polynomial, d_op: Operator, d: int) -> Polynomial:
    """``g = sum_k x^(k d) (d_op^k ⌟ f)`` with the new variable ``x`` appended last."""
    _check_ray_inputs(f, d_op, d)
    n = f.n
    out = {}
    cur = f
    k = 0
    while not cur.is_zero():
        for a, c in cur.items():
            out[a + (k * d,)] = c
        cur = contract(d_op, cur)
        k += 1
    return Polynomial(n + 1, out, f.field)


def _pure_powers(n: int, field: Field, s: int, n_total: int) -> list[Operator]:
    return [Operator.monomial(n_total, tuple(s + 1 if k == j else 0 for k in range(n_total)), 1, field)
            for j in range(n)]


def ray_sum_rhs_parts(f: Polynomial, d_op: Operator, d: int) -> dict:
    """Generators of ``Ann(f) T + a Ann(d_op ⌟ f) T + (a^d - d_op) T`` by part."""
    n, F = f.n, f.field
    df = contract(d_op, f)
    if df.is_zero():
        raise PreconditionError("d_op ⌟ f must be nonzero")
    alpha = Operator.variable(n + 1, n, F)
    Gf = [g.extend(n + 1) for g in apolar_ideal(f).minimal_generators()]
    Gdf = [alpha * g.extend(n + 1) for g in apolar_ideal(df).minimal_generators()]
    binom = alpha ** d - d_op.truncate(None).extend(n + 1)
    return {"ann_f": Gf, "alpha_ann_df": Gdf, "binomial": [binom]}


@dataclass(frozen=True)
class RayDecomposition:
    ideal: TruncatedIdeal  # Ann(g)
    J_generators: tuple  # generators of J
    q: Operator
    nu: int
    index: int  # 0-based ray variable


@dataclass(frozen=True)
class RayCheck:
    ok: bool
    decomposition: RayDecomposition | None = None
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok


def compare_generated(target: TruncatedIdeal, gens) -> dict | None:
    """``None`` if ``gens`` generate ``target``, else a witness of the difference.

    Works at ``D = target.c + 1``; the generated side is certified there or
    it cannot contain ``m^(D-1)``, which ``target`` does.
    """
    D = target.c + 1
    T = target.at(D)
    try:
        G = TruncatedIdeal.from_generators(gens, D, n=target.n, field=target.field)
    except InsufficientPrecisionError:
        G = None
    if G is not None and G.space == T.space:
        return None
    tbl = table(target.n, D)
    if G is None:
        gspace = Subspace.from_vectors(
            target.field, tbl.N, [operator_to_vector(g, D) for g in gens]
        ).closure(tbl.mult)
    else:
        gspace = G.space
    for v in T.space.vectors():
        if not gspace.contains_vector(v):
            return {"in_target_only": str(vector_to_operator(v, target.n, target.field, D))}
    for v in gspace.vectors():
        if not T.space.contains_vector(v):
            return {"in_generated_only": str(vector_to_operator(v, target.n, target.field, D))}
    return {"note": "spans agree modulo the truncation but the generated ideal is not certified"}


def ray_sum_annihilator_check(f: Polynomial, d_op: Operator, d: int, parts=None) -> RayCheck:
    """Check ``Ann(g) = Ann(f) + a Ann(d_op ⌟ f) + (a^d - d_op)`` for the ray sum ``g``.

    ``parts`` restricts the right-hand side to the named pieces of
    :func:`ray_sum_rhs_parts` (used to show a smaller side is detected).
    """
    g = ray_sum(f, d_op, d)
    rhs = ray_sum_rhs_parts(f, d_op, d)
    names = list(rhs) if parts is None else list(parts)
    gens = [x for k in names for x in rhs[k]]
    I = apolar_ideal(g)
    bad = compare_generated(I, gens)
    if bad is not None:
        return RayCheck(False, None, bad)
    dec = RayDecomposition(
        ideal=I,
        J_generators=tuple(rhs["ann_f"] + rhs["alpha_ann_df"]),
        q=d_op.truncate(None).extend(f.n + 1),
        nu=d,
        index=f.n,
    )
    return RayCheck(True, dec, None)


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class RayFamily:
    """Ideal over ``k[t]``; each generator is a pair ``(p0, p1)`` meaning ``p0 + t p1``."""

    n: int
    field: Field
    generators: tuple
    kind: str
    nu: int
    index: int
    source: dict = dc_field(default_factory=dict)
    proven_flat: bool = False

    def specialize(self, lam) -> list[Operator]:
        lam = self.field.convert(lam)
        return [p0 + p1.scale(lam) if lam else p0 for p0, p1 in self.generators]

    def t_degree(self) -> int:
        return max((0 if p1.is_zero() else 1) for _, p1 in self.generators)


def build_ray_family(f: Polynomial, d_op: Operator, d: int, kind: str = LOWER) -> RayFamily:
    """Lower (``a^d - t a - d_op``) or upper (``a^d - t a^(d-1) - d_op``) family of a ray sum."""
    if kind not in (LOWER, UPPER):
        raise PreconditionError(f"kind must be 'lower' or 'upper', got {kind!r}")
    chk = ray_sum_annihilator_check(f, d_op, d)
    if not chk:
        raise VerificationError(f"ray-sum annihilator identity failed: {chk.counterexample}")
    n, F = f.n, f.field
    N = n + 1
    alpha = Operator.variable(N, n, F)
    s = f.degree
    df = contract(d_op, f)
    zero = Operator.zero(N, F)
    J = list(chk.decomposition.J_generators)
    J += _pure_powers(n, F, s, N)
    J += [alpha * p for p in _pure_powers(n, F, df.degree, N)]
    gens = [(j, zero) for j in J]
    q = d_op.truncate(None).extend(N)
    tpart = -(alpha if kind == LOWER else alpha ** (d - 1))
    gens.append((alpha ** d - q, tpart))
    return RayFamily(
        n=N, field=F, generators=tuple(gens), kind=kind, nu=d, index=n,
        source={"f": f, "partial": d_op, "d": d, "g": ray_sum(f, d_op, d)},
        proven_flat=True,
    )


@dataclass(frozen=True)
class Fiber:
    lam: object
    basis: GroebnerBasis

    @property
    def length(self) -> int:
        return self.basis.dimension()

    def support(self, seed: int = 0):
        return support_and_local_lengths(self.basis, seed)


def fiber_at(F: RayFamily, lam) -> Fiber:
    G = buchberger(F.specialize(lam), n=F.n, field=F.field)
    if not G.is_zero_dimensional:
        from .errors import NotZeroDimensionalError

        raise NotZeroDimensionalError(f"fiber at t={lam} is not zero-dimensional")
    return Fiber(F.field.convert(lam), G)


FLAT_CONSISTENT = "FLAT_CONSISTENT"
NOT_FLAT = "NOT_FLAT"


@dataclass(frozen=True)
class FlatnessVerdict:
    verdict: str
    lengths: tuple  # ((lambda, length), ...) sorted by lambda, 0 first
    witness: object = None
    pedigree: str = "monte_carlo"

    def __bool__(self):
        return self.verdict == FLAT_CONSISTENT

    def to_json(self, field: Field):
        return {
            "verdict": self.verdict,
            "pedigree": self.pedigree,
            "lengths": [{"t": field.to_json(l), "length": n} for l, n in self.lengths],
            "witness": None if self.witness is None else field.to_json(self.witness),
        }


def sample_parameters(field: Field, samples: int, seed: int) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        lam = field.random_element(rng, nonzero=True, bound=20)
        if lam not in out:
            out.append(lam)
    return out


def flatness_probe(F: RayFamily, samples: int = 5, seed: int = 0, lambdas=None) -> FlatnessVerdict:
    """Compare fiber lengths at ``t = 0`` and at random nonzero ``t``.

    Equal lengths everywhere are Monte Carlo evidence of flatness; families
    built from ray sums are flat by construction, which the pedigree records.
    """
    lams = list(lambdas) if lambdas is not None else sample_parameters(F.field, samples, seed)
    lengths = [(F.field.zero(), fiber_at(F, 0).length)]
    for lam in lams:
        lengths.append((lam, fiber_at(F, lam).length))
    lengths = [lengths[0]] + sorted(lengths[1:], key=lambda t: t[0])
    base = lengths[0][1]
    witness = next((l for l, n in lengths if n != base), None)
    verdict = FLAT_CONSISTENT if witness is None else NOT_FLAT
    pedigree = "proven" if F.proven_flat and verdict == FLAT_CONSISTENT else "monte_carlo"
    return FlatnessVerdict(verdict, tuple(lengths), witness, pedigree)


# ---------------------------------------------------------------- fibers


@dataclass(frozen=True)
class FiberStructureReport:
    ok: bool
    total_length: int
    expected_total: int
    support: tuple  # ((point, local length), ...)
    expected_support: tuple
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _roots_of(F: Field, k: int, lam) -> list:
    """All ``omega`` with ``omega^k = lam`` in the base field."""
    poly = [F.neg(F.convert(lam))] + [F.zero()] * (k - 1) + [F.one()]
    return univariate_roots(poly, F)


def fiber_structure_check(f: Polynomial, d_op: Operator, d: int, lam) -> FiberStructureReport:
    """Lower-family fiber at ``lam``: origin with ``len Apolar(f)`` and each
    ``(0, .., 0, omega)``, ``omega^(d-1) = lam``, with ``len Apolar(d_op ⌟ f)``."""
    Fd = f.field
    _check_ray_inputs(f, d_op, d)
    df = contract(d_op, f)
    if df.is_zero():
        raise PreconditionError("d_op ⌟ f must be nonzero")
    if not contract(d_op, df).is_zero():
        raise PreconditionError("fiber structure needs d_op^2 ⌟ f = 0")
    if Fd.p and (d - 1) % Fd.p == 0:
        raise CharacteristicError(f"characteristic {Fd.p} divides d - 1 = {d - 1}")
    lam = Fd.convert(lam)
    if lam == 0:
        raise PreconditionError("lambda must be nonzero")
    roots = _roots_of(Fd, d - 1, lam)
    if len(roots) < d - 1:
        raise RootAvailabilityError(
            f"only {len(roots)} of the {d - 1} roots of T^{d - 1} = {lam} lie in {Fd}"
        )
    fam = build_ray_family(f, d_op, d, LOWER)
    fib = fiber_at(fam, lam)
    sup = fib.support()
    len_f = sum(hilbert_vector(f))
    len_df = sum(hilbert_vector(df))
    n = f.n
    origin = tuple([Fd.zero()] * (n + 1))
    expected = [(origin, len_f)] + [(tuple([Fd.zero()] * n + [r]), len_df) for r in roots]
    expected = tuple(sorted(expected, key=lambda t: t[0]))
    got = tuple(sorted(sup.points, key=lambda t: t[0]))
    total_expected = len_f + (d - 1) * len_df
    ok = sup.status == "complete" and fib.length == total_expected and got == expected
    return FiberStructureReport(
        ok=ok,
        total_length=fib.length,
        expected_total=total_expected,
        support=got,
        expected_support=expected,
        details={"len_f": len_f, "len_df": len_df, "roots": tuple(roots), "status": sup.status},
    )


# ---------------------------------------------------------------- tangent criterion


@dataclass(frozen=True)
class TangentCheck:
    ok: bool
    necessary: dict  # term name -> whether dropping it breaks the containment
    sizes: dict

    def __bool__(self):
        return self.ok


def tangent_preserving_check(f: Polynomial, d_op: Operator) -> TangentCheck:
    """Test ``I ∩ J^2 ∩ (I^2 : d_op) ⊆ I J`` with ``I = Ann f``, ``J = Ann(d_op ⌟ f)``.

    The ledger says, for each of the three terms, whether the intersection
    of the other two alone already fails the containment.
    """
    if f.is_zero():
        raise PreconditionError("f must be nonzero")
    d_op = d_op.truncate(None)
    df = contract(d_op, f)
    if df.is_zero():
        raise PreconditionError("d_op ⌟ f must be nonzero")
    if not contract(d_op, df).is_zero():
        raise PreconditionError("the criterion needs d_op^2 ⌟ f = 0")
    s = f.degree
    D = 2 * s + 2
    I = apolar_ideal(f, D)
    J = apolar_ideal(df, D)
    if I.colon(d_op) != J:
        raise VerificationError("(Ann f : d) differs from Ann(d ⌟ f)")
    I2 = I.product(I)
    J2 = J.product(J)
    C = I2.colon(d_op)
    D2 = C.D
    Ib, J2b, IJ = I.at(D2), J2.at(D2), I.product(J).at(D2)
    lhs = Ib.intersect(J2b).intersect(C)
    if not lhs.contains(IJ):
        raise VerificationError("I J is not contained in I ∩ J^2 ∩ (I^2 : d)")
    ok = IJ.contains(lhs)
    necessary = {
        "I": not IJ.contains(J2b.intersect(C)),
        "J^2": not IJ.contains(Ib.intersect(C)),
        "(I^2:d)": not IJ.contains(Ib.intersect(J2b)),
    }
    sizes = {"dim S/I": I.colength(), "dim S/IJ": IJ.colength(), "dim S/lhs": lhs.colength()}
    return TangentCheck(ok, necessary, sizes)


# ---------------------------------------------------------------- stretched


def ray_decomposition(I: TruncatedIdeal, i: int):
    """``(J generators, q, nu)`` with ``I = J + (a_i^nu - q)`` and ``J = I ∩ (a_j : j != i)``."""
    nu = ray_order(I, i)
    D = I.c + 1
    Ia = I.at(D)
    T = Ia.table
    n, F = I.n, I.field
    pure = [k for k, a in enumerate(T.monomials) if all(e == 0 for j, e in enumerate(a) if j != i)]
    mixed = [k for k in range(T.N) if k not in set(pure)]
    Jspace = Ia.space.intersect(Subspace.coordinate(F, T.N, mixed))
    # minimal generators of J modulo m J
    basis = Jspace.vectors()
    shifted = []
    for v in basis:
        for j in range(n):
            w = {int(T.mult[k, j]): x for k, x in v.items() if T.mult[k, j] >= 0}
            if w:
                shifted.append(w)
    cur = Subspace.from_vectors(F, T.N, shifted)
    Jgens = []
    for v in basis:
        if not cur.contains_vector(v):
            cur = cur.add_vectors([v])
            Jgens.append(vector_to_operator(v, n, F, D).truncate(None))
    # q: an element of I whose pure a_i part is exactly a_i^nu
    perm = pure + mixed
    pos = {k: t for t, k in enumerate(perm)}
    rows = [{pos[k]: x for k, x in v.items()} for v in Ia.space.vectors()]
    R = Subspace.from_vectors(F, T.N, rows)
    target = pure[nu] if nu < len(pure) else None
    sigma = None
    for c, v in zip(R.pivots, R.vectors()):
        if target is not None and c == pos[target]:
            sigma = {perm[t]: x for t, x in v.items()}
            break
    if sigma is None:
        raise VerificationError("no element realises the ray order")
    sig = vector_to_operator(sigma, n, F, D).truncate(None)
    ai_nu = Operator.monomial(n, tuple(nu if j == i else 0 for j in range(n)), 1, F)
    q = ai_nu - sig
    return Jgens, q, nu


def stretched_degeneration_check(f: Polynomial, samples: int = 5, seed: int = 0) -> RayFamily:
    """Upper ray family of ``f = x_1^s + g`` when ``a_1^c ⌟ g = 0`` with ``2c <= s``.

    ``c`` is the least exponent that kills ``g``.  The family comes from the
    ray decomposition of ``Ann f`` along ``a_1`` and is probed for flatness.
    """
    n, F = f.n, f.field
    s = f.degree
    a1 = Operator.variable(n, 0, F)
    head = contract(a1 ** s, f)
    if head.is_zero() or head.degree != 0:
        raise HypothesisNotMetError("f must contain x_1^s with a nonzero coefficient")
    kappa = head.constant_term()
    xs = Polynomial.monomial(n, (s,) + (0,) * (n - 1), kappa, F)
    g = f - xs
    c = 0
    while not contract(a1 ** c, g).is_zero():
        c += 1
    if 2 * c > s:
        raise HypothesisNotMetError(f"a_1^c ⌟ g = 0 first for c = {c}, and 2c = {2 * c} > s = {s}")
    I = apolar_ideal(f)
    Jgens, q, nu = ray_decomposition(I, 0)
    zero = Operator.zero(n, F)
    gens = [(j, zero) for j in Jgens]
    gens += [(p, zero) for p in _pure_powers(n, F, s, n)[1:]]
    a_nu = a1 ** nu
    gens.append((a_nu - q, -(a1 ** (nu - 1))))
    fam = RayFamily(
        n=n, field=F, generators=tuple(gens), kind=UPPER, nu=nu, index=0,
        source={"f": f, "c": c, "q": q}, proven_flat=True,
    )
    verdict = flatness_probe(fam, samples, seed)
    if not verdict:
        raise VerificationError(f"stretched family failed the flatness probe at t={verdict.witness}")
    fam.source["flatness"] = verdict
    return fam
