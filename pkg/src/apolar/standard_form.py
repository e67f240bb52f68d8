"""Standard-form checks and the two certified normalising transformations."""
from __future__ import annotations

from dataclasses import dataclass

from .apolar import hilbert_vector
from .errors import HypothesisNotMetError, PreconditionError, VerificationError
from .hilbert import HilbertProfile, symmetric_decomposition
from .poly import Operator, Polynomial, contract
from .substitution import Substitution, dual_substitution


@dataclass(frozen=True)
class StandardFormVerdict:
    ok: bool
    witness: tuple | None = None  # (r, i): 0-based variable r, degree i
    profile: HilbertProfile | None = None

    def __bool__(self):
        return self.ok


def check_standard_form(f: Polynomial, profile: HilbertProfile | None = None) -> StandardFormVerdict:
    """Whether ``m^(i-1) a_r ⊆ Ann(f)`` for every ``r >= e(s-i)`` (0-based ``r``).

    That containment means ``deg(a_r ⌟ f) < i - 1``.
    """
    if profile is None:
        profile = symmetric_decomposition(f)
    s = profile.s
    degs = [contract(Operator.variable(f.n, r, f.field), f).degree for r in range(f.n)]
    for i in range(1, s + 1):
        bound = profile.e_at(s - i)
        for r in range(bound, f.n):
            if degs[r] >= i - 1:
                return StandardFormVerdict(False, (r, i), profile)
    return StandardFormVerdict(True, None, profile)


def top_degree_twist(f: Polynomial, i: int, top: int | None = None, normalize: bool = True):
    """Twist ``f`` so that ``a_i^(d_j - 1) a_j ⌟ f_hat = 0`` for ``j != i``.

    ``d_j = deg(a_i a_j ⌟ f) + 2``.  The certificate ``phi`` sends
    ``a_j -> a_j - lambda_j a_i^(top - d_j + 1)`` and
    ``f_hat = dual_substitution(phi^-1, f / const)`` with
    ``const = a_i^top ⌟ f``, so ``Ann(f_hat) = phi^-1(Ann f)``.  With
    ``normalize=False`` the scalar is left on ``f`` and folded into ``lambda``.
    """
    n, F = f.n, f.field
    s = f.degree
    if top is None:
        top = s
    ai = Operator.variable(n, i, F)
    head = contract(ai ** top, f)
    if head.is_zero() or head.degree != 0:
        raise PreconditionError(f"a{i + 1}^{top} ⌟ f must be a nonzero constant, got {head}")
    const = head.constant_term()
    g = f.scale(F.inv(const)) if normalize else f
    scale = F.one() if normalize else F.inv(const)
    D = s + 1
    images = {}
    for j in range(n):
        if j == i:
            continue
        aj = Operator.variable(n, j, F)
        mixed = contract(ai * aj, g)
        if mixed.is_zero():
            continue
        d = mixed.degree + 2
        if d > top:
            raise PreconditionError(f"deg(a{i + 1} a{j + 1} ⌟ f) = {d - 2} is too large for top = {top}")
        lam = contract(ai ** (d - 1) * aj, g).constant_term()
        lam = F.convert(lam * scale)
        if lam:
            images[j] = aj - (ai ** (top - d + 1)).scale(lam)
    phi = Substitution.from_dict(n, F, D, images)
    fhat = dual_substitution(phi.inverse(), g, s)
    return fhat, phi


def clean_top_tail(f: Polynomial, i: int):
    """Add a derivative so that ``a_i^(s-2) ⌟ (f - x_i^s) = 0``.

    Expects ``a_i^s ⌟ f = 1`` and ``a_i^(s-2) ⌟ (f - x_i^s)`` in the span of
    ``1, x_i``.  Returns ``(f + tau ⌟ f, tau)``.
    """
    n, F = f.n, f.field
    s = f.degree
    ai = Operator.variable(n, i, F)
    xi_s = Polynomial.monomial(n, tuple(s if k == i else 0 for k in range(n)), 1, F)
    if contract(ai ** s, f) != Polynomial.constant(n, 1, F):
        raise PreconditionError(f"need a{i + 1}^{s} ⌟ f = 1")
    if s < 3:
        raise PreconditionError("clean_top_tail needs deg f >= 3")
    h = f - xi_s
    tail = contract(ai ** (s - 2), h)
    xi = tuple(1 if k == i else 0 for k in range(n))
    allowed = {(0,) * n, xi}
    if any(a not in allowed for a, _ in tail.items()):
        raise PreconditionError(f"a{i + 1}^{s - 2} ⌟ (f - x{i + 1}^{s}) = {tail} is not in span(1, x{i + 1})")
    l1 = tail.coefficient(xi)
    l2 = tail.constant_term()
    tau = (ai.scale(-l1) + (ai ** 2).scale(F.convert(l1 * l1 - l2)))
    out = f + contract(tau, f)
    return out, tau


# ---------------------------------------------------------------- squares


@dataclass(frozen=True)
class Step:
    kind: str  # "dual" (f -> dual_substitution(sub, f)), "derivative" (f -> f + op ⌟ f)
    sub: Substitution | None = None
    op: Operator | None = None

    def apply(self, f: Polynomial) -> Polynomial:
        if self.kind == "dual":
            return dual_substitution(self.sub, f, f.degree)
        if self.kind == "derivative":
            return f + contract(self.op, f)
        raise ValueError(self.kind)

    def to_json(self):
        if self.kind == "dual":
            return {"kind": "dual", "substitution": self.sub.to_json()}
        return {"kind": "derivative", "operator": str(self.op)}


def replay_certificate(f: Polynomial, steps) -> Polynomial:
    for st in steps:
        f = st.apply(f)
    return f


@dataclass(frozen=True)
class SquaresResult:
    polynomial: Polynomial
    q: int
    certificate: tuple
    core_variables: int  # e = e(s-3): g lives in x_1..x_e
    square_coefficients: tuple

    def __iter__(self):
        return iter((self.polynomial, self.q, self.certificate))


def split_off_squares(f: Polynomial) -> SquaresResult:
    """Rewrite ``f`` as ``g + sum c_N x_N^2`` with the ``x_N`` free of ``g``.

    The variables split off are ``x_{e+1}..x_{H(1)}`` with ``e = e(s-3)``.
    Squares keep their scalar ``c_N`` (no square roots are taken).  Every
    move is recorded and :func:`replay_certificate` reproduces the output.
    """
    s = f.degree
    if s < 2:
        raise PreconditionError("split_off_squares needs deg f >= 2")
    prof = symmetric_decomposition(f)
    verdict = check_standard_form(f, prof)
    if not verdict:
        r, i = verdict.witness
        raise HypothesisNotMetError(
            f"f is not in standard form (witness r=x{r + 1}, i={i}); apply top_degree_twist first"
        )
    n, F = f.n, f.field
    e = prof.e_at(s - 3)
    top_var = prof.H[1] if len(prof.H) > 1 else 0
    steps: list[Step] = []
    cur = f
    coeffs = []
    for N in range(top_var - 1, e - 1, -1):
        aN = Operator.variable(n, N, F)
        if contract(aN ** 2, cur).is_zero():
            # bring in a square through a linear change a_N -> a_N + kappa a_r
            r = None
            for a, c in cur.items():
                if sum(a) == 2 and a[N] == 1:
                    r = next(k for k in range(n) if k != N and a[k] == 1)
                    if e <= r < N:
                        break
                    r = None
            if r is None:
                raise VerificationError(f"no partner variable for x{N + 1}; input not standard")
            ar = Operator.variable(n, r, F)
            b = contract(aN * ar, cur).constant_term()
            a2 = contract(ar ** 2, cur).constant_term()
            kappa = F.one() if F.convert(2 * b + a2) != 0 else F.neg(F.one())
            fwd = Substitution.from_dict(n, F, s + 1, {N: aN + ar.scale(kappa)})
            st = Step("dual", sub=fwd.inverse())
            cur = st.apply(cur)
            steps.append(st)
        fhat, phi = top_degree_twist(cur, N, top=2, normalize=False)
        st = Step("dual", sub=phi.inverse())
        steps.append(st)
        cur = fhat
        # remove the linear term mu*x_N with the derivative -mu/c * a_N
        c = contract(aN ** 2, cur).constant_term()
        lin = contract(aN, cur)
        mu = lin.constant_term()
        if mu:
            op = aN.scale(F.convert(-mu * F.inv(c)))
            st = Step("derivative", op=op)
            steps.append(st)
            cur = st.apply(cur)
        coeffs.append(c)
    q = top_var - e
    # verify the shape: x_N for N in [e, top_var) only as c_N x_N^2
    for a, _ in cur.items():
        hit = [k for k in range(e, top_var) if a[k]]
        if hit and not (len(hit) == 1 and a[hit[0]] == 2 and sum(a) == 2):
            raise VerificationError(f"split failed: monomial {a} survives")
    return SquaresResult(cur, q, tuple(steps), e, tuple(reversed(coeffs)))
