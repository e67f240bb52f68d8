"""``apolar`` command line.

Exit codes: 0 success, 1 mismatch or failed verification, 2 usage or
precondition error.  Variables are 1-based everywhere on this surface.
"""
from __future__ import annotations

import sys
import time

import click

from . import repro as _repro
from .errors import PreconditionError, VerificationError
from .field import Field
from .parse import parse_operator, parse_polynomial
from .report import analyze, dumps, validate_report

EXIT_OK, EXIT_MISMATCH, EXIT_PRECONDITION = 0, 1, 2


class _FieldType(click.ParamType):
    name = "field"

    def convert(self, value, param, ctx):
        if isinstance(value, Field):
            return value
        try:
            return Field.parse(value)
        except PreconditionError as e:
            self.fail(str(e), param, ctx)


FIELD = _FieldType()


def _emit(doc: dict, as_json: bool, text: str):
    if as_json:
        validate_report(doc)
        click.echo(dumps(doc), nl=False)
    else:
        click.echo(text)


def _guard(fn):
    """Map library errors to exit codes."""
    import functools

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PreconditionError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_PRECONDITION)
        except VerificationError as e:
            click.echo(f"verification failed: {e}", err=True)
            sys.exit(EXIT_MISMATCH)

    return wrapper


def _poly_arg(poly_opt, poly_pos):
    text = poly_opt if poly_opt is not None else poly_pos
    if text is None:
        raise click.UsageError("give a polynomial with --poly or as an argument")
    return text


def _timings(clock: dict, enabled: bool, doc: dict):
    if enabled:
        doc["timings"] = {k: round(v, 6) for k, v in clock.items()}


@click.group()
@click.version_option(package_name="apolar")
def main():
    """Apolar algebras of polynomials: invariants, ray sums and families."""


@main.command("analyze")
@click.argument("poly_pos", metavar="[POLY]", required=False)
@click.option("--poly", "poly_opt", help="Polynomial in x1..xn.")
@click.option("--vars", "nvars", type=int, default=None, help="Number of variables (default: largest index used).")
@click.option("--field", "field", type=FIELD, default="q", show_default=True, help="q or fp:P.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report.")
@click.option("--timings", is_flag=True, help="Include wall-clock timings (makes output nondeterministic).")
@click.option("--no-tangent", is_flag=True, help="Skip the tangent-space computation.")
@_guard
def analyze_cmd(poly_pos, poly_opt, nvars, field, as_json, timings, no_tangent):
    """Hilbert function, symmetric decomposition, standard form and tangent data."""
    text = _poly_arg(poly_opt, poly_pos)
    f = parse_polynomial(text, nvars, field)
    rep = analyze(f, text=text, tangent=not no_tangent, timings=timings)
    doc = rep.to_json()
    lines = [
        f"polynomial      {rep.polynomial}  over {field}",
        f"H               {tuple(rep.hilbert_function)}",
        f"length          {rep.length}",
        f"socle degree    {rep.socle_degree}",
    ]
    for a, row in enumerate(rep.symmetric_decomposition):
        lines.append(f"Delta_{a:<9} {tuple(row)}")
    lines.append(f"e               {tuple(rep.e)}")
    if rep.standard_form_ok:
        lines.append("standard form   yes")
    else:
        r, i = rep.standard_form_witness
        lines.append(f"standard form   no (witness x{r} at i = {i})")
    lines.append(f"generators      {len(rep.minimal_generators)}: " + ", ".join(rep.minimal_generators))
    lines.append(f"CI              {'yes' if rep.complete_intersection else 'no'}")
    if rep.tangent_dimension is not None:
        verdict = "unobstructed" if rep.unobstructed else "obstructed"
        lines.append(f"tangent dim     {rep.tangent_dimension} "
                     f"(expected {rep.hilbert_function[1] * rep.length if len(rep.hilbert_function) > 1 else 0}, "
                     f"{verdict})")
    if rep.timings:
        lines.append("timings         " + ", ".join(f"{k} {v:.3f}s" for k, v in rep.timings))
    _emit(doc, as_json, "\n".join(lines))


def _ray_inputs(poly_pos, poly_opt, partial, nvars, field, d):
    text = _poly_arg(poly_opt, poly_pos)
    f = parse_polynomial(text, nvars, field)
    op = parse_operator(partial, f.n, field)
    if d is not None and d < 2:
        raise PreconditionError(f"--d must be at least 2, got {d}")
    return f, op


_ray_options = [
    click.argument("poly_pos", metavar="[POLY]", required=False),
    click.option("--poly", "poly_opt", help="Polynomial f in x1..xn."),
    click.option("--partial", required=True, help="Operator in a1..an."),
    click.option("--vars", "nvars", type=int, default=None),
    click.option("--field", "field", type=FIELD, default="fp:65537", show_default=True),
    click.option("--json", "as_json", is_flag=True),
    click.option("--timings", is_flag=True),
]


def _with(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return deco


@main.command("raysum")
@_with(_ray_options)
@click.option("--d", "d", type=int, required=True, help="Ray exponent, at least 2.")
@_guard
def raysum_cmd(poly_pos, poly_opt, partial, nvars, field, as_json, timings, d):
    """Ray sum g of (f, partial, d) and a check of its annihilator decomposition."""
    from .apolar import hilbert_vector
    from .rays import ray_sum, ray_sum_annihilator_check

    t0 = time.perf_counter()
    f, op = _ray_inputs(poly_pos, poly_opt, partial, nvars, field, d)
    g = ray_sum(f, op, d)
    chk = ray_sum_annihilator_check(f, op, d)
    doc = {
        "schema_version": 1,
        "kind": "raysum",
        "field": field.descriptor(),
        "f": str(f),
        "partial": str(op),
        "d": d,
        "ray_sum": str(g),
        "identity_holds": chk.ok,
        "counterexample": chk.counterexample,
        "hilbert_f": list(hilbert_vector(f)),
        "hilbert_g": list(hilbert_vector(g)),
    }
    _timings({"total": time.perf_counter() - t0}, timings, doc)
    text_out = "\n".join([
        f"f        {f}",
        f"partial  {op}",
        f"g        {g}   (new variable x{f.n + 1})",
        f"H(f)     {tuple(doc['hilbert_f'])}",
        f"H(g)     {tuple(doc['hilbert_g'])}",
        "Ann(g) = Ann(f) + a Ann(partial f) + (a^d - partial): " + ("verified" if chk.ok else f"FAILS {chk.counterexample}"),
    ])
    _emit(doc, as_json, text_out)
    if not chk.ok:
        sys.exit(EXIT_MISMATCH)


@main.command("family")
@_with(_ray_options)
@click.option("--d", "d", type=int, required=True, help="Ray exponent, at least 2.")
@click.option("--kind", type=click.Choice(["lower", "upper"]), default="lower", show_default=True)
@click.option("--samples", type=int, default=5, show_default=True, help="Random nonzero parameters to probe.")
@click.option("--seed", type=int, default=0, show_default=True)
@_guard
def family_cmd(poly_pos, poly_opt, partial, nvars, field, as_json, timings, d, kind, samples, seed):
    """Flatness probe and fiber table for the lower or upper ray family."""
    from .errors import RootAvailabilityError
    from .rays import build_ray_family, fiber_at, flatness_probe

    t0 = time.perf_counter()
    f, op = _ray_inputs(poly_pos, poly_opt, partial, nvars, field, d)
    if samples < 0:
        raise PreconditionError("--samples must be non-negative")
    fam = build_ray_family(f, op, d, kind)
    verdict = flatness_probe(fam, samples, seed)
    fibers = []
    for lam, length in verdict.lengths:
        try:
            sup = fiber_at(fam, lam).support(seed)
            status, points = sup.status, sup.points
        except RootAvailabilityError:
            status, points = "partial", ()
        fibers.append({
            "t": field.to_json(lam),
            "length": length,
            "status": status,
            "points": [{"point": [field.to_json(c) for c in p], "local_length": m} for p, m in points],
        })
    doc = {
        "schema_version": 1,
        "kind": "family",
        "field": field.descriptor(),
        "f": str(f),
        "partial": str(op),
        "d": d,
        "family_kind": kind,
        "seed": seed,
        "flatness": verdict.to_json(field),
        "fibers": fibers,
    }
    _timings({"total": time.perf_counter() - t0}, timings, doc)
    lines = [f"{kind} ray family of ({f}, {op}, d={d}) over {field}",
             f"verdict  {verdict.verdict} ({verdict.pedigree})",
             f"{'t':>12}  {'length':>6}  support"]
    for row in fibers:
        pts = "; ".join(f"({', '.join(str(c) for c in p['point'])}) x{p['local_length']}" for p in row["points"])
        if row["status"] == "partial":
            pts = (pts + "; " if pts else "") + "points outside the base field"
        lines.append(f"{str(row['t']):>12}  {row['length']:>6}  {pts}")
    _emit(doc, as_json, "\n".join(lines))
    if not verdict:
        sys.exit(EXIT_MISMATCH)


@main.command("tangent-preserve")
@_with(_ray_options)
@_guard
def tangent_preserve_cmd(poly_pos, poly_opt, partial, nvars, field, as_json, timings):
    """Whether I ∩ J^2 ∩ (I^2 : partial) ⊆ I J, with I = Ann f and J = Ann(partial f)."""
    from .rays import tangent_preserving_check

    t0 = time.perf_counter()
    f, op = _ray_inputs(poly_pos, poly_opt, partial, nvars, field, None)
    chk = tangent_preserving_check(f, op)
    doc = {
        "schema_version": 1,
        "kind": "tangent-preserve",
        "field": field.descriptor(),
        "f": str(f),
        "partial": str(op),
        "holds": chk.ok,
        "necessary": dict(chk.necessary),
        "sizes": dict(chk.sizes),
    }
    _timings({"total": time.perf_counter() - t0}, timings, doc)
    lines = [f"criterion holds: {'yes' if chk.ok else 'no'}"]
    for k, v in chk.necessary.items():
        lines.append(f"  term {k:<8} {'necessary' if v else 'redundant'}")
    _emit(doc, as_json, "\n".join(lines))


@main.command("repro")
@click.argument("suite", default="all")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--timings", is_flag=True)
@click.option("--list", "list_only", is_flag=True, help="List suites and exit.")
@click.option("--workers", type=int, default=None, help="Thread pool size.")
@_guard
def repro_cmd(suite, seed, as_json, timings, list_only, workers):
    """Recompute the published reference values; nonzero exit on any mismatch."""
    if list_only:
        click.echo("\n".join(["all", *_repro.SUITES]))
        return
    t0 = time.perf_counter()
    results = _repro.run(suite, seed, workers)
    doc = _repro.to_report(suite, seed, results)
    _timings({"total": time.perf_counter() - t0}, timings, doc)
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'}  [{r.suite}] {r.name}")
        if not r.ok:
            lines.append(f"      expected {r.expected}")
            lines.append(f"      computed {r.computed}")
    lines.append(f"{doc['passed']} passed, {doc['failed']} failed")
    _emit(doc, as_json, "\n".join(lines))
    if doc["failed"]:
        sys.exit(EXIT_MISMATCH)


if __name__ == "__main__":  # pragma: no cover
    main()
