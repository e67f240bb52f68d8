"""Analysis reports and the JSON schema they are validated against."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources

import jsonschema

from .apolar import apolar_ideal, hilbert_function, is_complete_intersection, unobstructedness_report
from .field import Field
from .hilbert import symmetric_decomposition
from .poly import Polynomial
from .standard_form import check_standard_form

SCHEMA_VERSION = 1


@lru_cache(maxsize=1)
def load_schema() -> dict:
    text = resources.files("apolar").joinpath("data/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` does not match the schema."""
    jsonschema.validate(doc, load_schema())


def dumps(doc: dict) -> str:
    """Canonical serialisation: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class AnalysisReport:
    input: str
    field: str
    vars: int
    polynomial: str
    hilbert_function: tuple
    length: int
    socle_degree: int
    symmetric_decomposition: tuple
    e: tuple
    standard_form_ok: bool
    standard_form_witness: tuple | None  # (variable 1-based, degree)
    minimal_generators: tuple
    complete_intersection: bool
    tangent_dimension: int | None
    tangent_dimension_ambient: int | None
    unobstructed: bool | None
    timings: tuple | None = None  # ((stage, seconds), ...)

    def to_json(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "analysis",
            "input": self.input,
            "field": self.field,
            "vars": self.vars,
            "polynomial": self.polynomial,
            "hilbert_function": list(self.hilbert_function),
            "length": self.length,
            "socle_degree": self.socle_degree,
            "symmetric_decomposition": [list(r) for r in self.symmetric_decomposition],
            "e": list(self.e),
            "standard_form": {
                "ok": self.standard_form_ok,
                "witness": None if self.standard_form_witness is None else {
                    "variable": self.standard_form_witness[0],
                    "degree": self.standard_form_witness[1],
                },
            },
            "minimal_generators": list(self.minimal_generators),
            "complete_intersection": self.complete_intersection,
            "tangent_dimension": self.tangent_dimension,
            "tangent_dimension_ambient": self.tangent_dimension_ambient,
            "unobstructed": self.unobstructed,
        }
        if self.timings is not None:
            doc["timings"] = dict(self.timings)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "AnalysisReport":
        validate_report(doc)
        w = doc["standard_form"]["witness"]
        return cls(
            input=doc["input"],
            field=doc["field"],
            vars=doc["vars"],
            polynomial=doc["polynomial"],
            hilbert_function=tuple(doc["hilbert_function"]),
            length=doc["length"],
            socle_degree=doc["socle_degree"],
            symmetric_decomposition=tuple(tuple(r) for r in doc["symmetric_decomposition"]),
            e=tuple(doc["e"]),
            standard_form_ok=doc["standard_form"]["ok"],
            standard_form_witness=None if w is None else (w["variable"], w["degree"]),
            minimal_generators=tuple(doc["minimal_generators"]),
            complete_intersection=doc["complete_intersection"],
            tangent_dimension=doc["tangent_dimension"],
            tangent_dimension_ambient=doc["tangent_dimension_ambient"],
            unobstructed=doc["unobstructed"],
            timings=None if "timings" not in doc else tuple(sorted(doc["timings"].items())),
        )

    def as_dict(self) -> dict:
        return asdict(self)


def analyze(f: Polynomial, text: str | None = None, tangent: bool = True, timings: bool = False) -> AnalysisReport:
    """Every invariant of ``Apolar(f)`` the library computes, in one record."""
    clock: list = []

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        clock.append((name, round(time.perf_counter() - t0, 6)))
        return out

    rep = timed("hilbert", lambda: hilbert_function(f))
    prof = timed("decomposition", lambda: symmetric_decomposition(f))
    sf = timed("standard_form", lambda: check_standard_form(f, prof))
    gens = timed("generators", lambda: apolar_ideal(f).minimal_generators())
    ci = len(gens) == f.n
    if tangent:
        un = timed("tangent", lambda: unobstructedness_report(f))
        t_min, t_amb, unob = un.tangent_dim, un.ambient_tangent_dim, un.is_unobstructed
    else:
        t_min = t_amb = unob = None
    field: Field = f.field
    return AnalysisReport(
        input=text if text is not None else str(f),
        field=field.descriptor(),
        vars=f.n,
        polynomial=str(f),
        hilbert_function=tuple(rep.hilbert_function),
        length=rep.length,
        socle_degree=rep.socle_degree,
        symmetric_decomposition=prof.rows,
        e=prof.e,
        standard_form_ok=sf.ok,
        standard_form_witness=None if sf.witness is None else (sf.witness[0] + 1, sf.witness[1]),
        minimal_generators=tuple(str(g) for g in gens),
        complete_intersection=ci,
        tangent_dimension=t_min,
        tangent_dimension_ambient=t_amb,
        unobstructed=unob,
        timings=tuple(clock) if timings else None,
    )


# is_complete_intersection is re-exported for callers that only need the verdict
__all__ = ["AnalysisReport", "analyze", "dumps", "load_schema", "validate_report", "is_complete_intersection"]
