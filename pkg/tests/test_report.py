import copy
import json
from pathlib import Path

import jsonschema
import pytest

from apolar.field import QQ, Field
from apolar.parse import parse_polynomial
from apolar.report import AnalysisReport, analyze, dumps, load_schema, validate_report

ROOT = Path(__file__).resolve().parents[1]


def test_docs_schema_matches_packaged():
    assert json.loads((ROOT / "docs" / "report.schema.json").read_text()) == load_schema()


def test_schema_is_valid_draft():
    jsonschema.Draft202012Validator.check_schema(load_schema())


def test_analysis_example():
    f = parse_polynomial("x1^6 + x1^4*x2")
    rep = analyze(f, "x1^6+x1^4*x2")
    assert rep.hilbert_function == (1, 2, 2, 2, 1, 1, 1)
    assert rep.symmetric_decomposition[2] == (0, 1, 1, 1, 0)
    assert not rep.standard_form_ok
    assert rep.standard_form_witness[0] >= 1  # 1-based variable index
    assert rep.complete_intersection
    assert rep.timings is None
    assert "timings" not in rep.to_json()


def test_roundtrip_lossless():
    rep = analyze(parse_polynomial("x1^2*x3 + x2^2*x3 + x4^2*x1", field=Field(65537)))
    doc = rep.to_json()
    validate_report(doc)
    back = AnalysisReport.from_json(json.loads(dumps(doc)))
    assert back == rep
    assert dumps(back.to_json()) == dumps(doc)


def test_roundtrip_with_timings():
    rep = analyze(parse_polynomial("x1^3 + x2^3"), timings=True)
    doc = rep.to_json()
    validate_report(doc)
    assert set(doc["timings"]) >= {"hilbert", "decomposition"}
    assert AnalysisReport.from_json(doc).timings == tuple(sorted(rep.timings))


def test_deterministic_bytes():
    f = parse_polynomial("x1*x2*x3 + x4^2 + x5^2*x4", field=Field(65537))
    a = dumps(analyze(f, "same").to_json())
    b = dumps(analyze(f, "same").to_json())
    assert a == b


def test_schema_rejects_bad_documents():
    doc = analyze(parse_polynomial("x1^3")).to_json()
    for mutate in (
        lambda d: d.pop("hilbert_function"),
        lambda d: d.update(schema_version=2),
        lambda d: d.update(field="gf7"),
        lambda d: d.update(extra=1),
        lambda d: d["standard_form"].update(witness={"variable": 0, "degree": 1}),
    ):
        bad = copy.deepcopy(doc)
        mutate(bad)
        with pytest.raises(jsonschema.ValidationError):
            validate_report(bad)


def test_no_tangent_mode():
    rep = analyze(parse_polynomial("x1^3"), tangent=False)
    assert rep.tangent_dimension is None and rep.unobstructed is None
    validate_report(rep.to_json())
