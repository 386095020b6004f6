import pytest
from pydantic import ValidationError

from geometry.errors import InvalidInput
from reports import PAYLOADS, ErrorPayload, LineModel, TransversalReport, schema_for

MANIFEST = {"subcommand": "transversal", "flags": {"order_text": "ABC"}, "seed": 0, "version": "0.3.0",
            "wall_time": 0.1}


def test_line_needs_three_coordinates():
    with pytest.raises(ValidationError):
        LineModel(anchor=[0.0, 0.0], direction=[1.0, 0.0, 0.0])


def test_transversal_report_keeps_extra_fields():
    report = TransversalReport.model_validate({"status": "not_found", "order": "ACB", "best_depth": -0.2,
                                               "best_order_margin": -1.0, "evaluated": 40,
                                               "manifest": MANIFEST})
    assert report.model_dump()["evaluated"] == 40
    with pytest.raises(ValidationError):
        TransversalReport.model_validate({"status": "maybe", "order": "ACB", "manifest": MANIFEST})


def test_error_payload_defaults():
    assert ErrorPayload(error="OverlapError", message="A and B").status == "error"


def test_schema_lookup():
    assert set(PAYLOADS) >= {"perms", "pin", "verify", "hyperb", "search", "emit-system"}
    assert "wall_time" in schema_for("manifest")["properties"]
    with pytest.raises(InvalidInput):
        schema_for("nope")
