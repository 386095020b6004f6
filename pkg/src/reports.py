"""Payload models for everything the CLI prints.

The JSON schema of each model is the shipped contract; `schema_for` is
what `cli schema --name ...` prints.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from geometry.errors import InvalidInput


class Manifest(BaseModel):
    subcommand: str
    flags: dict[str, Any]
    seed: int | None = None
    version: str
    input_digest: str | None = None
    wall_time: float = Field(ge=0.0)


class LineModel(BaseModel):
    anchor: list[float] = Field(min_length=3, max_length=3)
    direction: list[float] = Field(min_length=3, max_length=3)


class BallModel(BaseModel):
    label: str
    center: list[float] = Field(min_length=3, max_length=3)
    radius: float = Field(gt=0.0)


class CertificateModel(BaseModel):
    gp: str
    sweep_depth: float
    line: LineModel
    order: str
    depth: float


class PermsReport(BaseModel):
    status: Literal["ok"] = "ok"
    gps: list[str]
    certificates: list[CertificateModel]
    rejected: list[str] = []
    positive_directions: int
    resolution: int
    manifest: Manifest


class TransversalReport(BaseModel):
    """Result of a single find_transversal call, found or not."""

    model_config = ConfigDict(extra="allow")

    status: Literal["found", "not_found"]
    order: str
    line: LineModel | None = None
    depth: float | None = None
    best_depth: float | None = None
    best_order_margin: float | None = None
    manifest: Manifest


class PinningCertificateModel(BaseModel):
    pinned: bool
    scan_radius: float
    min_constraint_slack: float
    order: str | None
    shells: list[dict[str, float]]


class ClassificationModel(BaseModel):
    case: Literal["hyperboloidal", "coplanar_ridges", "concurrent_ridges", "not_minimal", "not_pinning"]
    rank: int
    singular_values: list[float]
    alternation: bool | None
    first_order_pinning: bool
    dependent_subsets: list[str]
    borderline: bool


class PinnedLine(BaseModel):
    order: str
    line: LineModel
    certificate: PinningCertificateModel | None = None
    classification: ClassificationModel | None = None


class PinReport(BaseModel):
    status: Literal["ok"] = "ok"
    mode: Literal["single", "two_stage"]
    t_star: float
    homothety: float | None = None
    configuration: list[BallModel]
    lines: list[PinnedLine]
    manifest: Manifest


class MarginSummary(BaseModel):
    count: int
    min: float | None = None
    max: float | None = None
    mean: float | None = None
    median: float | None = None
    std: float | None = None
    percentiles: dict[str, float | None] = {}


class VerifyReport(BaseModel):
    model_config = ConfigDict(extra="allow")

    status: Literal["ok"] = "ok"
    lemma: str
    trials: int
    seed: int
    violations: int
    margins: MarginSummary
    csv: str | None = None
    independence_number: int | None = None
    manifest: Manifest


class HyperbReport(BaseModel):
    status: Literal["ok"] = "ok"
    h: float
    t: list[float] = Field(min_length=4, max_length=4)
    balls: list[BallModel]
    line: LineModel
    tangent: list[bool]
    non_overlapping: bool
    classification: ClassificationModel | None = None
    manifest: Manifest


class SearchPayload(BaseModel):
    status: Literal["ok"] = "ok"
    formulation: Literal["tangency", "pinning"]
    best_state: dict[str, Any]
    best_violation: float
    samples_evaluated: int
    descended: int
    seed: int
    wall_time: float
    validation: dict[str, Any] | None = None
    manifest: Manifest


class SystemReport(BaseModel):
    status: Literal["ok"] = "ok"
    format: Literal["plain", "smtlib"]
    variables: list[str]
    equalities: int
    inequalities: int
    degrees: dict[str, list[int]]
    out: str | None = None
    manifest: Manifest


class ErrorPayload(BaseModel):
    status: Literal["error"] = "error"
    error: str
    message: str


PAYLOADS: dict[str, type[BaseModel]] = {
    "perms": PermsReport,
    "transversal": TransversalReport,
    "pin": PinReport,
    "verify": VerifyReport,
    "hyperb": HyperbReport,
    "search": SearchPayload,
    "emit-system": SystemReport,
    "error": ErrorPayload,
    "manifest": Manifest,
}


def schema_for(name: str) -> dict:
    try:
        model = PAYLOADS[name]
    except KeyError:
        raise InvalidInput(f"Unknown payload {name!r}; expected one of {', '.join(PAYLOADS)}") from None
    return model.model_json_schema()
