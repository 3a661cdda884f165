"""Pydantic request and response models for the HTTP API.

Responses reuse the package's JSON document schema: every payload-bearing
answer is an envelope {"schema_version": "1", "kind": ..., "payload": ...}
exactly as produced by the serializer, so HTTP clients and file consumers
read the same format.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class DataIn(BaseModel):
    """Degree vectors of a cover, indexed by bitmask."""

    model_config = ConfigDict(extra="forbid")

    orders: list[int] = Field(min_length=1)
    l: list[int]
    d: list[int]
    base_dim: int = 2
    connected: bool = True


class FamilySelector(BaseModel):
    """Choose a built-in family by label, or supply explicit vectors."""

    model_config = ConfigDict(extra="forbid")

    family: str | None = None
    data: DataIn | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "FamilySelector":
        if (self.family is None) == (self.data is None):
            raise ValueError("provide exactly one of 'family' or 'data'")
        return self


class ClassifyIn(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k_max: int = Field(default=6, ge=1, le=6)
    jobs: int = Field(default=1, ge=1, le=64)


class QuotientsIn(FamilySelector):
    only_k3: bool = False
    towers: bool = False


class EquationsIn(FamilySelector):
    eliminate: bool = True


class VerifyIn(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sections: list[int] | None = None
    jobs: int = Field(default=1, ge=1, le=64)


class EnvelopeOut(BaseModel):
    """The package's standard JSON document."""

    schema_version: Literal["1"]
    kind: str
    payload: Any


class VerifyOut(BaseModel):
    ok: bool
    checks: int
    failures: int
    report: str
