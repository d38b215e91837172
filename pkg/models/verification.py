import json
import uuid
from datetime import datetime, timezone
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator
from sqlalchemy.orm import validates
from sqlmodel import Field, Relationship, SQLModel


class CheckStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class CheckResult(BaseModel):
    """Outcome of one verification check."""

    model_config = ConfigDict(frozen=True)

    check_id: str
    reference: str
    status: CheckStatus
    witness: Any = None
    detail: str = ""

    @model_validator(mode="after")
    def validate_witness(self) -> "CheckResult":
        if self.status is CheckStatus.FAIL and self.witness is None:
            raise ValueError(f"failed check {self.check_id} must carry a witness")
        return self

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    items: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(item.status is not CheckStatus.FAIL for item in self.items)

    def count(self, status: CheckStatus) -> int:
        return sum(1 for item in self.items if item.status is status)


class VerificationRun(SQLModel, table=True):
    __tablename__ = "verification_run"

    id: uuid.UUID = Field(default_factory=uuid.uuid4, primary_key=True)
    created_at: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc), nullable=False
    )
    updated_at: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc), nullable=False
    )
    command: str = Field(index=True, max_length=20, nullable=False, min_length=1)
    seed: int = Field(default=0, nullable=False)
    jobs: int = Field(default=1, nullable=False)
    config_json: str = Field(default="{}", nullable=False)
    started_at: datetime = Field(nullable=False)
    finished_at: datetime = Field(nullable=False)
    passed: int = Field(default=0, nullable=False)
    failed: int = Field(default=0, nullable=False)
    skipped: int = Field(default=0, nullable=False)
    checks: list["CheckRecord"] = Relationship(back_populates="run")

    @validates("jobs")
    def validate_jobs(self, _, jobs):
        if jobs is None or jobs < 1:
            raise ValueError("jobs must be 1 or greater")
        return jobs

    @validates("finished_at")
    def validate_finished_at(self, _, finished_at):
        if self.started_at is not None and finished_at < self.started_at:
            raise ValueError("finished_at must not precede started_at")
        return finished_at

    @property
    def ok(self) -> bool:
        return self.failed == 0


class CheckRecord(SQLModel, table=True):
    __tablename__ = "check_record"

    id: uuid.UUID = Field(default_factory=uuid.uuid4, primary_key=True)
    created_at: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc), nullable=False
    )
    updated_at: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc), nullable=False
    )
    check_id: str = Field(index=True, max_length=200, nullable=False, min_length=1)
    reference: str = Field(default="", nullable=False)
    status: str = Field(nullable=False, max_length=10)
    witness_json: str | None = Field(default=None)
    run_id: uuid.UUID = Field(
        index=True, foreign_key="verification_run.id", nullable=False
    )
    run: VerificationRun = Relationship(back_populates="checks")

    @validates("status")
    def validate_status(self, _, status):
        if status not in {member.value for member in CheckStatus}:
            raise ValueError(f"unknown check status {status!r}")
        return status

    @classmethod
    def from_result(cls, result: CheckResult, run_id: uuid.UUID) -> "CheckRecord":
        witness = None if result.witness is None else json.dumps(result.witness, sort_keys=True)
        return cls(
            check_id=result.check_id,
            reference=result.reference,
            status=result.status.value,
            witness_json=witness,
            run_id=run_id,
        )
