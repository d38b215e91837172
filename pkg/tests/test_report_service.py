"""
Tests for JSON and CSV output and for saving verification runs.
"""

import json

import arrow
from sqlmodel import Session

from models import BesselCase, CheckResult, CheckStatus, Command, RepType, RunConfig, VerificationReport, Window
from services.eigensystem_service import main_tower_table
from services.report_service import (
    CSV_HEADER,
    dumps,
    failed_checks,
    report_document,
    save_run,
    tower_csv,
    tower_document,
    write_json,
    write_tower_csv,
)


def _report() -> VerificationReport:
    return VerificationReport(
        items=(
            CheckResult(check_id="catalog.eta.IIa", reference="η", status=CheckStatus.PASS),
            CheckResult(check_id="coset.classify.p3", reference="case", status=CheckStatus.FAIL, witness={"abc": [1, 0, 1]}),
        )
    )


class TestJsonOutput:
    """Test suite for canonical JSON documents."""

    def test_dumps_format(self):
        """Test two-space indentation, raw UTF-8 and a trailing newline."""
        # Act
        text = dumps({"λ": "alpha*gamma*r^2"})

        # Assert
        assert text == '{\n  "λ": "alpha*gamma*r^2"\n}\n'

    def test_write_json_creates_parents(self, tmp_path):
        """Test that the output directory is created and no temp file is left."""
        # Arrange
        path = tmp_path / "out" / "report.json"

        # Act
        write_json(path, {"ok": True})

        # Assert
        assert json.loads(path.read_text(encoding="utf-8")) == {"ok": True}
        assert [child.name for child in path.parent.iterdir()] == ["report.json"]

    def test_write_json_replaces(self, tmp_path):
        """Test that a second write replaces the first."""
        # Arrange
        path = tmp_path / "report.json"
        write_json(path, {"run": 1})

        # Act
        write_json(path, {"run": 2})

        # Assert
        assert json.loads(path.read_text(encoding="utf-8")) == {"run": 2}

    def test_report_document(self):
        """Test the report counts and that the document has no timestamps."""
        # Act
        document = report_document(_report())

        # Assert
        assert document["ok"] is False
        assert (document["passed"], document["failed"], document["skipped"]) == (1, 1, 0)
        assert document["items"][1]["witness"] == {"abc": [1, 0, 1]}
        assert dumps(document) == dumps(report_document(_report()))


class TestTowerOutput:
    """Test suite for tower tables as CSV and JSON."""

    def test_csv(self, character_factory):
        """Test the header and the origin row of the main tower."""
        # Arrange
        table = main_tower_table(
            RepType.IIA, character_factory(BesselCase.INERT, lam_pi=4), Window.of((1, 1)), alpha=2, gamma=1, r=3
        )

        # Act
        lines = tower_csv(table).splitlines()

        # Assert
        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[1] == "0,0,E,1"
        assert lines[2] == "0,1,E,1/27"
        assert len(lines) == 5

    def test_write_csv(self, tmp_path, character_factory):
        """Test that the CSV file uses bare newlines."""
        # Arrange
        table = main_tower_table(RepType.VIA, character_factory(BesselCase.SPLIT), Window.of((0, 1)))
        path = tmp_path / "tower.csv"

        # Act
        write_tower_csv(path, table)

        # Assert
        payload = path.read_bytes()
        assert b"\r\n" not in payload
        assert payload.startswith(b"l,m,w,value\n")

    def test_tower_document(self, character_factory):
        """Test the JSON form of a tower table."""
        # Arrange
        table = main_tower_table(RepType.VIB, character_factory(BesselCase.INERT, m0=1), Window.of((0, 2)))

        # Act
        document = tower_document(table)

        # Assert
        assert document["window"] == [0, 2]
        assert document["m0"] == 1
        assert document["values"][0] == {"l": 0, "m": 0, "w": "E", "value": "0"}
        assert document["values"][1]["value"] == "1"


class TestSaveRun:
    """Test suite for persisting verification runs."""

    def test_save_run(self, session: Session):
        """Test that a report is stored with one record per check."""
        # Arrange
        started = arrow.utcnow()
        config = RunConfig(command=Command.VERIFY, seed=4)

        # Act
        run = save_run(session, _report(), config, started, started.shift(seconds=2))

        # Assert
        assert run.command == "verify"
        assert run.seed == 4
        assert (run.passed, run.failed, run.skipped) == (1, 1, 0)
        assert len(run.checks) == 2
        assert json.loads(run.config_json)["seed"] == 4

    def test_failed_checks(self, session: Session):
        """Test listing the failed records of a run."""
        # Arrange
        started = arrow.utcnow()
        run = save_run(session, _report(), RunConfig(), started, started)

        # Act
        failed = failed_checks(session, run)

        # Assert
        assert [record.check_id for record in failed] == ["coset.classify.p3"]
        assert json.loads(failed[0].witness_json) == {"abc": [1, 0, 1]}
