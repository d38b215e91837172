import csv
import io
import json
import logging
import os
from pathlib import Path
from typing import Any

import arrow
from sqlmodel import Session, select

from models import CheckRecord, CheckStatus, RunConfig, TowerTable, VerificationReport, VerificationRun

logger = logging.getLogger(__name__)

CSV_HEADER = ("l", "m", "w", "value")


def _write_atomic(path: Path, payload: bytes) -> None:
    """Write through a sibling temp file and rename it over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_name(path.name + ".tmp")
    with open(tmp_path, "wb") as handle:
        handle.write(payload)
    os.replace(tmp_path, path)
    logger.info("wrote %s (%d bytes)", path, len(payload))


def dumps(document: Any) -> str:
    """Canonical JSON text: UTF-8, two-space indent, insertion order, trailing newline."""
    return json.dumps(document, ensure_ascii=False, indent=2) + "\n"


def write_json(path: Path, document: Any) -> None:
    _write_atomic(path, dumps(document).encode("utf-8"))


def tower_csv(table: TowerTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(table.rows())
    return buffer.getvalue()


def write_tower_csv(path: Path, table: TowerTable) -> None:
    """Tower values as ``l,m,w,value`` rows ordered by l, m and tag."""
    _write_atomic(path, tower_csv(table).encode("utf-8"))


def tower_document(table: TowerTable) -> dict[str, Any]:
    return {
        "window": list(table.window.as_tuple()),
        "case": table.char.case.value,
        "m0": table.char.m0,
        "values": [dict(zip(CSV_HEADER, row)) for row in table.rows()],
    }


def report_document(report: VerificationReport) -> dict[str, Any]:
    """The verification report as JSON; no timestamps, so reruns are byte-identical."""
    return {
        "ok": report.ok,
        "passed": report.count(CheckStatus.PASS),
        "failed": report.count(CheckStatus.FAIL),
        "skipped": report.count(CheckStatus.SKIPPED),
        "items": [item.model_dump(mode="json") for item in report.items],
    }


def save_run(
    session: Session,
    report: VerificationReport,
    config: RunConfig,
    started: arrow.Arrow,
    finished: arrow.Arrow,
) -> VerificationRun:
    """
    Persist a verification run and one CheckRecord per report item.

    Args:
        session: Database session
        report: Assembled verification report
        config: Effective run configuration
        started: Start of the run (UTC)
        finished: End of the run (UTC)

    Returns:
        The refreshed VerificationRun
    """
    run = VerificationRun(
        command=config.command.value,
        seed=config.seed,
        jobs=config.jobs,
        config_json=config.model_dump_json(by_alias=True, exclude_none=True),
        started_at=started.datetime,
        finished_at=finished.datetime,
        passed=report.count(CheckStatus.PASS),
        failed=report.count(CheckStatus.FAIL),
        skipped=report.count(CheckStatus.SKIPPED),
    )
    session.add(run)
    session.flush()
    for item in report.items:
        session.add(CheckRecord.from_result(item, run.id))
    session.commit()
    session.refresh(run)
    logger.info("saved verification run %s: %d passed, %d failed", run.id, run.passed, run.failed)
    return run


def failed_checks(session: Session, run: VerificationRun) -> list[CheckRecord]:
    query = (
        select(CheckRecord)
        .where(CheckRecord.run_id == run.id)
        .where(CheckRecord.status == CheckStatus.FAIL.value)
        .order_by(CheckRecord.check_id)
    )
    return list(session.exec(query).all())
