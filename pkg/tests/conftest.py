"""
Pytest configuration and fixtures for the Bessel function tests.

This module provides:
- In-memory SQLite database setup for the verification history
- Async session fixtures for database operations
- Factory fixtures for setups, characters, specializations and stored runs
"""

from fractions import Fraction
from typing import AsyncGenerator

import arrow
import pytest
from sqlmodel import Session, SQLModel, create_engine

from models import (
    BesselCase,
    BesselCharacter,
    BesselSetup,
    CheckRecord,
    CheckResult,
    CheckStatus,
    Symbol,
    VerificationRun,
)
from services.coset_service import classify


@pytest.fixture(scope="function")
def test_engine():
    """
    Create an in-memory SQLite engine for each test.

    Using scope="function" ensures each test gets a fresh database,
    providing complete isolation between tests.
    """
    from sqlalchemy import event

    engine = create_engine(
        "sqlite:///:memory:",
        echo=False,  # Set to True to see SQL queries during debugging
    )

    # Enable foreign key constraints for SQLite
    @event.listens_for(engine, "connect")
    def set_sqlite_pragma(dbapi_conn, connection_record):
        cursor = dbapi_conn.cursor()
        cursor.execute("PRAGMA foreign_keys=ON")
        cursor.close()

    SQLModel.metadata.create_all(engine)
    return engine


@pytest.fixture(scope="function")
async def session(test_engine) -> AsyncGenerator[Session, None]:
    """
    Provide a database session for each test.

    This fixture creates a new session for each test and ensures
    proper cleanup after the test completes.
    """
    with Session(test_engine) as session:
        yield session
        session.rollback()  # Rollback any uncommitted changes


# Factory Fixtures for Test Data


@pytest.fixture
def setup_factory():
    """
    Factory fixture for classified BesselSetup instances.

    Usage:
        setup = setup_factory(BesselCase.SPLIT)  # (-1, 0, 1) mod 3
        setup = setup_factory(a=0, b=1, c=1, p=5)
    """
    # one representative per case mod 3
    representatives = {
        BesselCase.INERT: (1, 0, 1),
        BesselCase.RAMIFIED: (3, 0, 1),
        BesselCase.SPLIT: (-1, 0, 1),
    }

    def _create_setup(
        case: BesselCase | None = None,
        a: int | None = None,
        b: int | None = None,
        c: int | None = None,
        p: int = 3,
    ) -> BesselSetup:
        if case is not None:
            a, b, c = representatives[case]
        return classify(a, b, c, p)

    return _create_setup


@pytest.fixture
def character_factory():
    """
    Factory fixture for BesselCharacter instances.

    Values default to the generic symbols; pass rationals or Scalars to override.

    Usage:
        char = character_factory(BesselCase.INERT, m0=1, lam_pi=4)
        char = character_factory(BesselCase.SPLIT, lam_10=2, lam_01=Fraction(1, 2))
    """

    def _create_character(case: BesselCase = BesselCase.INERT, m0: int = 0, **values) -> BesselCharacter:
        generic = BesselCharacter.generic(case, m0)
        if not values:
            return generic
        if case is BesselCase.SPLIT and "lam_pi" not in values:
            values["lam_pi"] = Fraction(values["lam_10"]) * Fraction(values["lam_01"])
        if case is BesselCase.RAMIFIED and "lam_pi" not in values:
            values["lam_pi"] = Fraction(values["lam_piL"]) ** 2
        return BesselCharacter(case=case, m0=m0, **values)

    return _create_character


@pytest.fixture
def specialization_factory():
    """
    Factory fixture for exact parameter values.

    Defaults to q = 9 (r = 3), alpha = 2, gamma = 1.

    Usage:
        values = specialization_factory()
        values = specialization_factory(alpha=-1)
    """

    def _create_specialization(r: int = 3, alpha: int | Fraction = 2, gamma: int | Fraction = 1) -> dict:
        return {Symbol.R: Fraction(r), Symbol.ALPHA: Fraction(alpha), Symbol.GAMMA: Fraction(gamma)}

    return _create_specialization


@pytest.fixture
def verification_run_factory(session: Session):
    """
    Factory fixture for stored VerificationRun instances with their check records.

    Usage:
        run = verification_run_factory(statuses=[CheckStatus.PASS, CheckStatus.FAIL])
    """

    def _create_verification_run(
        statuses: list[CheckStatus] | None = None,
        seed: int = 0,
        **kwargs,
    ) -> VerificationRun:
        if statuses is None:
            statuses = [CheckStatus.PASS]

        started = arrow.utcnow()
        run = VerificationRun(
            command="verify",
            seed=seed,
            started_at=started.datetime,
            finished_at=started.shift(seconds=1).datetime,
            passed=statuses.count(CheckStatus.PASS),
            failed=statuses.count(CheckStatus.FAIL),
            skipped=statuses.count(CheckStatus.SKIPPED),
            **kwargs,
        )
        session.add(run)
        session.flush()
        for position, status in enumerate(statuses):
            result = CheckResult(
                check_id=f"sample.check{position}",
                reference="sample",
                status=status,
                witness={"position": position} if status is CheckStatus.FAIL else None,
            )
            session.add(CheckRecord.from_result(result, run.id))
        session.commit()
        session.refresh(run)
        return run

    return _create_verification_run
