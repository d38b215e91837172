from pathlib import Path

from sqlalchemy import Engine, event

# noinspection PyUnusedImports
from sqlmodel import Session, create_engine, SQLModel

import models  # noqa: F401  registers the verification tables

sqlite_file_name = "verification.db"


# Enable foreign key constraints for SQLite
def set_sqlite_pragma(dbapi_conn, connection_record):
    cursor = dbapi_conn.cursor()
    cursor.execute("PRAGMA foreign_keys=ON")
    cursor.close()


def make_engine(path: Path | str = sqlite_file_name) -> Engine:
    """SQLite engine for the verification history at ``path``; tables are created on demand."""
    engine = create_engine(f"sqlite:///{path}")
    event.listen(engine, "connect", set_sqlite_pragma)
    SQLModel.metadata.create_all(engine)
    return engine
