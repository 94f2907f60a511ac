"""
SQLite run history for approximation solves and sweeps
One row per solve, queried back with pandas
"""

import sqlite3
from contextlib import contextmanager
from datetime import datetime

import pandas as pd

import config


def init_database(db_path=None):
    """Initialize the run history database with its schema"""
    db_path = db_path or config.RESULTS_DB_PATH
    with get_db_connection(db_path) as conn:
        cursor = conn.cursor()
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS solve_runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                timestamp TEXT NOT NULL,
                command TEXT NOT NULL,
                scenario TEXT NOT NULL,
                norm TEXT NOT NULL,
                error REAL,
                bound REAL,
                status TEXT NOT NULL,
                iterations INTEGER,
                solve_time REAL,
                created_at DATETIME DEFAULT CURRENT_TIMESTAMP
            )
        """)
        cursor.execute("""
            CREATE INDEX IF NOT EXISTS idx_scenario
            ON solve_runs(scenario)
        """)
        cursor.execute("""
            CREATE INDEX IF NOT EXISTS idx_timestamp
            ON solve_runs(timestamp DESC)
        """)
        conn.commit()


@contextmanager
def get_db_connection(db_path=None):
    """Context manager for database connections"""
    conn = sqlite3.connect(db_path or config.RESULTS_DB_PATH)
    try:
        yield conn
    finally:
        conn.close()


def save_run(run, db_path=None):
    """Save one solve record (a summary dict plus the command name)"""
    init_database(db_path)
    with get_db_connection(db_path) as conn:
        cursor = conn.cursor()
        cursor.execute("""
            INSERT INTO solve_runs
            (timestamp, command, scenario, norm, error, bound, status, iterations, solve_time)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)
        """, (
            run.get("timestamp", datetime.now().isoformat()),
            run["command"],
            run["label"],
            str(run.get("norm", "inf")),
            run.get("error"),
            run.get("bound"),
            run["status"],
            run.get("iterations"),
            run.get("solve_time"),
        ))
        conn.commit()


def get_run_history(scenario=None, limit=20, db_path=None):
    """Latest runs, optionally for one scenario label"""
    init_database(db_path)
    with get_db_connection(db_path) as conn:
        query = "SELECT * FROM solve_runs"
        params = []
        if scenario:
            query += " WHERE scenario = ?"
            params.append(scenario)
        query += " ORDER BY id DESC LIMIT ?"
        params.append(limit)
        return pd.read_sql_query(query, conn, params=params)


def get_best_run(scenario, db_path=None):
    """Lowest-error optimal run for a scenario label"""
    init_database(db_path)
    with get_db_connection(db_path) as conn:
        query = """
            SELECT * FROM solve_runs
            WHERE scenario = ? AND status = 'optimal'
            ORDER BY error ASC
            LIMIT 1
        """
        return pd.read_sql_query(query, conn, params=[scenario])


if __name__ == "__main__":
    init_database()
    print(f"\n✅ Run history database ready: {config.RESULTS_DB_PATH}")
