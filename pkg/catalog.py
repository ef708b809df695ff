"""
SQLite catalog for enumerated tilings and recorded verification runs.
Tables: tilings, runs
"""

import json
import logging
import sqlite3
import uuid
from typing import Optional

from config import get_settings

log = logging.getLogger(__name__)


def get_conn() -> sqlite3.Connection:
    conn = sqlite3.connect(get_settings().db_path)
    conn.row_factory = sqlite3.Row
    conn.execute("PRAGMA journal_mode=WAL")
    return conn


def init_db():
    """Create tables if they don't exist."""
    conn = get_conn()
    conn.executescript("""
    CREATE TABLE IF NOT EXISTS tilings (
        n INTEGER NOT NULL CHECK(n >= 1),
        key TEXT NOT NULL,
        sets_json TEXT NOT NULL,
        snake_count INTEGER NOT NULL,
        PRIMARY KEY (n, key)
    );

    CREATE TABLE IF NOT EXISTS runs (
        id TEXT PRIMARY KEY,
        command TEXT NOT NULL,
        params_json TEXT NOT NULL DEFAULT '{}',
        result_json TEXT NOT NULL DEFAULT '{}',
        created_at TEXT NOT NULL DEFAULT (datetime('now'))
    );

    CREATE INDEX IF NOT EXISTS idx_runs_command ON runs(command, created_at);
    """)
    conn.commit()
    conn.close()


# ─── Tiling CRUD ─────────────────────────────────────────────────

def save_tilings(n: int, rows: list[dict]) -> int:
    """rows: {"key", "sets" (list of member lists), "snake_count"}. Returns rows written."""
    conn = get_conn()
    conn.executemany(
        "INSERT OR REPLACE INTO tilings (n, key, sets_json, snake_count) VALUES (?,?,?,?)",
        [(n, r["key"], json.dumps(r["sets"]), r["snake_count"]) for r in rows],
    )
    conn.commit()
    conn.close()
    log.info("catalog: stored %d tilings for n=%d", len(rows), n)
    return len(rows)


def load_tilings(n: int) -> list[dict]:
    conn = get_conn()
    rows = conn.execute("SELECT * FROM tilings WHERE n=? ORDER BY key", (n,)).fetchall()
    conn.close()
    out = []
    for r in rows:
        d = dict(r)
        d["sets"] = json.loads(d.pop("sets_json"))
        out.append(d)
    return out


def count_tilings(n: int) -> int:
    conn = get_conn()
    c = conn.execute("SELECT COUNT(*) FROM tilings WHERE n=?", (n,)).fetchone()[0]
    conn.close()
    return c


def clear_tilings(n: Optional[int] = None):
    conn = get_conn()
    if n is None:
        conn.execute("DELETE FROM tilings")
    else:
        conn.execute("DELETE FROM tilings WHERE n=?", (n,))
    conn.commit()
    conn.close()


# ─── Run log ─────────────────────────────────────────────────────

def record_run(command: str, params: dict, result: dict) -> str:
    rid = str(uuid.uuid4())
    conn = get_conn()
    conn.execute(
        "INSERT INTO runs (id, command, params_json, result_json) VALUES (?,?,?,?)",
        (rid, command, json.dumps(params, sort_keys=True), json.dumps(result, sort_keys=True)),
    )
    conn.commit()
    conn.close()
    return rid


def get_runs(command: Optional[str] = None, limit: int = 50) -> list[dict]:
    conn = get_conn()
    if command:
        rows = conn.execute(
            "SELECT * FROM runs WHERE command=? ORDER BY created_at DESC, rowid DESC LIMIT ?",
            (command, limit),
        ).fetchall()
    else:
        rows = conn.execute(
            "SELECT * FROM runs ORDER BY created_at DESC, rowid DESC LIMIT ?", (limit,)
        ).fetchall()
    conn.close()
    out = []
    for r in rows:
        d = dict(r)
        d["params"] = json.loads(d.pop("params_json"))
        d["result"] = json.loads(d.pop("result_json"))
        out.append(d)
    return out
