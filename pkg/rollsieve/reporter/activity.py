# rollsieve - Activity logger (one JSONL record per CLI command run)
from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

logger = __import__("logging").getLogger("rollsieve.activity")

DEFAULT_ACTIVITY_FILE = "~/.local/state/rollsieve/activity.jsonl"


class ActivityLogger:
    """Appends command runs to a JSONL file."""

    def __init__(self, config: dict[str, Any]) -> None:
        """config: full app config (uses the activity section)."""
        act = config.get("activity", {})
        self._path = Path(act.get("file") or DEFAULT_ACTIVITY_FILE).expanduser()
        self._enabled = bool(act.get("enabled", False))
        self._file: Any = None
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self._path

    def start(self) -> None:
        if not self._enabled:
            return
        try:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            self._file = open(self._path, "a")
        except OSError as e:
            logger.warning("activity log disabled, cannot open %s: %s", self._path, e)
            self._file = None

    def stop(self) -> None:
        if self._file:
            self._file.close()
            self._file = None

    def _write(self, record: dict[str, Any]) -> None:
        if not self._enabled or not self._file:
            return
        with self._lock:
            ts = datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")
            self._file.write(json.dumps({"ts": ts, **record}) + "\n")
            self._file.flush()

    def log_command_run(
        self,
        command: str,
        args: dict[str, Any],
        duration_sec: float,
        summary: dict[str, Any],
        error: str | None = None,
    ) -> None:
        self._write({
            "type": "command_run",
            "command": command,
            "args": args,
            "duration_sec": round(duration_sec, 3),
            "summary": summary,
            "error": error,
        })
