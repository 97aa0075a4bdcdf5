# rollsieve - Configuration loader
from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any

import yaml

from rollsieve.models import Engine, OutputFormat

ENV_VAR = "ROLLSIEVE_CONFIG"
USER_CONFIG = "~/.config/rollsieve/config.yaml"


def get_default_config_path() -> Path:
    """Where `rollsieve config set` writes when no --config is given."""
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.path.expanduser(USER_CONFIG))


def find_config_path(path: str | Path | None = None) -> Path | None:
    """Return the file load_config would read, or None when built-in defaults are used alone."""
    if path:
        p = Path(path)
        return p if p.exists() else None
    if os.environ.get(ENV_VAR):
        p = Path(os.environ[ENV_VAR])
        return p if p.exists() else None
    for candidate in [Path(os.path.expanduser(USER_CONFIG)), Path(__file__).resolve().parent.parent / "config" / "default.yaml"]:
        if candidate.exists():
            return candidate
    return None


def _read_yaml(path: Path) -> dict[str, Any]:
    with open(path) as f:
        return yaml.safe_load(f) or {}


def load_config(path: str | Path | None = None) -> dict[str, Any]:
    path = path or os.environ.get(ENV_VAR)
    if path:
        path = Path(path)
        if path.exists():
            return _deep_merge(_default_config(), _read_yaml(path))
    user = Path(os.path.expanduser(USER_CONFIG))
    if user.exists():
        return _deep_merge(_default_config(), _read_yaml(user))
    # Project root config (development)
    dev_config = Path(__file__).resolve().parent.parent / "config" / "default.yaml"
    if dev_config.exists():
        return _deep_merge(_default_config(), _read_yaml(dev_config))
    # Package-bundled config
    try:
        from importlib.resources import files
        cfg = files("rollsieve") / "config" / "default.yaml"
        data = yaml.safe_load(cfg.read_bytes().decode()) or {}
        return _deep_merge(_default_config(), data)
    except Exception:
        pass
    return _default_config()


def _default_config() -> dict[str, Any]:
    return {
        "sieve": {
            "default_engine": Engine.ROLLING.value,
            "segment_delta": 0,
            "audit": False,
        },
        "incremental": {
            "budget": 0,
            "safety": 2.0,
        },
        "instrumentation": {
            "ring_size": 1024,
        },
        "output": {
            "format": OutputFormat.TEXT.value,
            "flush_every": 4096,
        },
        "activity": {
            "enabled": False,
            "file": "~/.local/state/rollsieve/activity.jsonl",
        },
        "logging": {
            "level": "WARNING",
        },
    }


def _deep_merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for k, v in override.items():
        if k in out and isinstance(out[k], dict) and isinstance(v, dict):
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = v
    return out


def get_default_config() -> dict[str, Any]:
    """Return the default configuration dict (no file merge)."""
    return _default_config()


def save_config(path: str | Path, data: dict[str, Any]) -> None:
    """Write config dict to YAML file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(data, f, default_flow_style=False, allow_unicode=True, sort_keys=False)


def _parse_scalar(value: Any) -> Any:
    if not isinstance(value, str):
        return value
    if value.lower() in ("true", "false"):
        return value.lower() == "true"
    if value.isdigit():
        return int(value)
    if value.replace(".", "", 1).isdigit():
        return float(value)
    return value


def set_config_key(data: dict[str, Any], key: str, value: Any) -> None:
    """Set a nested key using dot notation (e.g. 'incremental.safety')."""
    parts = key.split(".")
    cur: Any = data
    for p in parts[:-1]:
        if p not in cur:
            cur[p] = {}
        cur = cur[p]
        if not isinstance(cur, dict):
            raise ValueError(f"Cannot set {key}: '{p}' is not a section")
    cur[parts[-1]] = _parse_scalar(value)


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def validate_config(config: dict[str, Any]) -> list[str]:
    """Validate config; return list of error messages (empty if valid)."""
    errs: list[str] = []
    sieve = config.get("sieve", {})
    if sieve.get("default_engine") not in {e.value for e in Engine}:
        errs.append(f"sieve.default_engine must be one of {', '.join(e.value for e in Engine)}")
    if not _is_int(sieve.get("segment_delta")) or sieve["segment_delta"] < 0:
        errs.append("sieve.segment_delta must be an integer >= 0 (0 = floor(sqrt(n)))")
    if not isinstance(sieve.get("audit"), bool):
        errs.append("sieve.audit must be true or false")
    inc = config.get("incremental", {})
    if not _is_int(inc.get("budget")) or inc["budget"] < 0:
        errs.append("incremental.budget must be an integer >= 0 (0 = calibrated)")
    safety = inc.get("safety")
    if not isinstance(safety, (int, float)) or isinstance(safety, bool) or safety <= 0:
        errs.append("incremental.safety must be a number > 0")
    ring = config.get("instrumentation", {}).get("ring_size")
    if not _is_int(ring) or ring < 1:
        errs.append("instrumentation.ring_size must be an integer >= 1")
    out = config.get("output", {})
    if out.get("format") not in {f.value for f in OutputFormat}:
        errs.append("output.format must be text or bitmap")
    if not _is_int(out.get("flush_every")) or out["flush_every"] < 1:
        errs.append("output.flush_every must be an integer >= 1")
    act = config.get("activity", {})
    if act.get("enabled") and not act.get("file"):
        errs.append("activity.enabled is true but activity.file is empty")
    level = str(config.get("logging", {}).get("level", "")).upper()
    if not isinstance(logging.getLevelName(level), int):
        errs.append(f"logging.level '{level}' is not a logging level name")
    return errs
