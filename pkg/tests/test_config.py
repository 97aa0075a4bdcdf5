# rollsieve - Configuration tests
from pathlib import Path

import yaml

from rollsieve.config import (
    find_config_path,
    get_default_config,
    load_config,
    save_config,
    set_config_key,
    validate_config,
)


def test_defaults_are_valid():
    assert validate_config(get_default_config()) == []


def test_set_config_key_parses_scalars():
    cfg = get_default_config()
    set_config_key(cfg, "incremental.safety", "3.5")
    set_config_key(cfg, "incremental.budget", "40")
    set_config_key(cfg, "sieve.audit", "true")
    set_config_key(cfg, "sieve.default_engine", "atkin")
    assert cfg["incremental"] == {"budget": 40, "safety": 3.5}
    assert cfg["sieve"]["audit"] is True
    assert cfg["sieve"]["default_engine"] == "atkin"
    assert validate_config(cfg) == []


def test_validate_reports_each_bad_key():
    cfg = get_default_config()
    cfg["sieve"]["default_engine"] = "wheel"
    cfg["incremental"]["safety"] = 0
    cfg["output"]["format"] = "png"
    cfg["logging"]["level"] = "LOUD"
    errs = validate_config(cfg)
    assert len(errs) == 4
    assert any("default_engine" in e for e in errs)
    assert any("logging.level" in e for e in errs)


def test_load_merges_file_over_defaults(isolated_config):
    save_config(isolated_config, {"incremental": {"safety": 4.0}})
    cfg = load_config(isolated_config)
    assert cfg["incremental"] == {"budget": 0, "safety": 4.0}
    assert cfg["sieve"]["default_engine"] == "rolling"


def test_environment_variable_selects_file(isolated_config, monkeypatch):
    isolated_config.write_text(yaml.safe_dump({"output": {"flush_every": 7}}))
    monkeypatch.setenv("ROLLSIEVE_CONFIG", str(isolated_config))
    assert load_config()["output"]["flush_every"] == 7
    assert find_config_path() == isolated_config


def test_user_config_is_found(isolated_config, tmp_path):
    user = tmp_path / ".config" / "rollsieve" / "config.yaml"
    save_config(user, {"sieve": {"segment_delta": 500}})
    assert load_config()["sieve"]["segment_delta"] == 500


def test_shipped_config_files_are_valid():
    root = Path(__file__).resolve().parent.parent
    for path in (root / "config" / "default.yaml", root / "config" / "test.yaml", root / "rollsieve" / "config" / "default.yaml"):
        assert validate_config(load_config(path)) == [], path
    assert load_config(root / "config" / "default.yaml") == get_default_config()
    test_cfg = load_config(root / "config" / "test.yaml")
    assert test_cfg["sieve"]["audit"] is True
    assert test_cfg["instrumentation"]["ring_size"] == 64
