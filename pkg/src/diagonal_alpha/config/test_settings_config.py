import logging

import pytest

from diagonal_alpha.config.display_config import format_error_message, format_members, format_summary
from diagonal_alpha.config.settings_config import (
    ORACLE_CONFIG,
    get_oracle_budget,
    get_representation_budget,
    setup_logging,
)
from diagonal_alpha.errors import ConfigurationError


def test_budget_defaults(monkeypatch):
    monkeypatch.delenv("CONGRUENCE_ORACLE_BUDGET", raising=False)
    monkeypatch.delenv("CONGRUENCE_REPRESENTATION_BUDGET", raising=False)
    assert get_oracle_budget() == ORACLE_CONFIG["enumeration_budget"]
    assert get_representation_budget() == ORACLE_CONFIG["representation_budget"]


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CONGRUENCE_ORACLE_BUDGET", "1_000")
    assert get_oracle_budget() == 1000
    monkeypatch.setenv("CONGRUENCE_ORACLE_BUDGET", "  ")
    assert get_oracle_budget() == ORACLE_CONFIG["enumeration_budget"]


@pytest.mark.parametrize("raw", ["lots", "0", "-5", "1e6"])
def test_bad_budget_is_a_configuration_error(monkeypatch, raw):
    monkeypatch.setenv("CONGRUENCE_REPRESENTATION_BUDGET", raw)
    with pytest.raises(ConfigurationError):
        get_representation_budget()


def test_setup_logging_writes_a_log_file(tmp_path):
    logger = setup_logging("info", str(tmp_path / "logs"))
    assert logger.name == "diagonal_alpha"
    assert logging.getLogger().level == logging.INFO
    logging.getLogger("diagonal_alpha.test").info("hello")
    files = list((tmp_path / "logs").glob("congruence_*.log"))
    assert len(files) == 1
    assert " - INFO - hello" in files[0].read_text(encoding="utf-8")
    setup_logging("WARNING")


def test_setup_logging_rejects_unknown_level():
    with pytest.raises(ConfigurationError):
        setup_logging("chatty")


def test_display_helpers():
    assert format_members([1, 2, 3]) == "{1, 2, 3}"
    assert format_members([]) == "{}"
    assert format_members(range(5), limit=2) == "{0, 1, ... (5 total)}"
    assert "Could not parse polynomial 'x^': bad" in format_error_message("syntax", source="x^", error="bad")
    assert "Unexpected error: boom" in format_error_message("nope", error="boom")
    assert format_summary("verify_ok", max_n=5, checks=9).endswith("All method pairs agree for n <= 5 (9 checks)")
