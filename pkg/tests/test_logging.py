import logging

import pytest

from app.utils.logging_config import configure_logging, setup_test_logging


@pytest.fixture
def restore_test_logging():
    yield
    setup_test_logging()


@pytest.mark.parametrize("environment", ["production", "test", "development"])
def test_explicit_level_wins_in_every_environment(monkeypatch, restore_test_logging, environment):
    monkeypatch.setenv("ENVIRONMENT", environment)
    monkeypatch.delenv("LOG_FILE", raising=False)
    configure_logging(log_level="debug")
    assert logging.getLogger().level == logging.DEBUG
    assert logging.getLogger("app").level == logging.DEBUG


def test_test_environment_defaults_stay_quiet(monkeypatch, restore_test_logging):
    monkeypatch.setenv("ENVIRONMENT", "test")
    configure_logging()
    assert logging.getLogger().level == logging.WARNING
    assert logging.getLogger("app").level == logging.ERROR


def test_production_reads_level_from_environment(monkeypatch, restore_test_logging):
    monkeypatch.setenv("ENVIRONMENT", "production")
    monkeypatch.setenv("LOG_LEVEL", "error")
    monkeypatch.delenv("LOG_FILE", raising=False)
    configure_logging()
    assert logging.getLogger().level == logging.ERROR
