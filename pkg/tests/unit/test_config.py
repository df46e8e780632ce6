"""
Unit tests for settings resolution and logging setup
"""

import json

import pytest
import structlog
from pydantic import ValidationError

from spikit.config import SpikitSettings
from spikit.logconfig import configure_logging
from spikit.spi import GammaOutOfRange, Variant
from spikit.treekernel import InvalidKernelParams, Mode


@pytest.mark.unit
class TestSpikitSettings:
    """Test default, environment and flag precedence"""

    def test_defaults(self):
        settings = SpikitSettings()
        assert settings.kernel_lambda == 1.0
        assert settings.mode is Mode.DELEXICALIZED
        assert settings.gamma == 3.0
        assert settings.variant is Variant.TANH
        assert settings.epsilon == 0.0
        assert settings.workers == 1

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("SPIKIT_LAMBDA", "0.5")
        monkeypatch.setenv("SPIKIT_MODE", "lexicalized")
        monkeypatch.setenv("SPIKIT_GAMMA", "5")
        settings = SpikitSettings()
        assert settings.kernel_lambda == 0.5
        assert settings.mode is Mode.LEXICALIZED
        assert settings.gamma == 5.0

    def test_unprefixed_lambda_is_ignored(self, monkeypatch):
        monkeypatch.setenv("KERNEL_LAMBDA", "0.5")
        assert SpikitSettings().kernel_lambda == 1.0

    def test_lambda_by_field_name(self):
        assert SpikitSettings(kernel_lambda=0.75).kernel_lambda == 0.75

    def test_dotenv_file(self, tmp_path):
        (tmp_path / ".env").write_text("SPIKIT_VARIANT=literal\n", encoding="utf-8")
        assert SpikitSettings().variant is Variant.LITERAL

    def test_flags_beat_environment(self, monkeypatch):
        monkeypatch.setenv("SPIKIT_LAMBDA", "0.5")
        settings = SpikitSettings().with_overrides(kernel_lambda=0.25, gamma=None)
        assert settings.kernel_lambda == 0.25
        assert settings.gamma == 3.0

    def test_no_overrides_returns_same(self):
        settings = SpikitSettings()
        assert settings.with_overrides(mode=None) is settings

    def test_invalid_environment_value(self, monkeypatch):
        monkeypatch.setenv("SPIKIT_WORKERS", "0")
        with pytest.raises(ValidationError):
            SpikitSettings()

    def test_range_checks_happen_in_params(self):
        settings = SpikitSettings().with_overrides(kernel_lambda=2.0, gamma=50.0)
        with pytest.raises(InvalidKernelParams):
            settings.kernel_params()
        with pytest.raises(GammaOutOfRange):
            settings.spi_params()

    def test_echo(self):
        settings = SpikitSettings().with_overrides(epsilon=0.1)
        assert settings.echo() == {
            "lambda": 1.0,
            "mode": "delexicalized",
            "gamma": 3.0,
            "variant": "tanh",
            "epsilon": 0.1,
        }


@pytest.mark.unit
class TestConfigureLogging:
    """Test structlog output routing"""

    def test_json_lines_on_stderr(self, capsys):
        configure_logging("INFO", json_output=True)
        structlog.get_logger("spikit.test").info("records_evaluated", records=3)
        err = capsys.readouterr().err.strip().splitlines()
        event = json.loads(err[-1])
        assert event["event"] == "records_evaluated"
        assert event["records"] == 3
        assert event["level"] == "info"
        assert "timestamp" in event

    def test_level_filters(self, capsys):
        configure_logging("WARNING")
        structlog.get_logger("spikit.test").info("hidden_event")
        assert "hidden_event" not in capsys.readouterr().err

    def test_unknown_level(self):
        with pytest.raises(ValueError):
            configure_logging("CHATTY")
