"""
Unit tests for settings loading and validation
"""

import os
from pathlib import Path

import pytest
from pydantic import ValidationError

from rainbowham.config import HarnessConfig, LoggingConfig, Settings, load_settings
from rainbowham.core.exceptions import ConfigurationError, ErrorCode
from rainbowham.core.types import AnalysisMode

DEFAULT_YAML = Path(__file__).resolve().parents[2] / "src" / "rainbowham" / "config" / "default.yaml"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Settings must not see RAINBOWHAM_* variables from the outer shell"""
    for name in list(os.environ):
        if name.startswith("RAINBOWHAM_"):
            monkeypatch.delenv(name)


@pytest.mark.unit
class TestDefaults:
    """Values without any file or environment"""

    def test_defaults(self):
        settings = Settings()
        assert settings.solver.node_limit is None
        assert settings.solver.deterministic
        assert settings.solver.parity_precheck
        assert settings.analysis.mode == AnalysisMode.AUTO
        assert settings.stability.alpha == 0.05
        assert settings.absorption.matching_rounds == 20
        assert settings.harness.edit_grid == [0, 1, 2, 4, 8, 16]
        assert settings.logging.level == "WARNING"
        assert settings.seed == 0

    def test_packaged_yaml_matches_defaults(self):
        from_file = Settings.from_yaml(DEFAULT_YAML)
        defaults = Settings()
        for section in ("solver", "analysis", "stability", "absorption", "harness", "logging"):
            assert getattr(from_file, section) == getattr(defaults, section)


@pytest.mark.unit
class TestSources:
    """YAML files and environment variables"""

    def test_custom_yaml(self, temp_dir):
        path = temp_dir / "custom.yaml"
        path.write_text("solver:\n  node_limit: 1000\nanalysis:\n  mode: heuristic\nseed: 7\n")
        settings = Settings.from_yaml(path)
        assert settings.solver.node_limit == 1000
        assert settings.analysis.mode == AnalysisMode.HEURISTIC
        assert settings.seed == 7

    def test_empty_yaml_gives_defaults(self, temp_dir):
        path = temp_dir / "empty.yaml"
        path.write_text("")
        assert Settings.from_yaml(path).solver.threads == 1

    def test_nested_environment_variables(self, monkeypatch):
        monkeypatch.setenv("RAINBOWHAM_SOLVER__THREADS", "4")
        monkeypatch.setenv("RAINBOWHAM_SEED", "11")
        settings = Settings()
        assert settings.solver.threads == 4
        assert settings.seed == 11

    def test_environment_fills_keys_the_file_omits(self, temp_dir, monkeypatch):
        path = temp_dir / "partial.yaml"
        path.write_text("seed: 3\n")
        monkeypatch.setenv("RAINBOWHAM_SOLVER__TIME_LIMIT_MS", "5000")
        settings = Settings.from_yaml(path)
        assert settings.seed == 3
        assert settings.solver.time_limit_ms == 5000

    def test_report_directory_is_created(self, temp_dir):
        settings = Settings(harness={"report_dir": temp_dir / "out" / "reports"})
        settings.ensure_directories()
        assert (temp_dir / "out" / "reports").is_dir()


@pytest.mark.unit
class TestValidators:
    """Field checks"""

    def test_edit_grid_is_sorted_and_deduplicated(self):
        assert HarnessConfig(edit_grid=[4, 0, 4, 1]).edit_grid == [0, 1, 4]

    def test_edit_grid_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            HarnessConfig(edit_grid=[])
        with pytest.raises(ValidationError):
            HarnessConfig(edit_grid=[1, -2])

    def test_log_level_is_normalized(self):
        assert LoggingConfig(level="debug").level == "DEBUG"
        with pytest.raises(ValidationError):
            LoggingConfig(level="chatty")

    def test_log_format(self):
        with pytest.raises(ValidationError):
            LoggingConfig(format="xml")

    def test_bounds(self):
        with pytest.raises(ValidationError):
            Settings(stability={"alpha": 0.5})
        with pytest.raises(ValidationError):
            Settings(solver={"threads": 0})


@pytest.mark.unit
class TestLoadSettings:
    """Errors surface as ConfigurationError"""

    def test_without_file(self):
        assert load_settings(env_file=None).analysis.nice_restarts == 200

    def test_missing_file(self, temp_dir):
        with pytest.raises(ConfigurationError) as exc_info:
            load_settings(temp_dir / "absent.yaml", env_file=None)
        assert exc_info.value.error_code == ErrorCode.CONFIGURATION_ERROR

    def test_invalid_yaml(self, temp_dir):
        path = temp_dir / "broken.yaml"
        path.write_text("solver: [unclosed\n")
        with pytest.raises(ConfigurationError, match="not valid YAML"):
            load_settings(path, env_file=None)

    def test_validation_errors_are_listed(self, temp_dir):
        path = temp_dir / "bad.yaml"
        path.write_text("solver:\n  threads: 0\n")
        with pytest.raises(ConfigurationError) as exc_info:
            load_settings(path, env_file=None)
        assert any(line.startswith("solver.threads") for line in exc_info.value.details["errors"])

    def test_dotenv_file_is_read(self, temp_dir):
        env_file = temp_dir / ".env"
        env_file.write_text("RAINBOWHAM_SEED=42\n")
        try:
            assert load_settings(env_file=env_file).seed == 42
        finally:
            os.environ.pop("RAINBOWHAM_SEED", None)
