"""
Pydantic Settings Configuration
===============================

Type-safe defaults for the solver, the structural analysis, the
absorption toolkit and the experiment harness. Values come from a YAML
file, then ``RAINBOWHAM_*`` environment variables (a ``.env`` file is
read first) for keys the file leaves out, then the defaults below.

Library functions never read these settings; the command line passes
them through as explicit arguments.
"""

from importlib import metadata
from pathlib import Path
from typing import List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings

from ..core.exceptions import ConfigurationError
from ..core.types import AnalysisMode


def _project_version() -> str:
    try:
        return metadata.version("rainbowham")
    except metadata.PackageNotFoundError:
        return "0.0.0-dev"


class SolverConfig(BaseModel):
    """Exact search limits"""

    node_limit: Optional[int] = Field(None, ge=1, description="Search nodes before giving up (None = unlimited)")
    time_limit_ms: Optional[int] = Field(None, ge=1, description="Wall clock before giving up (None = unlimited)")
    threads: int = Field(1, ge=1, le=256, description="Worker processes for non-deterministic search")
    deterministic: bool = Field(True, description="Single-threaded, reproducible branch order")
    parity_precheck: bool = Field(True, description="Settle instances with a parity certificate before searching")

    model_config = ConfigDict(extra='allow')


class AnalysisConfig(BaseModel):
    """Min-over-subsets questions: niceness, partitions, distances"""

    mode: AnalysisMode = Field(AnalysisMode.AUTO, description="exhaustive, heuristic, local_search or auto")
    nice_restarts: int = Field(200, ge=1, le=100000, description="Local search restarts for niceness")
    distance_restarts: int = Field(100, ge=1, le=100000, description="Local search restarts for distances")
    distance_exhaustive_max_n: int = Field(12, ge=2, le=16, description="Largest n for exact distances")

    model_config = ConfigDict(extra='allow')


class StabilityConfig(BaseModel):
    """Parameters of the strongly/weakly stable classification"""

    gamma: float = Field(0.5, gt=0, lt=1, description="Fraction of colors that must be nice")
    alpha: float = Field(0.05, gt=0, lt=0.5, description="Niceness parameter")
    eps: float = Field(0.2, gt=0, lt=1, description="Characteristic partition parameter")
    delta: float = Field(0.1, gt=0, lt=1, description="Cross graph density threshold")

    model_config = ConfigDict(extra='allow')


class AbsorptionConfig(BaseModel):
    """Absorbing paths, transversal matchings and absorbing cycles"""

    lam: float = Field(0.5, gt=0, le=1, description="Scale of the absorbing cycle")
    good_eps: float = Field(0.1, gt=0, lt=0.5, description="Good-vertex parameter")
    matching_eps: float = Field(0.25, gt=0, lt=1, description="Transversal matching parameter")
    matching_rounds: int = Field(20, ge=1, le=10000, description="Sample-and-delete rounds")
    enumeration_exhaustive_max_n: int = Field(30, ge=4, le=64, description="Largest n for exhaustive path enumeration")
    enumeration_samples: int = Field(5000, ge=1, description="Samples drawn above the exhaustive cap")

    model_config = ConfigDict(extra='allow')


class HarnessConfig(BaseModel):
    """Experiment runs"""

    report_dir: Path = Field(Path("reports"), description="Where JSON reports are written")
    workers: int = Field(1, ge=1, le=256, description="Processes running instances")
    timing: bool = Field(False, description="Record wall clock (reports stop being byte-identical)")
    dirac_trials: int = Field(50, ge=1, description="Collections sampled by the Dirac run")
    edit_grid: List[int] = Field(default_factory=lambda: [0, 1, 2, 4, 8, 16], description="Toggle counts")

    @field_validator('edit_grid')
    @classmethod
    def validate_edit_grid(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("edit_grid must not be empty")
        if any(edits < 0 for edits in v):
            raise ValueError("edit counts must be non-negative")
        return sorted(set(v))

    model_config = ConfigDict(extra='allow')


class LoggingConfig(BaseModel):
    level: str = Field("WARNING", description="Log level (DEBUG, INFO, WARNING, ERROR)")
    format: str = Field("text", description="Log format (json, text)")

    @field_validator('level')
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        valid_levels = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'}
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"Log level must be one of: {', '.join(sorted(valid_levels))}")
        return v_upper

    @field_validator('format')
    @classmethod
    def validate_format(cls, v: str) -> str:
        if v not in {'json', 'text'}:
            raise ValueError("Log format must be json or text")
        return v

    model_config = ConfigDict(extra='allow')


class Settings(BaseSettings):
    """
    Application settings.

    Configuration is loaded from:
    1. YAML config file (if provided)
    2. Environment variables (keys the file does not set)
    3. Default values (fallback)
    """

    solver: SolverConfig = Field(default_factory=SolverConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    stability: StabilityConfig = Field(default_factory=StabilityConfig)
    absorption: AbsorptionConfig = Field(default_factory=AbsorptionConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    seed: int = Field(0, ge=0, description="Default seed for randomized operations")
    version: str = Field(default_factory=_project_version, description="Package version")

    model_config = ConfigDict(
        env_prefix='RAINBOWHAM_',
        env_nested_delimiter='__',
        extra='allow',
        validate_assignment=True,
    )

    @classmethod
    def from_yaml(cls, config_path: str | Path) -> "Settings":
        """
        Load settings from a YAML file; environment variables fill in keys it omits.

        Raises:
            FileNotFoundError: If config file doesn't exist
        """
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_path) as f:
            config_data = yaml.safe_load(f) or {}

        return cls(**config_data)

    @classmethod
    def from_env(cls) -> "Settings":
        return cls()

    def ensure_directories(self) -> None:
        """Create the report directory if it doesn't exist"""
        self.harness.report_dir.mkdir(parents=True, exist_ok=True)


def load_settings(config_path: Optional[str | Path] = None, env_file: Optional[str | Path] = ".env") -> Settings:
    """
    Load and validate settings.

    Args:
        config_path: Optional path to YAML config file
        env_file: .env file whose variables are exported first (ignored if missing)

    Returns:
        Validated Settings instance

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid
    """
    if env_file is not None and Path(env_file).exists():
        load_dotenv(env_file, override=False)

    try:
        if config_path:
            return Settings.from_yaml(config_path)
        return Settings.from_env()
    except FileNotFoundError as e:
        raise ConfigurationError(str(e), {"path": str(config_path)}) from e
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Config file is not valid YAML: {e}", {"path": str(config_path)}) from e
    except ValidationError as e:
        errors = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise ConfigurationError(
            "Configuration validation failed:\n" + "\n".join(f"  - {line}" for line in errors),
            {"errors": errors},
        ) from e


__all__ = [
    'Settings',
    'SolverConfig',
    'AnalysisConfig',
    'StabilityConfig',
    'AbsorptionConfig',
    'HarnessConfig',
    'LoggingConfig',
    'load_settings',
]
