"""
Configuration Management Module
===============================

Centralized settings loading and validation.
"""

from .settings import (
    AbsorptionConfig,
    AnalysisConfig,
    HarnessConfig,
    LoggingConfig,
    Settings,
    SolverConfig,
    StabilityConfig,
    load_settings,
)

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
