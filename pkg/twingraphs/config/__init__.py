"""Configuration package for twingraphs."""

from .config import (
    ToolkitConfig,
    FieldOpsConfig,
    DualityConfig,
    SolverConfig,
    AnalysisConfig,
    HessianConfig
)

__all__ = [
    'ToolkitConfig',
    'FieldOpsConfig',
    'DualityConfig',
    'SolverConfig',
    'AnalysisConfig',
    'HessianConfig'
]
