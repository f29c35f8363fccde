"""Configuration management for the twingraphs toolkit."""

import os
import logging
from typing import Optional, Dict, Any
from dataclasses import dataclass, field, asdict

from dotenv import load_dotenv

from ..exceptions.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "TWINGRAPHS_"
LINEAR_SOLVERS = ("direct", "cg")


def _parse_flag(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"Cannot read {value!r} as a boolean")


@dataclass
class FieldOpsConfig:
    """Configuration for discrete field operators."""
    spacelike_margin: float = 1e-8


@dataclass
class DualityConfig:
    """Configuration for the twin correspondence."""
    cmc_tolerance: float = 1e-6
    cmc_h2_factor: float = 1.0
    richardson: bool = True


@dataclass
class SolverConfig:
    """Configuration for the Dirichlet solver."""
    tolerance: float = 1e-8
    max_iterations: int = 200
    damping: float = 1.0
    divergence_factor: float = 1e3
    max_retries: int = 3
    damping_backoff: float = 0.5
    linear_solver: str = "direct"
    newton_polish: bool = False
    polish_switch: float = 1e-4
    newton_max_iterations: int = 20


@dataclass
class AnalysisConfig:
    """Configuration for estimate verifiers."""
    flux_tolerance_factor: float = 1.0
    conservation_tolerance: float = 1e-12
    minimal_tolerance: float = 1e-2
    growth_burn_in: float = 2.0
    growth_slack: float = 0.05
    angle_slope_ratio: float = 0.5


@dataclass
class HessianConfig:
    """Configuration for the Hessian-one construction."""
    mixed_tolerance_factor: float = 20.0


@dataclass
class ToolkitConfig:
    """Configuration manager for all twingraphs services."""
    field_ops: FieldOpsConfig = field(default_factory=FieldOpsConfig)
    duality: DualityConfig = field(default_factory=DualityConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    hessian: HessianConfig = field(default_factory=HessianConfig)

    def initialize(self, env_file: Optional[str] = None) -> "ToolkitConfig":
        """Load a .env file and apply TWINGRAPHS_* environment overrides."""
        try:
            load_dotenv(env_file)
            overrides = {
                "SPACELIKE_MARGIN": lambda v: self.set_field_ops_config(spacelike_margin=float(v)),
                "CMC_TOLERANCE": lambda v: self.set_duality_config(cmc_tolerance=float(v)),
                "CMC_H2_FACTOR": lambda v: self.set_duality_config(cmc_h2_factor=float(v)),
                "SOLVER_TOLERANCE": lambda v: self.set_solver_config(tolerance=float(v)),
                "SOLVER_MAX_ITERATIONS": lambda v: self.set_solver_config(max_iterations=int(v)),
                "SOLVER_DAMPING": lambda v: self.set_solver_config(damping=float(v)),
                "SOLVER_LINEAR_SOLVER": lambda v: self.set_solver_config(linear_solver=v),
                "SOLVER_NEWTON_POLISH": lambda v: self.set_solver_config(newton_polish=_parse_flag(v)),
                "MINIMAL_TOLERANCE": lambda v: self.set_analysis_config(minimal_tolerance=float(v)),
            }
            for key, apply in overrides.items():
                value = os.environ.get(ENV_PREFIX + key)
                if value is not None:
                    apply(value)
                    logger.info(f"Applied environment override {ENV_PREFIX + key}={value}")
            logger.info("ToolkitConfig initialized successfully")
            return self
        except ConfigurationError:
            raise
        except Exception as e:
            logger.error(f"Failed to initialize ToolkitConfig: {str(e)}")
            raise ConfigurationError(f"Configuration initialization failed: {str(e)}")

    def set_field_ops_config(self, spacelike_margin: Optional[float] = None) -> None:
        """Update field operator configuration."""
        if spacelike_margin is not None:
            if not 0 <= spacelike_margin < 1:
                raise ConfigurationError("spacelike_margin must lie in [0, 1)")
            self.field_ops.spacelike_margin = spacelike_margin

    def set_duality_config(
        self,
        cmc_tolerance: Optional[float] = None,
        cmc_h2_factor: Optional[float] = None,
        richardson: Optional[bool] = None
    ) -> None:
        """Update duality configuration."""
        if cmc_tolerance is not None:
            if cmc_tolerance <= 0:
                raise ConfigurationError("cmc_tolerance must be greater than 0")
            self.duality.cmc_tolerance = cmc_tolerance
        if cmc_h2_factor is not None:
            if cmc_h2_factor < 0:
                raise ConfigurationError("cmc_h2_factor cannot be negative")
            self.duality.cmc_h2_factor = cmc_h2_factor
        if richardson is not None:
            self.duality.richardson = richardson

    def set_solver_config(
        self,
        tolerance: Optional[float] = None,
        max_iterations: Optional[int] = None,
        damping: Optional[float] = None,
        max_retries: Optional[int] = None,
        linear_solver: Optional[str] = None,
        newton_polish: Optional[bool] = None
    ) -> None:
        """Update solver configuration."""
        if tolerance is not None:
            if tolerance <= 0:
                raise ConfigurationError("tolerance must be greater than 0")
            self.solver.tolerance = tolerance
        if max_iterations is not None:
            if max_iterations <= 0:
                raise ConfigurationError("max_iterations must be greater than 0")
            if max_iterations > 10000:
                raise ConfigurationError("max_iterations cannot exceed 10000")
            self.solver.max_iterations = max_iterations
        if damping is not None:
            if not 0 < damping <= 1:
                raise ConfigurationError("damping must lie in (0, 1]")
            self.solver.damping = damping
        if max_retries is not None:
            if max_retries < 0:
                raise ConfigurationError("max_retries cannot be negative")
            self.solver.max_retries = max_retries
        if linear_solver is not None:
            if linear_solver not in LINEAR_SOLVERS:
                raise ConfigurationError(f"linear_solver must be one of {', '.join(LINEAR_SOLVERS)}")
            self.solver.linear_solver = linear_solver
        if newton_polish is not None:
            self.solver.newton_polish = newton_polish

    def set_analysis_config(
        self,
        minimal_tolerance: Optional[float] = None,
        growth_burn_in: Optional[float] = None,
        growth_slack: Optional[float] = None
    ) -> None:
        """Update analysis configuration."""
        if minimal_tolerance is not None:
            if minimal_tolerance <= 0:
                raise ConfigurationError("minimal_tolerance must be greater than 0")
            self.analysis.minimal_tolerance = minimal_tolerance
        if growth_burn_in is not None:
            if growth_burn_in < 0:
                raise ConfigurationError("growth_burn_in cannot be negative")
            self.analysis.growth_burn_in = growth_burn_in
        if growth_slack is not None:
            if growth_slack < 0:
                raise ConfigurationError("growth_slack cannot be negative")
            self.analysis.growth_slack = growth_slack

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to a nested dictionary."""
        return asdict(self)
