"""Service container shared by the command handlers."""

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from pydantic import BaseModel

from ..config.config import ToolkitConfig
from ..exceptions.exceptions import GridFormatError
from ..services.analysis.service import AnalysisService
from ..services.duality.service import DualityService
from ..services.field_ops.service import FieldOpsService
from ..services.hessian.service import HessianService
from ..services.isometry.service import IsometryService
from ..services.solver.service import DirichletSolver

logger = logging.getLogger(__name__)


@dataclass
class Toolkit:
    """Services wired to one configuration."""
    config: ToolkitConfig
    field_ops: FieldOpsService
    duality: DualityService
    solver: DirichletSolver
    analysis: AnalysisService
    isometry: IsometryService
    hessian: HessianService

    @classmethod
    def from_config(cls, config: ToolkitConfig) -> "Toolkit":
        field_ops = FieldOpsService(config.field_ops)
        duality = DualityService(config.duality, field_ops)
        return cls(
            config=config,
            field_ops=field_ops,
            duality=duality,
            solver=DirichletSolver(field_ops),
            analysis=AnalysisService(config.analysis, field_ops),
            isometry=IsometryService(duality),
            hessian=HessianService(config.hessian, config.analysis, field_ops),
        )


def emit_json(payload, path: Optional[str] = None) -> None:
    """Write a pydantic model or a plain mapping as JSON to `path` or standard output."""
    text = payload.model_dump_json(indent=2) if isinstance(payload, BaseModel) else json.dumps(payload, indent=2)
    if path is None:
        sys.stdout.write(text + "\n")
        return
    try:
        Path(path).write_text(text + "\n")
    except OSError as e:
        raise GridFormatError(f"Cannot write report {path}: {str(e)}")
    logger.info(f"Wrote report to {path}")


def emit_text(text: str, path: Optional[str] = None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise GridFormatError(f"Cannot write {path}: {str(e)}")
