"""Grid files: a JSON header line followed by ny rows of comma-separated values."""

import json
import math
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, PositiveFloat, PositiveInt, ValidationError, field_validator

from ..exceptions.exceptions import GridFormatError
from ..services.field_ops.types import ScalarField
from ..services.space_model.types import CausalCharacter, DomainSpec, SpaceParams

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MASKED_TOKEN = "NaN"

PathLike = Union[str, Path]


class GridHeader(BaseModel):
    schema_version: int = SCHEMA_VERSION
    kappa: float
    bundle: float
    causal: CausalCharacter
    H_expected: Optional[float] = None
    nx: PositiveInt
    ny: PositiveInt
    x0: float
    y0: float
    h: PositiveFloat

    @field_validator("schema_version")
    @classmethod
    def check_version(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value}")
        return value


@dataclass(frozen=True, eq=False)
class GridFile:
    header: GridHeader
    field: ScalarField
    params: SpaceParams


def format_value(value: float) -> str:
    """Shortest decimal that reads back to the same double."""
    return MASKED_TOKEN if math.isnan(value) else repr(float(value))


def _parse_value(token: str, row: int) -> float:
    token = token.strip()
    if token == MASKED_TOKEN:
        return math.nan
    try:
        value = float(token)
    except ValueError:
        raise GridFormatError(f"Row {row}: malformed value {token!r}")
    if not math.isfinite(value):
        raise GridFormatError(f"Row {row}: non-finite value {token!r}")
    return value


def parse_grid(text: str) -> GridFile:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise GridFormatError("Grid file is empty")
    try:
        header = GridHeader.model_validate(json.loads(lines[0]))
    except (json.JSONDecodeError, ValidationError) as e:
        raise GridFormatError(f"Invalid grid header: {str(e)}")

    rows = lines[1:]
    if len(rows) != header.ny:
        raise GridFormatError(f"Header declares ny={header.ny} but payload has {len(rows)} rows")
    values = np.empty((header.ny, header.nx))
    for i, line in enumerate(rows):
        tokens = line.split(",")
        if len(tokens) != header.nx:
            raise GridFormatError(f"Row {i} has {len(tokens)} values, header declares nx={header.nx}")
        values[i] = [_parse_value(token, i) for token in tokens]

    mask = np.isfinite(values)
    domain = DomainSpec(header.x0, header.y0, header.h, header.nx, header.ny, mask)
    params = SpaceParams(header.kappa, header.bundle, header.causal)
    return GridFile(header, ScalarField(domain, values), params)


def read_grid(path: PathLike) -> GridFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise GridFormatError(f"Cannot read grid file {path}: {str(e)}")
    grid = parse_grid(text)
    logger.info(f"Read {grid.header.nx}x{grid.header.ny} grid for {grid.params.label} from {path}")
    return grid


def render_grid(field: ScalarField, params: SpaceParams, H_expected: Optional[float] = None) -> str:
    domain = field.domain
    header = GridHeader(
        kappa=params.kappa, bundle=params.bundle, causal=params.causal, H_expected=H_expected,
        nx=domain.nx, ny=domain.ny, x0=domain.x0, y0=domain.y0, h=domain.h,
    )
    lines: List[str] = [header.model_dump_json()]
    for row in field.values:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_grid(path: PathLike, field: ScalarField, params: SpaceParams, H_expected: Optional[float] = None) -> None:
    try:
        Path(path).write_text(render_grid(field, params, H_expected))
    except OSError as e:
        raise GridFormatError(f"Cannot write grid file {path}: {str(e)}")
    logger.info(f"Wrote grid for {params.label} to {path}")
