import logging

import pytest

from twingraphs.config.config import AnalysisConfig, DualityConfig
from twingraphs.services.analysis.service import AnalysisService
from twingraphs.services.duality.service import DualityService
from twingraphs.services.field_ops.service import FieldOpsService
from twingraphs.services.hessian.service import HessianService
from twingraphs.services.isometry.service import IsometryService
from twingraphs.services.solver.service import DirichletSolver
from twingraphs.services.space_model.types import DomainSpec

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)


@pytest.fixture
def field_ops():
    return FieldOpsService()


@pytest.fixture
def duality(field_ops):
    return DualityService(DualityConfig(), field_ops)


@pytest.fixture
def analysis(field_ops):
    return AnalysisService(AnalysisConfig(), field_ops)


@pytest.fixture
def solver(field_ops):
    return DirichletSolver(field_ops)


@pytest.fixture
def isometry(duality):
    return IsometryService(duality)


@pytest.fixture
def hessian(field_ops):
    return HessianService(field_ops=field_ops)


@pytest.fixture
def unit_disk():
    return DomainSpec.centered_disk(1.0, 0.05)
