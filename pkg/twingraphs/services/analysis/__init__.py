"""Estimate verifiers."""

from .reports import CoareaResult, EstimateReport
from .service import AnalysisService

__all__ = [
    'AnalysisService',
    'CoareaResult',
    'EstimateReport',
]
