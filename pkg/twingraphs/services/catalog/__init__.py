"""Closed-form example graphs."""

from .service import CATALOG, DUAL_PAIRS, CatalogEntry, CatalogSample, generate, names

__all__ = [
    'CATALOG',
    'DUAL_PAIRS',
    'CatalogEntry',
    'CatalogSample',
    'generate',
    'names',
]
