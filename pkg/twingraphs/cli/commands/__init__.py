from . import duality, estimates, generation, geometry

__all__ = ['duality', 'estimates', 'generation', 'geometry']
