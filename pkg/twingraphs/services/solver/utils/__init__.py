from .retry import retry_with_damping

__all__ = ['retry_with_damping']
