from .moment_service import MomentService

__all__ = ["MomentService"]
