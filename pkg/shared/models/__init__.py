from .run_models import RunRecord

__all__ = ["RunRecord"]
