from .calibration_service import CalibrationResult, CalibrationService

__all__ = ["CalibrationResult", "CalibrationService"]
