from .export_service import ExportService, LabJSONEncoder
from .run_ledger_service import RunLedgerService

__all__ = ["ExportService", "LabJSONEncoder", "RunLedgerService"]
