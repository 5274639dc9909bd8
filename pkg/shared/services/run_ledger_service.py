"""
Run Ledger Service for recording command invocations.

Provides a clean interface for writing RunRecord rows. All ledger writes go through this
service so every command records the same fields.
"""

import json
import logging
from typing import Optional

from django.utils import timezone

from shared.models import RunRecord
from shared.services.export_service import LabJSONEncoder

logger = logging.getLogger(__name__)


class RunLedgerService:
    """
    Service for the run ledger.

    Usage:
        record = RunLedgerService.start("zeta eval", config=resolved, seed=7, threads=1)
        ...
        RunLedgerService.finish(record, status="PASSED", summary={...}, artifact_path=path)

    Note:
        All methods fail silently (return None) on errors so a ledger fault never
        interrupts a computation. Errors are logged for monitoring.
    """

    @staticmethod
    def _jsonable(payload: Optional[dict]) -> dict:
        """Round-trip through the lab encoder so numpy and complex values are storable."""
        if not payload:
            return {}
        return json.loads(json.dumps(payload, cls=LabJSONEncoder))

    @staticmethod
    def start(
        command: str,
        config: Optional[dict] = None,
        seed: Optional[int] = None,
        threads: int = 1,
    ) -> Optional[RunRecord]:
        """
        Create a RUNNING ledger entry.

        Args:
            command: Subcommand path (e.g., 'moment run')
            config: Resolved configuration
            seed: Seed of randomized corpora, if any
            threads: Worker count

        Returns:
            Created RunRecord, or None if the write failed
        """
        try:
            return RunRecord.objects.create(
                command=command[:64],
                config=RunLedgerService._jsonable(config),
                seed=seed,
                threads=threads,
            )
        except Exception as e:
            logger.error("Failed to start run ledger entry for %s: %s", command, e)
            return None

    @staticmethod
    def finish(
        record: Optional[RunRecord],
        status: str,
        summary: Optional[dict] = None,
        artifact_path: str = "",
    ) -> Optional[RunRecord]:
        """
        Close a ledger entry.

        Args:
            record: Entry returned by start (None is tolerated)
            status: PASSED, FAILED or ERROR
            summary: Headline numbers or the error record
            artifact_path: Where the artifact was written

        Returns:
            Updated RunRecord, or None if there was nothing to update or the write failed
        """
        if record is None:
            return None
        try:
            record.status = status
            record.summary = RunLedgerService._jsonable(summary)
            record.artifact_path = artifact_path or ""
            record.finished_at = timezone.now()
            record.save(update_fields=["status", "summary", "artifact_path", "finished_at"])
            return record
        except Exception as e:
            logger.error("Failed to finish run ledger entry %s: %s", record.pk, e)
            return None

    @staticmethod
    def fail(record: Optional[RunRecord], error) -> Optional[RunRecord]:
        """Close a ledger entry with the error record of a LabError (or any exception)."""
        if hasattr(error, "as_record"):
            summary = error.as_record()
        else:
            summary = {"detail": str(error), "code": "server_error"}
        return RunLedgerService.finish(record, status="ERROR", summary=summary)

    @staticmethod
    def latest(command: str) -> Optional[RunRecord]:
        """Most recent finished entry for a command."""
        return (
            RunRecord.objects.filter(command=command, finished_at__isnull=False)
            .order_by("-started_at")
            .first()
        )
