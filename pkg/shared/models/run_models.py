"""
Run ledger models.

Every management command records one RunRecord: what was asked for, with which seed and
worker count, how it ended and where its artifact went.
"""

from django.db import models


class RunRecord(models.Model):
    """
    One invocation of a lab command.

    The config field holds the full resolved configuration, so a row is enough to repeat
    the run.
    """

    STATUS_CHOICES = [
        ("RUNNING", "Running"),
        ("PASSED", "Passed"),
        ("FAILED", "Failed"),
        ("ERROR", "Error"),
    ]

    command = models.CharField(
        max_length=64,
        help_text="Subcommand path (e.g., 'zeta eval', 'verify all')",
    )
    status = models.CharField(
        max_length=16,
        choices=STATUS_CHOICES,
        default="RUNNING",
        help_text="Outcome of the run",
    )
    config = models.JSONField(
        default=dict,
        blank=True,
        help_text="Resolved configuration echoed into the artifact",
    )
    summary = models.JSONField(
        default=dict,
        blank=True,
        help_text="Headline numbers or the error record",
    )
    seed = models.BigIntegerField(
        null=True,
        blank=True,
        help_text="Seed of the randomized corpora, if any",
    )
    threads = models.PositiveSmallIntegerField(
        default=1,
        help_text="Worker count used",
    )
    artifact_path = models.CharField(
        max_length=512,
        blank=True,
        help_text="Path of the JSON/CSV artifact written by the run",
    )
    started_at = models.DateTimeField(
        auto_now_add=True,
        help_text="When the run started",
    )
    finished_at = models.DateTimeField(
        null=True,
        blank=True,
        help_text="When the run finished",
    )

    class Meta:
        app_label = "shared"
        db_table = "run_ledger"
        ordering = ["-started_at"]
        verbose_name = "Run Record"
        verbose_name_plural = "Run Records"
        indexes = [
            models.Index(fields=["-started_at"], name="run_ledger_started_5d1c0e_idx"),
            models.Index(fields=["command", "-started_at"], name="run_ledger_command_8a2f41_idx"),
            models.Index(fields=["status"], name="run_ledger_status_c3e9b7_idx"),
        ]

    def __str__(self) -> str:
        return f"{self.command} [{self.status}] at {self.started_at}"
