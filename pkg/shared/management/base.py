"""
Base class for the lab's management commands.

Every subcommand accepts the common options --seed, --threads, --out and --format, records
itself in the run ledger, echoes its resolved configuration into the artifact and maps
library errors onto exit codes (1 numeric failure, 2 usage).
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Any, Optional

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from shared.error_handlers import convert_exception
from shared.exceptions import EXIT_NUMERIC_FAILURE, EXIT_USAGE
from shared.services import ExportService, RunLedgerService

logger = logging.getLogger(__name__)

# Options that never influence a result and are kept out of the echoed configuration.
_PROCESS_OPTIONS = {
    "verbosity",
    "settings",
    "pythonpath",
    "traceback",
    "no_color",
    "force_color",
    "skip_checks",
    "stdout",
    "stderr",
    "threads",
    "out",
    "format",
    "action",
}

_ECHOED_LAB_KEYS = ("THETA", "EPSILON_REPORT", "EPSILON_REFERENCE", "WATERMARK", "AFE_KERNEL")


@dataclass
class CommandOutcome:
    """What a subcommand hands back to LabCommand for rendering."""

    result: Any
    rows: Optional[list[dict]] = None
    schema: Optional[str] = None
    fieldnames: tuple[str, ...] = ()
    passed: bool = True
    summary: dict = field(default_factory=dict)


class LabCommand(BaseCommand):
    """
    Shared plumbing for lab subcommands.

    Subclasses implement add_lab_arguments(parser) and run(action, options) -> CommandOutcome.
    Commands with several actions list them in `actions`; each becomes a subparser.
    """

    actions: tuple[str, ...] = ()

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def add_arguments(self, parser):
        if not self.actions:
            self.add_common_arguments(parser)
            self.add_lab_arguments(parser, None)
            return
        subparsers = parser.add_subparsers(dest="action", required=True)
        for action in self.actions:
            sub = subparsers.add_parser(action, help=f"{self.command_name} {action}")
            self.add_common_arguments(sub)
            self.add_lab_arguments(sub, action)

    def add_common_arguments(self, parser):
        parser.add_argument(
            "--seed",
            type=int,
            default=settings.HECKE_LAB["DEFAULT_SEED"],
            help="64-bit seed for randomized corpora (default: %(default)s)",
        )
        parser.add_argument(
            "--threads",
            type=int,
            default=settings.HECKE_LAB["THREADS"],
            help="Worker count; results do not depend on it (default: %(default)s)",
        )
        parser.add_argument(
            "--out",
            default=None,
            help="Artifact path; relative paths are placed under HECKE_LAB['RESULTS_DIR']",
        )
        parser.add_argument(
            "--format",
            choices=("json", "csv"),
            default="json",
            help="Artifact format (default: json)",
        )

    def add_lab_arguments(self, parser, action):
        """Command-specific options."""

    def run(self, action, options) -> CommandOutcome:
        raise NotImplementedError

    def handle(self, *args, **options):
        action = options.get("action")
        name = f"{self.command_name} {action}" if action else self.command_name
        config = self.resolved_config(options)
        if options["threads"] < 1:
            raise CommandError(
                "validation_error: --threads must be at least 1", returncode=EXIT_USAGE
            )

        record = RunLedgerService.start(
            name, config=config, seed=options.get("seed"), threads=options["threads"]
        )
        try:
            outcome = self.run(action, options)
        except CommandError:
            raise
        except Exception as exc:
            RunLedgerService.fail(record, exc)
            raise convert_exception(exc, name) from exc

        text = self._render(name, config, outcome, options["format"])
        artifact_path = ""
        if options["out"]:
            path = os.path.join(settings.HECKE_LAB["RESULTS_DIR"], options["out"])
            artifact_path = ExportService().write(path, text)
            self.stdout.write(self.style.SUCCESS(f"{name}: artifact written to {artifact_path}"))
        else:
            self.stdout.write(text, ending="")

        status = "PASSED" if outcome.passed else "FAILED"
        RunLedgerService.finish(
            record, status=status, summary=outcome.summary, artifact_path=artifact_path
        )
        if not outcome.passed:
            self.stderr.write(self.style.WARNING(f"{name}: one or more checks failed"))
            raise CommandError(
                "check_failed: one or more checks failed at their declared tolerance",
                returncode=EXIT_NUMERIC_FAILURE,
            )

    def resolved_config(self, options) -> dict:
        """Options that determine the result, plus the lab constants they depend on."""
        config = {
            key: value
            for key, value in sorted(options.items())
            if key not in _PROCESS_OPTIONS and not key.startswith("_")
        }
        config["lab"] = {key: settings.HECKE_LAB[key] for key in _ECHOED_LAB_KEYS}
        return config

    def _render(self, name, config, outcome, fmt) -> str:
        exporter = ExportService()
        if fmt == "csv":
            if outcome.rows is None or outcome.schema is None:
                raise CommandError(
                    f"validation_error: {name} has no CSV form, use --format json",
                    returncode=EXIT_USAGE,
                )
            return exporter.generate_csv(outcome.schema, outcome.rows, list(outcome.fieldnames))
        return exporter.to_json({"command": name, "config": config, "result": outcome.result})
