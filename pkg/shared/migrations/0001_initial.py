from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="RunRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True, primary_key=True, serialize=False, verbose_name="ID"
                    ),
                ),
                (
                    "command",
                    models.CharField(
                        help_text="Subcommand path (e.g., 'zeta eval', 'verify all')",
                        max_length=64,
                    ),
                ),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("RUNNING", "Running"),
                            ("PASSED", "Passed"),
                            ("FAILED", "Failed"),
                            ("ERROR", "Error"),
                        ],
                        default="RUNNING",
                        help_text="Outcome of the run",
                        max_length=16,
                    ),
                ),
                (
                    "config",
                    models.JSONField(
                        blank=True,
                        default=dict,
                        help_text="Resolved configuration echoed into the artifact",
                    ),
                ),
                (
                    "summary",
                    models.JSONField(
                        blank=True, default=dict, help_text="Headline numbers or the error record"
                    ),
                ),
                (
                    "seed",
                    models.BigIntegerField(
                        blank=True, help_text="Seed of the randomized corpora, if any", null=True
                    ),
                ),
                (
                    "threads",
                    models.PositiveSmallIntegerField(default=1, help_text="Worker count used"),
                ),
                (
                    "artifact_path",
                    models.CharField(
                        blank=True,
                        help_text="Path of the JSON/CSV artifact written by the run",
                        max_length=512,
                    ),
                ),
                (
                    "started_at",
                    models.DateTimeField(auto_now_add=True, help_text="When the run started"),
                ),
                (
                    "finished_at",
                    models.DateTimeField(
                        blank=True, help_text="When the run finished", null=True
                    ),
                ),
            ],
            options={
                "verbose_name": "Run Record",
                "verbose_name_plural": "Run Records",
                "db_table": "run_ledger",
                "ordering": ["-started_at"],
                "indexes": [
                    models.Index(fields=["-started_at"], name="run_ledger_started_5d1c0e_idx"),
                    models.Index(
                        fields=["command", "-started_at"], name="run_ledger_command_8a2f41_idx"
                    ),
                    models.Index(fields=["status"], name="run_ledger_status_c3e9b7_idx"),
                ],
            },
        ),
    ]
