"""
Export Service for writing run artifacts.

JSON artifacts carry the full result record plus the resolved configuration. CSV artifacts
start with a versioned schema comment line followed by a fixed header row.
"""

import csv
import dataclasses
import io
import json
import logging
import os
from typing import Any

from django.core.serializers.json import DjangoJSONEncoder

import numpy as np

from shared.constants import CSV_SCHEMA_VERSIONS

logger = logging.getLogger(__name__)


class LabJSONEncoder(DjangoJSONEncoder):
    """JSON encoder aware of numpy scalars/arrays, complex numbers and dataclasses."""

    def default(self, o):
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, (complex, np.complexfloating)):
            return {"re": float(o.real), "im": float(o.imag)}
        if isinstance(o, np.ndarray):
            return o.tolist()
        if dataclasses.is_dataclass(o) and not isinstance(o, type):
            if hasattr(o, "as_record"):
                return o.as_record()
            return dataclasses.asdict(o)
        return super().default(o)


class ExportService:
    """Service for generating JSON and CSV artifacts."""

    @staticmethod
    def schema_line(schema: str) -> str:
        """Versioned header comment for a CSV schema."""
        if schema not in CSV_SCHEMA_VERSIONS:
            raise KeyError(f"Unknown CSV schema '{schema}'")
        return f"# heckelab-csv schema={schema} version={CSV_SCHEMA_VERSIONS[schema]}\n"

    def to_json(self, record: dict[str, Any]) -> str:
        """Deterministic JSON text (sorted keys, fixed indentation)."""
        return json.dumps(record, cls=LabJSONEncoder, sort_keys=True, indent=2) + "\n"

    def generate_csv(
        self,
        schema: str,
        data: list[dict[str, Any]],
        fieldnames: list[str],
    ) -> str:
        """
        Generate CSV text with the versioned schema line.

        Args:
            schema: Schema name from CSV_SCHEMA_VERSIONS
            data: List of dictionaries representing rows
            fieldnames: Fixed column order

        Returns:
            CSV formatted string
        """
        output = io.StringIO()
        output.write(self.schema_line(schema))
        writer = csv.DictWriter(output, fieldnames=fieldnames, extrasaction="ignore")
        writer.writeheader()
        for row in data:
            writer.writerow({key: self._cell(value) for key, value in row.items()})
        return output.getvalue()

    @staticmethod
    def _cell(value: Any) -> Any:
        if isinstance(value, (float, np.floating)):
            return repr(float(value))
        if isinstance(value, (complex, np.complexfloating)):
            return f"{float(value.real)!r}{float(value.imag):+.17g}j"
        return value

    def write(self, path: str, text: str) -> str:
        """Write an artifact, creating parent directories."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("Wrote artifact %s (%d bytes)", path, len(text))
        return path
