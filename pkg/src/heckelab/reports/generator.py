"""
Rendering of reports and results as JSON, CSV, plain text and Excel.
"""

from typing import Any, Dict, List, Optional
from pathlib import Path
import json
import logging

import pandas as pd

from ..exceptions import HeckelabError, InputError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv", "plain")


class ReportGenerator:
    """
    Turns report dictionaries into text or files.

    A payload is any JSON-compatible dict; ``CheckReport.to_dict()`` output has
    a ``failures`` list and tabular results carry a ``rows`` list.
    """

    def render(self, payload: Dict[str, Any], fmt: str = "json") -> str:
        """
        Render a payload in one of the output formats.

        Args:
            payload: Report dictionary
            fmt: 'json', 'csv' or 'plain'

        Returns:
            The rendered text, ending in a newline
        """
        if fmt == "json":
            return self.to_json(payload)
        if fmt == "csv":
            return self.to_csv(payload)
        if fmt == "plain":
            return self.to_plain(payload)
        raise InputError(f"Unknown output format {fmt!r}; expected one of {OUTPUT_FORMATS}")

    @staticmethod
    def to_json(payload: Dict[str, Any]) -> str:
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"

    def to_csv(self, payload: Dict[str, Any]) -> str:
        """One row per failure, per result row, or per scalar field, in that order of preference."""
        return self._table(payload).to_csv(index=False)

    @staticmethod
    def _table(payload: Dict[str, Any]) -> pd.DataFrame:
        if payload.get("failures"):
            return pd.DataFrame(payload["failures"])
        if payload.get("rows"):
            return pd.DataFrame(payload["rows"])
        scalars = [{"field": key, "value": value} for key, value in sorted(payload.items())
                   if not isinstance(value, (dict, list))]
        return pd.DataFrame(scalars, columns=["field", "value"])

    @staticmethod
    def to_plain(payload: Dict[str, Any]) -> str:
        lines: List[str] = []
        for key in sorted(payload):
            value = payload[key]
            if key in ("failures", "rows") and isinstance(value, list):
                lines.append(f"{key}: {len(value)}")
                lines.extend(f"  {entry}" for entry in value)
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"

    def save_json(self, payload: Dict[str, Any], filename: str) -> str:
        """
        Save a payload as a JSON file.

        Returns:
            Path of the written file
        """
        filepath = Path(filename)
        try:
            filepath.write_text(self.to_json(payload), encoding="utf-8")
        except OSError as e:
            logger.error(f"Error saving report as JSON: {e}")
            raise HeckelabError(f"Could not write {filepath}: {e}")

        logger.info(f"Report saved as JSON: {filepath}")
        return str(filepath)

    def export_excel(self, payload: Dict[str, Any], filename: str) -> str:
        """
        Export a payload to an Excel workbook.

        The Summary sheet holds the scalar fields; Failures and Rows sheets are
        added when the payload has them.

        Args:
            payload: Report dictionary
            filename: Target .xlsx path

        Returns:
            Path of the written workbook
        """
        filepath = Path(filename)
        summary = pd.DataFrame(
            [{"field": key, "value": str(value)} for key, value in sorted(payload.items())
             if key not in ("failures", "rows")],
            columns=["field", "value"])

        try:
            with pd.ExcelWriter(filepath, engine="openpyxl") as writer:
                summary.to_excel(writer, sheet_name="Summary", index=False)
                if payload.get("failures"):
                    pd.DataFrame(payload["failures"]).to_excel(writer, sheet_name="Failures", index=False)
                if payload.get("rows"):
                    pd.DataFrame(payload["rows"]).to_excel(writer, sheet_name="Rows", index=False)
        except (OSError, ValueError) as e:
            logger.error(f"Error exporting report to Excel: {e}")
            raise HeckelabError(f"Could not write {filepath}: {e}")

        logger.info(f"Report exported to Excel: {filepath}")
        return str(filepath)
