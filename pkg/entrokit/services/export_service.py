"""
ExportService - writes experiment reports and bias curves as CSV or XLSX.

CSV output has a fixed column order and deterministic number formatting, so
the same plan and seed always produce the same bytes. Unavailable values are
written as NA.
"""

import csv
import io
import logging
from typing import Any, Iterable, Optional, Sequence

from openpyxl import Workbook
from openpyxl.styles import Alignment, Font, PatternFill

from ..models.experiments import BiasCurveRow, EstimateReport

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "entrokit-table/1"
NOT_AVAILABLE = "NA"

REPORT_COLUMNS = [
    "model", "estimator", "n", "k", "w", "D",
    "biasPct", "stderrPct", "rmsePct",
    "truth", "mean", "bias", "stderr", "rmse", "failures",
]
CURVE_COLUMNS = ["axis", "gridValue", "axisValue", "estimator", "bias", "stderr", "rmse"]

_HEADER_FILL = PatternFill(start_color="BDD7EE", end_color="BDD7EE", fill_type="solid")
_HEADER_FONT = Font(bold=True)
_HEADER_ALIGN = Alignment(horizontal="center", vertical="center", wrap_text=True)


def format_value(value: Any) -> str:
    """Text form of one cell: NA for None, 10 significant digits for floats."""
    if value is None:
        return NOT_AVAILABLE
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


class ExportService:
    """Tabular exports of experiment results."""

    @staticmethod
    def report_row(report: EstimateReport) -> list[Any]:
        return [
            report.model, report.estimator, report.n, report.k, report.w, report.depth,
            report.bias_pct, report.stderr_pct, report.rmse_pct,
            report.truth, report.mean, report.bias, report.stderr, report.rmse,
            len(report.failures),
        ]

    @staticmethod
    def curve_row(row: BiasCurveRow) -> list[Any]:
        return [row.axis.value, row.grid_value, row.axis_value, row.estimator, row.bias, row.stderr, row.rmse]

    # ---------------------------------------------------------------------------
    # CSV
    # ---------------------------------------------------------------------------

    def reports_csv(self, reports: Sequence[EstimateReport]) -> str:
        """One row per estimator report, columns in REPORT_COLUMNS order."""
        return write_csv(REPORT_COLUMNS, (self.report_row(r) for r in reports))

    def curve_csv(self, rows: Sequence[BiasCurveRow]) -> str:
        return write_csv(CURVE_COLUMNS, (self.curve_row(r) for r in rows))

    # ---------------------------------------------------------------------------
    # XLSX
    # ---------------------------------------------------------------------------

    def reports_xlsx(self, reports: Sequence[EstimateReport], metadata: Optional[dict[str, Any]] = None) -> io.BytesIO:
        """
        Workbook with a "results" sheet, a "failures" sheet listing every
        per-repetition failure, and a "metadata" sheet.

        Returns:
            BytesIO buffer positioned at byte 0.
        """
        wb = Workbook()
        ws = wb.active
        ws.title = "results"
        self._fill_sheet(ws, REPORT_COLUMNS, [self.report_row(r) for r in reports])

        failures = wb.create_sheet("failures")
        self._fill_sheet(
            failures,
            ["estimator", "failure"],
            [[r.estimator, message] for r in reports for message in r.failures],
        )
        self._build_metadata_sheet(wb, metadata)
        return self._save(wb)

    def curve_xlsx(self, rows: Sequence[BiasCurveRow], metadata: Optional[dict[str, Any]] = None) -> io.BytesIO:
        wb = Workbook()
        ws = wb.active
        ws.title = "curve"
        self._fill_sheet(ws, CURVE_COLUMNS, [self.curve_row(r) for r in rows])
        self._build_metadata_sheet(wb, metadata)
        return self._save(wb)

    # ---------------------------------------------------------------------------
    # Internal helpers
    # ---------------------------------------------------------------------------

    def _fill_sheet(self, ws, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        ws.append(list(header))
        self._style_header_row(ws, 1, len(header))
        for row in rows:
            ws.append([NOT_AVAILABLE if value is None else value for value in row])
        self._auto_column_widths(ws)

    def _build_metadata_sheet(self, wb: Workbook, metadata: Optional[dict[str, Any]]) -> None:
        ws = wb.create_sheet("metadata")
        entries = {"schema": SCHEMA_VERSION, **(metadata or {})}
        self._fill_sheet(ws, ["key", "value"], [[key, format_value(value)] for key, value in entries.items()])

    @staticmethod
    def _save(wb: Workbook) -> io.BytesIO:
        buf = io.BytesIO()
        wb.save(buf)
        buf.seek(0)
        return buf

    @staticmethod
    def _style_header_row(ws, row_num: int, col_count: int) -> None:
        for col in range(1, col_count + 1):
            cell = ws.cell(row=row_num, column=col)
            cell.font = _HEADER_FONT
            cell.fill = _HEADER_FILL
            cell.alignment = _HEADER_ALIGN

    @staticmethod
    def _auto_column_widths(ws) -> None:
        for col in ws.columns:
            max_len = max(len(str(cell.value)) if cell.value is not None else 0 for cell in col)
            ws.column_dimensions[col[0].column_letter].width = min(max_len + 4, 44)


export_service = ExportService()
