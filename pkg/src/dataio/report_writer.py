import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from interfaces.dataio import IReportWriter
from domain.models import RunReport
from domain.enums import ReportFormat


class ReportWriter(IReportWriter):
    """실행 보고서 직렬화 (JSON: 키 정렬, CSV: section/key/value 행)"""

    def __init__(self):
        self._logger = logging.getLogger("report_writer")

    def render(self, report: RunReport, fmt: ReportFormat) -> str:
        if fmt == ReportFormat.CSV:
            return self._render_csv(report)
        return json.dumps(report.to_dict(), indent=2, sort_keys=True, default=str) + "\n"

    def render_body(self, report: RunReport) -> str:
        """타이밍을 뺀 본문 - 같은 구성과 seed 면 바이트 단위로 같다"""
        return json.dumps(report.body(), indent=2, sort_keys=True, default=str) + "\n"

    def write(self, report: RunReport, path: Optional[str], fmt: ReportFormat) -> None:
        text = self.render(report, fmt)
        if path is None:
            sys.stdout.write(text)
            return
        Path(path).write_text(text, encoding="utf-8")
        self._logger.info(f"report written to {path}")

    @staticmethod
    def _render_csv(report: RunReport) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["section", "key", "value"])
        writer.writerow(["run", "command", report.command])
        writer.writerow(["run", "outcome", report.outcome.name.lower()])
        writer.writerow(["run", "exit_code", report.exit_code])
        writer.writerow(["run", "version", report.version])
        for key, value in sorted(report.inputs.items()):
            writer.writerow(["input", key, json.dumps(value, sort_keys=True, default=str)])
        for key, value in sorted(report.tolerances.items()):
            writer.writerow(["tolerance", key, value])
        for verdict in report.verdicts:
            writer.writerow(["verdict", verdict.get("axiom", ""), verdict.get("verdict", "")])
        for key, value in sorted(report.metrics.items()):
            writer.writerow(["metric", key, json.dumps(value, sort_keys=True, default=str)])
        writer.writerow(["run", "witnesses", len(report.witnesses)])
        for key, value in sorted(report.timing.items()):
            writer.writerow(["timing", key, value])
        return buffer.getvalue()
