from typing import Optional

from interfaces.dataio import IReportWriter
from domain.models import RunReport
from domain.enums import ReportFormat


class MockReportWriter(IReportWriter):
    """테스트용 Mock 보고서 기록기 (파일 대신 메모리에 보관)"""

    def __init__(self):
        self.written: list[tuple[RunReport, Optional[str], ReportFormat]] = []

    def render(self, report: RunReport, fmt: ReportFormat) -> str:
        return f"{report.command}:{report.outcome.name.lower()}"

    def write(self, report: RunReport, path: Optional[str], fmt: ReportFormat) -> None:
        self.written.append((report, path, fmt))

    @property
    def last(self) -> Optional[RunReport]:
        return self.written[-1][0] if self.written else None
