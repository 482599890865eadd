from abc import ABC, abstractmethod
from typing import Optional

from domain.models import PsiTable, RunReport, WeightedSample
from domain.enums import ReportFormat


class ISampleReader(ABC):
    """표본 파일 읽기 인터페이스"""

    @abstractmethod
    def read(self, path: str, fmt: Optional[str] = None) -> WeightedSample:
        """CSV 또는 JSON 표본 파일을 WeightedSample 로 읽기"""
        pass


class IPsiTableStore(ABC):
    """PsiTable 파일 입출력 인터페이스"""

    @abstractmethod
    def save(self, table: PsiTable, path: str) -> None:
        """표 저장"""
        pass

    @abstractmethod
    def load(self, path: str) -> PsiTable:
        """표 읽기 (불변식 위반 시 TableFormatError)"""
        pass


class IReportWriter(ABC):
    """보고서 출력 인터페이스"""

    @abstractmethod
    def render(self, report: RunReport, fmt: ReportFormat) -> str:
        """보고서를 문자열로 직렬화"""
        pass

    @abstractmethod
    def write(self, report: RunReport, path: Optional[str], fmt: ReportFormat) -> None:
        """보고서 기록 (path 가 없으면 stdout)"""
        pass
