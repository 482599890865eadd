from abc import ABC, abstractmethod

from domain.models import RunReport, ScoreFamily


class IDisplay(ABC):
    """화면 출력 인터페이스"""

    @abstractmethod
    def show_report(self, report: RunReport) -> None:
        """실행 보고서 요약 표시"""
        pass

    @abstractmethod
    def show_catalog(self, families: list[ScoreFamily]) -> None:
        """카탈로그 목록 표시"""
        pass

    @abstractmethod
    def show_error(self, error: Exception) -> None:
        """에러 표시"""
        pass
