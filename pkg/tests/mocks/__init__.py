from .mock_sample_reader import MockSampleReader
from .mock_report_writer import MockReportWriter

__all__ = ["MockSampleReader", "MockReportWriter"]
