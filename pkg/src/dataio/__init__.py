from .sample_reader import SampleReader, parse_observation, parse_observation_list
from .psi_table_store import PsiTableStore
from .report_writer import ReportWriter

__all__ = [
    "SampleReader",
    "parse_observation",
    "parse_observation_list",
    "PsiTableStore",
    "ReportWriter",
]
