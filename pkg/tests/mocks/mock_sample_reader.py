from typing import Optional

from interfaces.dataio import ISampleReader
from domain.models import WeightedSample
from domain.errors import SampleParseError


class MockSampleReader(ISampleReader):
    """테스트용 Mock 표본 리더 - 경로별로 미리 정한 표본을 돌려준다"""

    def __init__(self, samples: Optional[dict[str, WeightedSample]] = None):
        self._samples: dict[str, WeightedSample] = dict(samples or {})
        self.reads: list[str] = []

    def read(self, path: str, fmt: Optional[str] = None) -> WeightedSample:
        self.reads.append(path)
        if path not in self._samples:
            raise SampleParseError(f"cannot read {path}: no such mock sample")
        return self._samples[path]

    def set_sample(self, path: str, sample: WeightedSample) -> None:
        """테스트용 표본 설정"""
        self._samples[path] = sample
