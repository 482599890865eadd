from typing import Sequence

import numpy as np

from domain.models import Observation, SamplerConfig, WeightedSample


class SampleGenerator:
    """SamplerConfig 시드 기반 결정적 표본 생성기"""

    def __init__(self, cfg: SamplerConfig):
        self._cfg = cfg
        self._rng = np.random.default_rng(cfg.seed)

    @property
    def rng(self) -> np.random.Generator:
        return self._rng

    def value(self) -> Observation:
        if self._cfg.pool:
            return self._cfg.pool[int(self._rng.integers(len(self._cfg.pool)))]
        lo, hi = self._cfg.pool_range
        return float(self._rng.uniform(lo, hi))

    def values(self, size: int) -> list[Observation]:
        return [self.value() for _ in range(size)]

    def block_size(self, low: int = 1) -> int:
        return int(self._rng.integers(low, max(low, self._cfg.max_block) + 1))

    def ordered_list(self, low: int = 1) -> list[Observation]:
        return self.values(self.block_size(low))

    def sample(self) -> WeightedSample:
        return WeightedSample.of(*self.ordered_list())

    def permutation(self, values: Sequence[Observation]) -> list[Observation]:
        order = self._rng.permutation(len(values))
        return [values[int(i)] for i in order]

    def index(self, size: int) -> int:
        return int(self._rng.integers(size))

    def uniform(self, lo: float, hi: float) -> float:
        return float(self._rng.uniform(lo, hi))
