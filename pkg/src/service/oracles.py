import logging
import math
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from interfaces.service import IEstimator, IPsiCatalog
from domain.models import (
    EstimatorOracle,
    Observation,
    PsiTable,
    ScoreFamily,
    Tolerances,
    WeightedSample,
)
from domain.enums import Provenance
from domain.errors import PreconditionError, PsiSpecError

logger = logging.getLogger("oracles")


def _numeric(sample: WeightedSample) -> list[tuple[float, int]]:
    if not sample.is_numeric:
        raise PreconditionError(f"numeric oracle applied to symbolic sample {sample}")
    return [(value, count) for value, count in sample.entries]


def _is_exact(value: Observation) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def arithmetic_mean(sample: WeightedSample) -> float:
    entries = _numeric(sample)
    n = sample.size
    # 정수/유리수 입력은 정확 산술 후 한 번만 반올림
    if all(_is_exact(value) for value, _ in entries):
        return float(sum(Fraction(value) * count for value, count in entries) / n)
    return math.fsum(float(value) * count for value, count in entries) / n


def geometric_mean(sample: WeightedSample) -> float:
    entries = _numeric(sample)
    if any(value <= 0 for value, _ in entries):
        raise PreconditionError("geometric mean needs positive observations")
    return math.exp(math.fsum(count * math.log(value) for value, count in entries) / sample.size)


def harmonic_mean(sample: WeightedSample) -> float:
    entries = _numeric(sample)
    if any(value <= 0 for value, _ in entries):
        raise PreconditionError("harmonic mean needs positive observations")
    return sample.size / math.fsum(count / float(value) for value, count in entries)


def maximum(sample: WeightedSample) -> float:
    return float(max(value for value, _ in _numeric(sample)))


def minimum(sample: WeightedSample) -> float:
    return float(min(value for value, _ in _numeric(sample)))


def median(sample: WeightedSample) -> float:
    _numeric(sample)
    return float(np.median(np.array(sample.expand(), dtype=float)))


def total(sample: WeightedSample) -> float:
    """Σ x - 내부성이 없는 반례"""
    entries = _numeric(sample)
    if all(_is_exact(value) for value, _ in entries):
        return float(sum(Fraction(value) * count for value, count in entries))
    return math.fsum(float(value) * count for value, count in entries)


def biased_first(values: Sequence[Observation]) -> float:
    """(2x₁ + x₂ + … + xₙ)/(n+1) - 첫 좌표에 가중치를 주는 비대칭 반례"""
    if not values:
        raise PreconditionError("biased-first needs at least one observation")
    return (2 * float(values[0]) + math.fsum(float(v) for v in values[1:])) / (len(values) + 1)


BUILTIN_MULTISET: dict[str, Callable[[WeightedSample], float]] = {
    "arithmetic": arithmetic_mean,
    "geometric": geometric_mean,
    "harmonic": harmonic_mean,
    "max": maximum,
    "min": minimum,
    "median": median,
    "sum": total,
}


def builtin_oracle(name: str) -> EstimatorOracle:
    if name == "biased-first":
        return EstimatorOracle(
            name=name,
            eval=lambda sample: biased_first(sample.expand()),
            provenance=Provenance.BUILTIN,
            list_eval=biased_first,
        )
    try:
        fn = BUILTIN_MULTISET[name]
    except KeyError:
        raise PsiSpecError(f"unknown mean: {name!r}") from None
    return EstimatorOracle(name=name, eval=fn, provenance=Provenance.BUILTIN)


def estimator_oracle(
    psi: ScoreFamily, estimator: IEstimator, tol: Optional[Tolerances] = None
) -> EstimatorOracle:
    """ScoreFamily 의 일반화 ψ-추정량"""
    return estimator.as_oracle(psi, tol)


def table_oracle(table: PsiTable, name: str = "table") -> EstimatorOracle:
    """격자 위 부호 변화로 추정값을 읽는 오라클

    마지막 양수 열과 첫 음수 열 사이의 중점을 돌려준다.
    """
    grid = table.theta_grid

    def evaluate(sample: WeightedSample) -> float:
        sums = [table.score_sum(sample, j) for j in range(len(grid))]
        last_positive = max((j for j, s in enumerate(sums) if s > 0), default=None)
        first_negative = min((j for j, s in enumerate(sums) if s < 0), default=None)
        if last_positive is None:
            left = table.domain.lo if table.domain.bounded_below else grid[0] - 1.0
            return (left + grid[0]) / 2
        if first_negative is None:
            right = table.domain.hi if table.domain.bounded_above else grid[-1] + 1.0
            return (grid[-1] + right) / 2
        if first_negative <= last_positive:
            raise PreconditionError(f"table columns do not change sign monotonically on {sample}")
        return (grid[last_positive] + grid[first_negative]) / 2

    return EstimatorOracle(
        name=name,
        eval=evaluate,
        provenance=Provenance.FROM_TABLE,
        domain=table.domain,
    )


class OracleResolver:
    """--mean 이름을 EstimatorOracle 로 해석 (내장 평균 또는 psi:<spec>)"""

    def __init__(self, catalog: IPsiCatalog, estimator: IEstimator):
        self._catalog = catalog
        self._estimator = estimator

    @staticmethod
    def names() -> list[str]:
        return sorted(BUILTIN_MULTISET) + ["biased-first", "psi:<spec>"]

    def resolve(self, name: str, tol: Optional[Tolerances] = None) -> EstimatorOracle:
        if name.startswith("psi:"):
            psi = self._catalog.parse(name[len("psi:"):])
            return estimator_oracle(psi, self._estimator, tol)
        oracle = builtin_oracle(name)
        logger.debug(f"resolved builtin oracle {name}")
        return oracle
