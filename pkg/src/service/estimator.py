import logging
import math
from typing import Optional

from interfaces.service import IEstimator, ISignChangeFinder
from domain.models import (
    EstimateReport,
    EstimatorOracle,
    ScoreFamily,
    Tolerances,
    WeightedSample,
)
from domain.enums import Claim, Provenance
from domain.errors import PreconditionError, SignChangeError


class Estimator(IEstimator):
    """일반화 ψ-추정 구현체 - 스코어 합의 감소형 부호 변화점"""

    def __init__(self, finder: ISignChangeFinder, tol: Optional[Tolerances] = None):
        self._finder = finder
        self._tol = tol or Tolerances()
        self._logger = logging.getLogger("estimator")

    def score_sum(self, psi: ScoreFamily, sample: WeightedSample, t: float) -> float:
        """정준 순서의 서로 다른 관측값마다 mult·ψ(x, t) 를 보정 합산"""
        if not psi.domain.contains(t):
            raise PreconditionError(f"t={t} is outside {psi.domain}")
        return math.fsum(count * psi.eval(value, t) for value, count in sample.entries)

    def estimate(
        self,
        psi: ScoreFamily,
        sample: WeightedSample,
        tol: Optional[Tolerances] = None,
    ) -> EstimateReport:
        tol = tol or self._tol
        seed = self._seed(psi, sample)

        try:
            result = self._finder.find_sign_change(
                lambda t: self.score_sum(psi, sample, t), psi.domain, seed, tol
            )
        except SignChangeError as e:
            self._logger.debug(f"{psi.name} on {sample}: {e}")
            raise e.with_sample(sample) from e

        n = sample.size
        z_residual = result.residual_at_theta
        claim_violation = None
        if psi.has(Claim.Z) and abs(z_residual) > tol.zero_tol * n:
            claim_violation = (
                f"{psi.name} claims Z but |z_residual|={abs(z_residual):.3e} "
                f"> zero_tol*n={tol.zero_tol * n:.3e}"
            )
            self._logger.warning(claim_violation)

        return EstimateReport(
            theta=result.theta,
            sign_change=result,
            z_residual=z_residual,
            n=n,
            psi_name=psi.name,
            claim_violation=claim_violation,
        )

    def homomorphism_residual(
        self, psi: ScoreFamily, a: WeightedSample, b: WeightedSample, t: float
    ) -> float:
        joint = self.score_sum(psi, a.concat(b), t)
        return abs(joint - self.score_sum(psi, a, t) - self.score_sum(psi, b, t))

    def as_oracle(
        self, psi: ScoreFamily, tol: Optional[Tolerances] = None
    ) -> EstimatorOracle:
        provenance = (
            Provenance.FROM_TABLE
            if psi.name.startswith("table:")
            else Provenance.FROM_SCORE_FAMILY
        )
        return EstimatorOracle(
            name=f"psi:{psi.name}",
            eval=lambda sample: self.estimate(psi, sample, tol).theta,
            provenance=provenance,
            domain=psi.domain,
        )

    @staticmethod
    def _seed(psi: ScoreFamily, sample: WeightedSample) -> float:
        """수치형 표본이면 가중 평균 (Θ 안일 때), 아니면 Θ 기본 시드"""
        if sample.is_numeric:
            mean = sample.weighted_mean()
            if psi.domain.contains(mean):
                return mean
        return psi.domain.default_seed()
