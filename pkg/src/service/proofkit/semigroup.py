import logging
import math
from itertools import combinations_with_replacement
from typing import Sequence

from interfaces.service import ISemigroupModel
from domain.models import (
    AxiomReport,
    CoreProbeResult,
    EstimatorOracle,
    Observation,
    SamplerConfig,
    WeightedSample,
    Witness,
    observation_key,
)
from domain.enums import Axiom, Membership, Verdict
from domain.errors import EnumerationLimitError, PreconditionError
from service.sampling import SampleGenerator

MAX_WITNESSES = 10


class SemigroupModel(ISemigroupModel):
    """자유 가환 반군 S(X) 위의 μ, A_t / B_t, 닫힘과 core 탐색"""

    def __init__(self, max_multisets: int = 1_000_000, boundary_tol: float = 1e-9):
        self._max_multisets = max_multisets
        self._boundary_tol = boundary_tol
        self._logger = logging.getLogger("semigroup")

    def mu(self, oracle: EstimatorOracle, sample: WeightedSample) -> float:
        return oracle(sample)

    def level_membership(
        self,
        oracle: EstimatorOracle,
        sample: WeightedSample,
        t: float,
        tol: float = 1e-9,
    ) -> Membership:
        value = self.mu(oracle, sample)
        if value < t - tol:
            return Membership.IN_A
        if value > t + tol:
            return Membership.IN_B
        return Membership.BOUNDARY

    def closure_probe(
        self,
        oracle: EstimatorOracle,
        t: float,
        cfg: SamplerConfig,
        cases: Sequence[tuple[WeightedSample, WeightedSample]] = (),
    ) -> AxiomReport:
        """같은 쪽 (A_t 또는 B_t) 두 원소의 ⊕ 가 그 쪽에 남는지 검사"""
        gen = SampleGenerator(cfg)
        pairs = list(cases) + [(gen.sample(), gen.sample()) for _ in range(cfg.trials)]
        tol = cfg.tolerance

        witnesses, checked, max_violation = [], 0, 0.0
        for i, (r, s) in enumerate(pairs):
            # 쌍의 순서는 정준형으로 고정
            if self._order_key(s) < self._order_key(r):
                r, s = s, r
            side_r = self.level_membership(oracle, r, t, tol)
            side_s = self.level_membership(oracle, s, t, tol)
            if side_r != side_s or side_r == Membership.BOUNDARY:
                continue
            checked += 1
            joint = r.concat(s)
            value = self.mu(oracle, joint)
            side = self.level_membership(oracle, joint, t, tol)
            opposite = Membership.IN_B if side_r == Membership.IN_A else Membership.IN_A
            violation = (value - t) if side_r == Membership.IN_A else (t - value)
            if side == opposite:
                max_violation = max(max_violation, violation)
                name = "A_t" if side_r == Membership.IN_A else "B_t"
                witnesses.append(Witness(
                    trial=i,
                    inputs={"r": r.to_dict(), "s": s.to_dict(), "t": t, "side": side_r.value},
                    lhs=value,
                    rhs=t,
                    violation=violation,
                    relation=f"r, s in {name} implies r+s in {name}",
                ))

        if witnesses:
            verdict = Verdict.FAIL
        elif checked >= cfg.min_trials:
            verdict = Verdict.PASS
        else:
            verdict = Verdict.INCONCLUSIVE
        self._logger.info(f"closure at t={t}: {verdict.value} ({checked} same-side pairs)")
        return AxiomReport(
            axiom=Axiom.SEMIGROUP_CLOSURE,
            verdict=verdict,
            trials=checked,
            witnesses=tuple(witnesses[:MAX_WITNESSES]),
            max_violation=max_violation,
            config={**cfg.to_dict(), "t": t},
            notes=(f"{len(pairs) - checked} pairs were on different sides or on the boundary",),
        )

    def core_probe(
        self,
        oracle: EstimatorOracle,
        t: float,
        a: WeightedSample,
        s: WeightedSample,
        n_max: int = 10_000,
    ) -> CoreProbeResult:
        if self.level_membership(oracle, a, t, self._boundary_tol) != Membership.IN_A:
            raise PreconditionError(f"core probe needs a in A_t, got mu(a)={self.mu(oracle, a)}")
        for n in range(1, n_max + 1):
            candidate = a.replicate(n).concat(s)
            if self.level_membership(oracle, candidate, t, self._boundary_tol) == Membership.IN_A:
                return CoreProbeResult(n=n, n_max=n_max)
        self._logger.info(f"core probe unresolved after {n_max} replications")
        return CoreProbeResult(n=None, n_max=n_max)

    def count_multisets(self, alphabet_size: int, max_size: int) -> int:
        """C(N+|X|, |X|) − 1"""
        return math.comb(max_size + alphabet_size, alphabet_size) - 1

    def enumerate_multisets(
        self, alphabet: Sequence[Observation], max_size: int
    ) -> list[WeightedSample]:
        symbols = sorted(set(alphabet), key=observation_key)
        if not symbols:
            raise PreconditionError("alphabet must be nonempty")
        if max_size < 1:
            raise PreconditionError("max size must be >= 1")
        count = self.count_multisets(len(symbols), max_size)
        if count > self._max_multisets:
            raise EnumerationLimitError(
                f"{count} multisets exceed the limit of {self._max_multisets}"
            )
        result = [
            WeightedSample.of(*combo)
            for size in range(1, max_size + 1)
            for combo in combinations_with_replacement(symbols, size)
        ]
        self._logger.debug(f"enumerated {len(result)} multisets over {len(symbols)} symbols")
        return result

    @staticmethod
    def _order_key(sample: WeightedSample) -> tuple:
        return tuple((observation_key(v), c) for v, c in sample.entries)
