import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from scipy.optimize import linprog

from interfaces.service import IPsiSynthesizer, ISemigroupModel
from domain.models import (
    CombinationTerm,
    EstimatorOracle,
    InfeasibilityCertificate,
    Observation,
    ParameterInterval,
    PsiTable,
    SynthesisVerification,
    SynthesisViolation,
    WeightedSample,
    observation_key,
)
from domain.enums import Membership
from domain.errors import PreconditionError, SolverError

# LP 최적값 ε 이 이 값 이하이면 분리 불가로 본다
EPSILON_FLOOR = 1e-9
RATIONAL_DENOMINATOR = 10 ** 6


@dataclass(frozen=True)
class _GridSolution:
    index: int
    t: float
    coefficients: Optional[np.ndarray]
    margin: float
    certificate: Optional[InfeasibilityCertificate]


class PsiSynthesizer(IPsiSynthesizer):
    """절단 반군 위 분리 LP 로 ψ 를 격자 표로 합성

    격자 점 t 마다 c(t) ∈ [−1, 1]^X 와 ε 을 찾는다:
      μ(s) < t 이면 Σ mult_s(x)·c_x + ε ≤ 0,  μ(s) > t 이면 Σ mult_s(x)·c_x − ε ≥ 0.
    B_t 쪽이 양수이므로 c 는 그대로 감소형 (추정값 왼쪽 양수) 방향의 ψ(·, t) 이다.
    """

    def __init__(self, semigroup: ISemigroupModel, n_jobs: int = 1):
        self._semigroup = semigroup
        self._n_jobs = n_jobs
        self._logger = logging.getLogger("synthesis")

    def synthesize_psi(
        self,
        oracle: EstimatorOracle,
        alphabet: Sequence[Observation],
        theta_grid: Sequence[float],
        max_size: int,
        boundary_tol: float = 1e-9,
        domain: Optional[ParameterInterval] = None,
    ) -> PsiTable | InfeasibilityCertificate:
        symbols = sorted(set(alphabet), key=observation_key)
        grid = tuple(float(t) for t in theta_grid)
        if not grid:
            raise PreconditionError("theta grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise PreconditionError("theta grid must be strictly increasing")

        samples = self._semigroup.enumerate_multisets(symbols, max_size)
        mus = np.array([self._semigroup.mu(oracle, s) for s in samples], dtype=float)
        mult = np.array([[s.multiplicity(x) for x in symbols] for s in samples], dtype=float)
        self._logger.info(
            f"synthesizing {oracle.name} over {len(symbols)} symbols, "
            f"{len(samples)} multisets, {len(grid)} grid points"
        )

        if self._n_jobs == 1:
            solutions = [self._solve_at(j, t, samples, mult, mus, boundary_tol)
                         for j, t in enumerate(grid)]
        else:
            solutions = Parallel(n_jobs=self._n_jobs, prefer="threads")(
                delayed(self._solve_at)(j, t, samples, mult, mus, boundary_tol)
                for j, t in enumerate(grid)
            )

        for solution in solutions:
            if solution.certificate is not None:
                self._logger.warning(f"separation infeasible at t={solution.t}")
                return solution.certificate

        columns = np.column_stack([s.coefficients for s in solutions])
        return PsiTable(
            observations=tuple(symbols),
            theta_grid=grid,
            values=tuple(tuple(float(v) for v in row) for row in columns),
            margins=tuple(s.margin for s in solutions),
            domain=domain or self._default_domain(symbols, grid),
            boundary_tol=boundary_tol,
            max_size=max_size,
        )

    def verify_synthesis(
        self,
        table: PsiTable,
        oracle: EstimatorOracle,
        alphabet: Sequence[Observation],
        max_size: int,
    ) -> SynthesisVerification:
        missing = [x for x in alphabet if x not in table.observations]
        if missing:
            raise PreconditionError(f"table does not cover {missing}")

        checked, skipped, violations = 0, 0, []
        for sample in self._semigroup.enumerate_multisets(alphabet, max_size):
            mu = self._semigroup.mu(oracle, sample)
            for j, t in enumerate(table.theta_grid):
                if abs(mu - t) <= table.boundary_tol:
                    skipped += 1
                    continue
                checked += 1
                expected = 1 if t < mu else -1
                value = table.score_sum(sample, j)
                if value * expected <= 0:
                    violations.append(SynthesisViolation(sample, j, t, expected, value))

        self._logger.info(
            f"verified {checked} sign conditions, {skipped} boundary, {len(violations)} violations"
        )
        return SynthesisVerification(
            checked=checked,
            boundary_skipped=skipped,
            violations=tuple(violations),
        )

    # ------------------------------------------------------------------
    # 내부 구현
    # ------------------------------------------------------------------

    def _solve_at(
        self,
        index: int,
        t: float,
        samples: list[WeightedSample],
        mult: np.ndarray,
        mus: np.ndarray,
        boundary_tol: float,
    ) -> _GridSolution:
        in_a = mus < t - boundary_tol
        in_b = mus > t + boundary_tol
        k = mult.shape[1]

        rows = np.vstack([mult[in_a], -mult[in_b]])
        if rows.shape[0] == 0:
            return _GridSolution(index, t, np.zeros(k), 1.0, None)

        # 변수 [c_1..c_k, ε], ε 최대화
        objective = np.zeros(k + 1)
        objective[-1] = -1.0
        a_ub = np.hstack([rows, np.ones((rows.shape[0], 1))])
        b_ub = np.zeros(rows.shape[0])
        bounds = [(-1.0, 1.0)] * k + [(0.0, 1.0)]
        res = linprog(objective, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if res.status != 0:
            raise SolverError(f"separation LP failed at t={t}: {res.message}")
        coefficients = np.asarray(res.x[:k])
        epsilon = float(res.x[-1])
        self._logger.debug(f"t={t}: LP status {res.status}, epsilon={epsilon}")

        # 엄격 부호로 독립 재검증
        scores = mult @ coefficients
        margin = min(
            float(np.min(-scores[in_a])) if in_a.any() else math.inf,
            float(np.min(scores[in_b])) if in_b.any() else math.inf,
        )
        if epsilon > EPSILON_FLOOR and margin > 0:
            return _GridSolution(index, t, coefficients, margin, None)

        certificate = self._certificate(t, samples, mult, in_a, in_b)
        return _GridSolution(index, t, None, 0.0, certificate)

    def _certificate(
        self,
        t: float,
        samples: list[WeightedSample],
        mult: np.ndarray,
        in_a: np.ndarray,
        in_b: np.ndarray,
    ) -> InfeasibilityCertificate:
        """λ ≥ 0, Σλ = 1, Σ_A λ·mult = Σ_B λ·mult 인 꼭짓점 해를 정수 가중치로 변환"""
        a_idx = np.flatnonzero(in_a)
        b_idx = np.flatnonzero(in_b)
        if len(a_idx) == 0 or len(b_idx) == 0:
            raise SolverError(f"no separation at t={t} but one side is empty")

        columns = np.hstack([mult[a_idx].T, -mult[b_idx].T])
        a_eq = np.vstack([columns, np.ones((1, columns.shape[1]))])
        b_eq = np.zeros(a_eq.shape[0])
        b_eq[-1] = 1.0
        res = linprog(np.zeros(columns.shape[1]), A_eq=a_eq, b_eq=b_eq,
                      bounds=(0.0, None), method="highs-ds")
        if res.status != 0:
            raise SolverError(f"certificate LP failed at t={t}: {res.message}")

        weights = [Fraction(float(w)).limit_denominator(RATIONAL_DENOMINATOR) for w in res.x]
        scale = math.lcm(*(w.denominator for w in weights))
        integers = [int(w * scale) for w in weights]

        terms = []
        for position, weight in enumerate(integers):
            if weight <= 0:
                continue
            if position < len(a_idx):
                terms.append(CombinationTerm(samples[a_idx[position]], Membership.IN_A, weight))
            else:
                terms.append(CombinationTerm(samples[b_idx[position - len(a_idx)]],
                                             Membership.IN_B, weight))
        divisor = math.gcd(*(term.weight for term in terms)) if terms else 1
        terms = [CombinationTerm(term.sample, term.side, term.weight // divisor) for term in terms]

        certificate = InfeasibilityCertificate(t=t, combination=tuple(terms))
        if not certificate.recheck():
            raise SolverError(f"certificate at t={t} does not re-validate in integer arithmetic")
        self._logger.info(f"infeasibility certificate at t={t}: {certificate.describe()}")
        return certificate

    @staticmethod
    def _default_domain(symbols: list[Observation], grid: tuple[float, ...]) -> ParameterInterval:
        numeric = [float(x) for x in symbols if not isinstance(x, str)]
        lo = min(numeric + [grid[0]]) if numeric else grid[0]
        hi = max(numeric + [grid[-1]]) if numeric else grid[-1]
        if not lo < grid[0]:
            lo = grid[0] - 1.0
        if not hi > grid[-1]:
            hi = grid[-1] + 1.0
        return ParameterInterval(lo, hi)
