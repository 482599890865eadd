import logging
import math
from fractions import Fraction
from typing import Optional

import numpy as np

from interfaces.service import IEstimator, IRatioAnalyzer
from domain.models import (
    Observation,
    ParameterInterval,
    RatioDiagnostic,
    ScoreFamily,
    Tolerances,
    WeightedSample,
    ZLimitReport,
)
from domain.enums import Monotonicity
from domain.errors import (
    AnchorsIndistinguishableError,
    BlocksEqualEstimateError,
    DenominatorNearZeroError,
    PreconditionError,
)

LIMIT_HALVINGS = 20


class RatioAnalyzer(IRatioAnalyzer):
    """비율 함수 f_{x,y}(t) = −ψ_x(t)/ψ_y(t) 진단과 정규화"""

    def __init__(self, estimator: IEstimator, tol: Optional[Tolerances] = None):
        self._estimator = estimator
        self._tol = tol or Tolerances()
        self._logger = logging.getLogger("ratio")

    def ratio_fn(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y_block: WeightedSample,
        t: float,
    ) -> float:
        denominator = self._estimator.score_sum(psi, y_block, t)
        if abs(denominator) <= self._tol.zero_tol:
            raise DenominatorNearZeroError(
                f"|score_sum(y, {t})| = {abs(denominator):.3e} <= zero_tol"
            )
        return -self._estimator.score_sum(psi, x_block, t) / denominator

    def audit_ratio(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y_block: WeightedSample,
        grid_size: int = 100,
        tol: Optional[Tolerances] = None,
    ) -> RatioDiagnostic:
        tol = tol or self._tol
        mx = self._estimator.estimate(psi, x_block, tol).theta
        my = self._estimator.estimate(psi, y_block, tol).theta
        if abs(mx - my) <= tol.plateau_width_tol:
            raise BlocksEqualEstimateError(f"M(x)={mx} and M(y)={my} are indistinguishable")

        increasing = mx < my
        gap = ParameterInterval(min(mx, my), max(mx, my))
        grid = gap.interior_grid(grid_size)
        values = tuple(self.ratio_fn(psi, x_block, y_block, t) for t in grid)

        positive = all(v > 0 for v in values)
        monotone = self._is_monotone(values, increasing)

        # 연속성: M(x) 를 포함하고 ψ_y 의 영점은 피하는 확장 격자에서 4배 세분 비교
        jump = self._max_jump(psi, x_block, y_block, mx, my, grid_size)
        jump_refined = self._max_jump(psi, x_block, y_block, mx, my, 4 * (grid_size - 1) + 1)
        continuity = jump == 0 or jump_refined <= jump / 2

        witness = None
        if not monotone:
            witness = self._first_monotonicity_witness(psi, x_block, y_block, grid, values,
                                                       increasing)

        self._logger.info(
            f"ratio {x_block} vs {y_block}: positive={positive} monotone={monotone} "
            f"continuity={continuity} (jump {jump:.3e} -> {jump_refined:.3e})"
        )
        return RatioDiagnostic(
            x_block=x_block,
            y_block=y_block,
            x_estimate=mx,
            domain_gap=my,
            expected_direction=Monotonicity.INCREASING if increasing else Monotonicity.DECREASING,
            grid=grid,
            values=values,
            positive_on_gap_interval=positive,
            monotone_on_gap_interval=monotone,
            continuity_consistent=continuity,
            max_jump=jump,
            max_jump_refined=jump_refined,
            monotonicity_witness=witness,
        )

    def monotonicity_witness(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y_block: WeightedSample,
        s: float,
        t: float,
        increasing: bool = True,
    ) -> Optional[dict]:
        """s < t 에서 비율의 단조성이 깨지면 n·x ⊕ m·y 표본으로 모순 구성

        m/n 이 f(s), f(t) 사이에 오면 이 표본의 스코어 합은 s 에서 음수, t 에서 양수가 된다.
        """
        if not s < t:
            raise PreconditionError("monotonicity witness needs s < t")
        fs = self.ratio_fn(psi, x_block, y_block, s)
        ft = self.ratio_fn(psi, x_block, y_block, t)
        low, high = (ft, fs) if increasing else (fs, ft)
        if not (0 < low < high):
            return None
        ratio = self._rational_between(low, high)
        m, n = ratio.numerator, ratio.denominator
        sample = x_block.replicate(n).concat(y_block.replicate(m))
        at_s = self._estimator.score_sum(psi, sample, s)
        at_t = self._estimator.score_sum(psi, sample, t)
        return {
            "s": s,
            "t": t,
            "n": n,
            "m": m,
            "sample": sample.to_dict(),
            "score_sum_at_s": at_s,
            "score_sum_at_t": at_t,
            "contradicts_sign_change": at_s < 0 < at_t,
        }

    def decomposition_residuals(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y_block: WeightedSample,
        z_block: WeightedSample,
        t: float,
    ) -> tuple[float, Optional[float]]:
        """가법 / 승법 분해 항등식의 상대 잔차"""
        f_xy = self.ratio_fn(psi, x_block, y_block, t)
        f_zxy = self.ratio_fn(psi, z_block.concat(x_block), y_block, t)
        f_zy = self.ratio_fn(psi, z_block, y_block, t)
        scale = max(1.0, abs(f_xy))
        additive = abs(f_xy - (f_zxy - f_zy)) / scale

        multiplicative = None
        psi_z = self._estimator.score_sum(psi, z_block, t)
        psi_x = self._estimator.score_sum(psi, x_block, t)
        if psi_z != 0 and abs(psi_x) > self._tol.zero_tol:
            f_zx = self.ratio_fn(psi, z_block, x_block, t)
            multiplicative = abs(f_xy - (-f_zy / f_zx)) / scale
        return additive, multiplicative

    def normalize_psi(
        self, psi_star: ScoreFamily, u: Observation, v: Observation
    ) -> ScoreFamily:
        """ψ(x, t) = ψ*(x, t) / (|ψ*(u, t)| + |ψ*(v, t)|)"""
        mu = self._estimator.estimate(psi_star, WeightedSample.of(u)).theta
        mv = self._estimator.estimate(psi_star, WeightedSample.of(v)).theta
        if abs(mu - mv) <= self._tol.plateau_width_tol:
            raise AnchorsIndistinguishableError(
                f"M_1({u})={mu} and M_1({v})={mv} are indistinguishable"
            )

        def denominator(t: float) -> float:
            return abs(psi_star.eval(u, t)) + abs(psi_star.eval(v, t))

        def psi(x: Observation, t: float) -> float:
            d = denominator(t)
            if d == 0:
                raise DenominatorNearZeroError(f"normalizer vanishes at t={t}")
            return psi_star.eval(x, t) / d

        return ScoreFamily(
            name=f"normalized({psi_star.name};{u},{v})",
            eval=psi,
            domain=psi_star.domain,
            claims=psi_star.claims,
            description=f"{psi_star.name} divided by |psi(u,t)|+|psi(v,t)|",
        )

    @staticmethod
    def normalizer(psi_star: ScoreFamily, u: Observation, v: Observation, t: float) -> float:
        return abs(psi_star.eval(u, t)) + abs(psi_star.eval(v, t))

    def z_via_ratio_limits(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y: Observation,
        tol: float = 1e-8,
    ) -> ZLimitReport:
        report = self._estimator.estimate(psi, x_block)
        theta = report.theta
        my = self._estimator.estimate(psi, WeightedSample.of(y)).theta
        if not my > theta:
            raise PreconditionError(f"need M_1({y})={my} > M(x)={theta}")

        y_block = WeightedSample.of(y)
        a, b = report.sign_change.bracket
        h_final = 1e3 * max(self._tol.root_abs_tol, b - a)
        h0 = h_final * 2 ** LIMIT_HALVINGS
        # θ̂ ± h 가 Θ 안, 그리고 M_1(y) 왼쪽에 머물도록 제한
        room = (my - theta) / 2
        if psi.domain.bounded_below:
            room = min(room, (theta - psi.domain.lo) / 2)
        h0 = min(h0, room)

        steps = tuple(h0 / 2 ** j for j in range(LIMIT_HALVINGS + 1))
        left = tuple(self.ratio_fn(psi, x_block, y_block, theta - h) for h in steps)
        right = tuple(self.ratio_fn(psi, x_block, y_block, theta + h) for h in steps)
        consistent = abs(left[-1]) <= tol and abs(right[-1]) <= tol
        if not consistent:
            self._logger.warning(
                f"{psi.name}: one-sided ratio limits {left[-1]:.3e}, {right[-1]:.3e} "
                f"do not vanish at {theta}"
            )
        return ZLimitReport(
            theta_hat=theta,
            steps=steps,
            left_values=left,
            right_values=right,
            direct_residual=self._estimator.score_sum(psi, x_block, theta),
            z_consistent=consistent,
        )

    # ------------------------------------------------------------------
    # 내부 구현
    # ------------------------------------------------------------------

    @staticmethod
    def _is_monotone(values: tuple[float, ...], increasing: bool) -> bool:
        for prev, cur in zip(values, values[1:]):
            slack = 1e-12 * max(1.0, abs(prev))
            if increasing and cur < prev - slack:
                return False
            if not increasing and cur > prev + slack:
                return False
        return True

    def _max_jump(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y_block: WeightedSample,
        mx: float,
        my: float,
        points: int,
    ) -> float:
        width = abs(my - mx)
        if mx < my:
            lo, hi = mx - width / 2, my - width / 4
            if not psi.domain.contains(lo):
                lo = psi.domain.lo + (mx - psi.domain.lo) / 2
        else:
            lo, hi = my + width / 4, mx + width / 2
            if not psi.domain.contains(hi):
                hi = psi.domain.hi - (psi.domain.hi - mx) / 2

        values = []
        for t in np.linspace(lo, hi, points):
            try:
                values.append(self.ratio_fn(psi, x_block, y_block, float(t)))
            except DenominatorNearZeroError:
                values.append(math.nan)
        jumps = [abs(b - a) for a, b in zip(values, values[1:])
                 if math.isfinite(a) and math.isfinite(b)]
        return max(jumps, default=0.0)

    def _first_monotonicity_witness(self, psi, x_block, y_block, grid, values, increasing):
        for i in range(len(values) - 1):
            broken = values[i + 1] < values[i] if increasing else values[i + 1] > values[i]
            if broken:
                return self.monotonicity_witness(psi, x_block, y_block, grid[i], grid[i + 1],
                                                 increasing)
        return None

    @staticmethod
    def _rational_between(low: float, high: float) -> Fraction:
        """low < m/n < high 인 가장 단순한 양의 유리수"""
        middle = Fraction((low + high) / 2)
        limit = 1
        while limit <= 2 ** 62:
            candidate = middle.limit_denominator(limit)
            if low < candidate < high and candidate > 0:
                return candidate
            limit *= 2
        raise PreconditionError(f"no representable ratio strictly between {low} and {high}")
