import logging
import math
from typing import Callable, Optional, Sequence

from interfaces.service import ISignChangeFinder
from domain.models import ParameterInterval, SignChangeResult, SignProfile, Tolerances
from domain.enums import SignChangeStatus
from domain.errors import NoBracketError, PlateauError, PreconditionError


class _ProbeLog:
    """평가 횟수와 탐색 기록을 남기는 f 래퍼"""

    def __init__(self, f: Callable[[float], float]):
        self._f = f
        self.evaluations = 0
        self.probes: list[tuple[float, float]] = []

    def __call__(self, t: float) -> float:
        value = float(self._f(t))
        self.evaluations += 1
        self.probes.append((t, value))
        return value


class SignChangeFinder(ISignChangeFinder):
    """감소형 부호 변화점 탐색 구현체

    연속성을 가정하지 않으며 도함수는 쓰지 않는다.
    양 끝이 유계이면 남은 거리를 반으로 줄이며, 무한대 쪽은 bracket_growth 배씩 멀어진다.
    """

    def __init__(self, tol: Optional[Tolerances] = None):
        self._tol = tol or Tolerances()
        self._logger = logging.getLogger("sign_change")

    @property
    def tolerances(self) -> Tolerances:
        return self._tol

    def bracket_sign_change(
        self,
        f: Callable[[float], float],
        domain: ParameterInterval,
        seed: Optional[float] = None,
        tol: Optional[Tolerances] = None,
    ) -> tuple[float, float]:
        tol = tol or self._tol
        log = _ProbeLog(f)
        return self._bracket(log, domain, self._seed(domain, seed), tol)

    def find_sign_change(
        self,
        f: Callable[[float], float],
        domain: ParameterInterval,
        seed: Optional[float] = None,
        tol: Optional[Tolerances] = None,
    ) -> SignChangeResult:
        tol = tol or self._tol
        log = _ProbeLog(f)
        a, b = self._bracket(log, domain, self._seed(domain, seed), tol)
        bracket_evals = log.evaluations

        steps = 0
        while b - a > tol.root_abs_tol and steps < tol.max_bisect_steps:
            mid = a + (b - a) / 2
            if not a < mid < b:
                break
            value = log(mid)
            steps += 1

            if abs(value) <= tol.zero_tol:
                outcome, a, b = self._resolve_zero_band(log, a, b, mid, value, tol)
                if outcome == "exact":
                    self._logger.debug(f"exact zero at {mid} after {log.evaluations} evals")
                    return SignChangeResult(
                        theta=mid,
                        bracket=(a, b),
                        residual_at_theta=value,
                        evaluations=log.evaluations,
                        status=SignChangeStatus.EXACT_ZERO,
                        resolution_limited=b - a > tol.root_abs_tol,
                    )
                continue

            if value > 0:
                a = mid
            else:
                b = mid

        theta = self._shortest_decimal_in(a, b)
        residual = log(theta)
        self._logger.debug(
            f"located theta={theta} bracket=({a}, {b}) "
            f"evals={log.evaluations} (bracketing {bracket_evals})"
        )
        return SignChangeResult(
            theta=theta,
            bracket=(a, b),
            residual_at_theta=residual,
            evaluations=log.evaluations,
            status=SignChangeStatus.LOCATED,
            resolution_limited=self._resolution_limited(a, b, tol),
        )

    def sign_profile(
        self,
        f: Callable[[float], float],
        grid: Sequence[float],
        zero_tol: Optional[float] = None,
    ) -> SignProfile:
        zero_tol = self._tol.zero_tol if zero_tol is None else zero_tol
        positive, zero, negative = [], [], []
        classes = []
        for i, t in enumerate(grid):
            value = float(f(t))
            if value > zero_tol:
                positive.append(i)
                classes.append(1)
            elif value < -zero_tol:
                negative.append(i)
                classes.append(-1)
            else:
                zero.append(i)
                classes.append(0)

        # +…+ 0…0 −…− 형태 (0 구간은 하나 이하)
        non_increasing = all(c1 >= c2 for c1, c2 in zip(classes, classes[1:]))
        decreasing_type = non_increasing and bool(positive) and bool(negative)
        return SignProfile(
            positive=tuple(positive),
            zero=tuple(zero),
            negative=tuple(negative),
            decreasing_type=decreasing_type,
        )

    # ------------------------------------------------------------------
    # 내부 구현
    # ------------------------------------------------------------------

    @staticmethod
    def _shortest_decimal_in(a: float, b: float) -> float:
        """검증된 구간 [a, b] 안에서 소수 자릿수가 가장 적은 점 (없으면 중점)"""
        mid = a + (b - a) / 2
        for digits in range(18):
            candidate = round(mid, digits)
            if a <= candidate <= b:
                return candidate + 0.0
        return mid

    def _resolution_limited(self, a: float, b: float, tol: Tolerances) -> bool:
        """|θ| 가 크면 이웃한 두 float 의 간격이 root_abs_tol 보다 넓다"""
        if b - a <= tol.root_abs_tol:
            return False
        mid = a + (b - a) / 2
        if a < mid < b:
            # 반복 횟수 상한에 걸린 경우
            return False
        self._logger.warning(
            f"bracket ({a}, {b}) is one float step wide, wider than root_abs_tol "
            f"{tol.root_abs_tol}"
        )
        return True

    @staticmethod
    def _seed(domain: ParameterInterval, seed: Optional[float]) -> float:
        if seed is None:
            return domain.default_seed()
        if not domain.contains(seed):
            raise PreconditionError(f"seed {seed} is outside {domain}")
        return seed

    def _bracket(
        self,
        log: _ProbeLog,
        domain: ParameterInterval,
        seed: float,
        tol: Tolerances,
    ) -> tuple[float, float]:
        value = log(seed)
        if value > 0:
            a = seed
            b = self._search(log, domain, seed, +1, tol)
        elif value < 0:
            b = seed
            a = self._search(log, domain, seed, -1, tol)
        else:
            a = self._search(log, domain, seed, -1, tol)
            b = self._search(log, domain, seed, +1, tol)
        self._logger.debug(f"bracket ({a}, {b}) from seed {seed} in {log.evaluations} evals")
        return a, b

    def _search(
        self,
        log: _ProbeLog,
        domain: ParameterInterval,
        seed: float,
        direction: int,
        tol: Tolerances,
    ) -> float:
        """direction=+1 이면 오른쪽에서 음수, -1 이면 왼쪽에서 양수를 찾는다"""
        end = domain.hi if direction > 0 else domain.lo
        previous = seed
        for k in range(tol.max_bracket_steps):
            if math.isfinite(end):
                t = end - (end - seed) / 2 ** (k + 1)
            else:
                t = seed + direction * tol.bracket_growth ** k
            if not domain.contains(t) or t == previous:
                break
            previous = t
            value = log(t)
            if direction > 0 and value < 0:
                return t
            if direction < 0 and value > 0:
                return t

        side = "negative value to the right" if direction > 0 else "positive value to the left"
        self._logger.debug(f"no bracket: {side} of seed {seed} not found")
        result = SignChangeResult(
            theta=seed,
            bracket=(seed, seed),
            residual_at_theta=log.probes[0][1],
            evaluations=log.evaluations,
            status=SignChangeStatus.NO_BRACKET,
            probes=tuple(log.probes),
        )
        raise NoBracketError(
            f"no strict {side} of seed {seed} within {tol.max_bracket_steps} probes",
            result,
        )

    def _resolve_zero_band(
        self,
        log: _ProbeLog,
        a: float,
        b: float,
        mid: float,
        value: float,
        tol: Tolerances,
    ) -> tuple[str, float, float]:
        """|f(mid)| <= zero_tol 일 때 mid±δ 탐색

        반환: ("exact" | "resume", a, b). 폭이 plateau_width_tol 을 넘는 평탄 0 구간은 PlateauError.
        """
        delta = (b - a) / 4
        while True:
            left, right = mid - delta, mid + delta
            f_left, f_right = log(left), log(right)

            if f_left > 0 > f_right:
                a, b = max(a, left), min(b, right)
                if value > 0:
                    a = mid
                    return "resume", a, b
                if value < 0:
                    b = mid
                    return "resume", a, b
            else:
                # 엄격한 감소가 없는 쪽만 평탄 구간으로 센다
                left_flat = abs(f_left) <= tol.zero_tol and not f_left > value
                right_flat = abs(f_right) <= tol.zero_tol and not value > f_right
                width = delta * (int(left_flat) + int(right_flat))
                if width > tol.plateau_width_tol:
                    plateau = (left if left_flat else mid, right if right_flat else mid)
                    self._logger.debug(f"plateau {plateau} (width {width})")
                    result = SignChangeResult(
                        theta=mid,
                        bracket=(a, b),
                        residual_at_theta=value,
                        evaluations=log.evaluations,
                        status=SignChangeStatus.PLATEAU,
                        plateau=plateau,
                    )
                    raise PlateauError(
                        f"score sum vanishes on ({plateau[0]}, {plateau[1]}), "
                        f"width {width} > {tol.plateau_width_tol}",
                        result,
                    )
                for point, fp in ((left, f_left), (mid, value), (right, f_right)):
                    if fp > 0 and point > a:
                        a = point
                    elif fp < 0 and point < b:
                        b = point
                if not a < mid < b:
                    return "resume", a, b

            delta /= 2
            # 마지막 확인 구간은 mid ± 2δ
            if 4 * delta <= tol.root_abs_tol or mid - delta == mid:
                if value == 0:
                    return "exact", a, b
                if value > 0:
                    a = max(a, mid)
                elif value < 0:
                    b = min(b, mid)
                return "resume", a, b
