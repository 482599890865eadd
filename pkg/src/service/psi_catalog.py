import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from interfaces.service import IPsiCatalog
from interfaces.dataio import IPsiTableStore
from domain.models import Observation, ParameterInterval, PsiTable, ScoreFamily, WeightedSample
from domain.enums import Claim, Monotonicity
from domain.errors import PreconditionError, PsiSpecError, TableFormatError

logger = logging.getLogger("psi_catalog")

POSITIVE_HALF_LINE = ParameterInterval(0.0, math.inf)


def _real(x: Observation) -> float:
    if isinstance(x, str):
        raise PreconditionError(f"observation {x!r} is not numeric")
    return float(x)


@dataclass(frozen=True)
class Generator:
    """준산술평균의 생성 함수 f (연속, 강단조)"""
    name: str
    f: Callable[[float], float]
    f_inverse: Callable[[float], float]
    monotonicity: Monotonicity
    interval: ParameterInterval

    @property
    def sigma(self) -> int:
        return 1 if self.monotonicity == Monotonicity.INCREASING else -1

    def sample_grid(self, size: int = 64) -> np.ndarray:
        """생성 함수 검사용 격자 (무한 끝은 유한 구간으로 대체)"""
        lo = self.interval.lo if self.interval.bounded_below else -50.0
        hi = self.interval.hi if self.interval.bounded_above else 50.0
        if not self.interval.bounded_below and self.interval.bounded_above:
            lo = hi - 100.0
        if self.interval.bounded_below and not self.interval.bounded_above:
            hi = lo + 100.0
        return np.linspace(lo, hi, size + 2)[1:-1]

    def validate(self) -> None:
        """격자 위 강단조성과 역함수 일치 확인"""
        xs = self.sample_grid()
        values = np.array([self.f(float(x)) for x in xs])
        steps = np.diff(values)
        if self.monotonicity == Monotonicity.INCREASING and not np.all(steps > 0):
            raise ValueError(f"generator {self.name} is not strictly increasing")
        if self.monotonicity == Monotonicity.DECREASING and not np.all(steps < 0):
            raise ValueError(f"generator {self.name} is not strictly decreasing")
        for x, fx in zip(xs, values):
            back = self.f_inverse(float(fx))
            if abs(back - x) > 1e-10 * max(1.0, abs(x)):
                raise ValueError(f"generator {self.name}: f_inverse(f({x})) = {back}")


def identity_generator() -> Generator:
    return Generator("id", lambda x: x, lambda y: y, Monotonicity.INCREASING,
                     ParameterInterval.real_line())


def log_generator() -> Generator:
    return Generator("ln", math.log, math.exp, Monotonicity.INCREASING, POSITIVE_HALF_LINE)


def reciprocal_generator() -> Generator:
    return Generator("recip", lambda x: 1.0 / x, lambda y: 1.0 / y,
                     Monotonicity.DECREASING, POSITIVE_HALF_LINE)


def power_generator(p: float) -> Generator:
    """x ↦ x^p on (0, ∞) - p < 0 이면 감소"""
    if p == 0 or not math.isfinite(p):
        raise ValueError(f"power generator needs a finite p != 0, got {p}")
    direction = Monotonicity.INCREASING if p > 0 else Monotonicity.DECREASING
    return Generator(
        f"pow:{p:g}",
        lambda x: x ** p,
        lambda y: y ** (1.0 / p),
        direction,
        POSITIVE_HALF_LINE,
    )


def affine_generator(g: Generator, a: float, b: float) -> Generator:
    """a·g + b (a ≠ 0) - 같은 준산술평균을 만든다"""
    if a == 0:
        raise ValueError("affine factor must be nonzero")
    flips = a < 0
    direction = g.monotonicity
    if flips:
        direction = (
            Monotonicity.DECREASING
            if g.monotonicity == Monotonicity.INCREASING
            else Monotonicity.INCREASING
        )
    return Generator(
        f"{a:g}*{g.name}+{b:g}",
        lambda x: a * g.f(x) + b,
        lambda y: g.f_inverse((y - b) / a),
        direction,
        g.interval,
    )


def qa_score(g: Generator) -> ScoreFamily:
    """ψ(x, t) = σ·(f(x) − f(t)) - 스코어 합은 준산술평균에서 0"""
    sigma = g.sigma

    def psi(x: Observation, t: float) -> float:
        value = _real(x)
        if not g.interval.contains(value):
            raise PreconditionError(f"observation {x!r} is outside {g.interval}")
        return sigma * (g.f(value) - g.f(t))

    return ScoreFamily(
        name=f"qa:{g.name}",
        eval=psi,
        domain=g.interval,
        claims=frozenset({Claim.C, Claim.T, Claim.Z}),
        description=f"quasi-arithmetic score for generator {g.name}",
    )


def qa_mean(g: Generator, sample: WeightedSample) -> float:
    """f⁻¹((1/n) Σ w_i f(x_i))"""
    for value, _ in sample.entries:
        if isinstance(value, str) or not g.interval.contains(float(value)):
            raise PreconditionError(f"observation {value!r} is outside {g.interval}")
    n = sample.size
    total = math.fsum(count * g.f(float(value)) for value, count in sample.entries)
    return g.f_inverse(total / n)


def huber_score(kappa: float) -> ScoreFamily:
    """ψ(x, t) = clamp(x − t, −κ, κ) - 포화 구간에서 평탄해질 수 있어 C 만 선언"""
    if not kappa > 0:
        raise ValueError(f"huber kappa must be > 0, got {kappa}")

    def psi(x: Observation, t: float) -> float:
        return min(max(_real(x) - t, -kappa), kappa)

    return ScoreFamily(
        name=f"huber:{kappa:g}",
        eval=psi,
        domain=ParameterInterval.real_line(),
        claims=frozenset({Claim.C}),
        description=f"clipped location score, kappa={kappa:g}",
    )


def arctan_score() -> ScoreFamily:
    def psi(x: Observation, t: float) -> float:
        return math.atan(_real(x) - t)

    return ScoreFamily(
        name="arctan",
        eval=psi,
        domain=ParameterInterval.real_line(),
        claims=frozenset({Claim.C, Claim.T, Claim.Z}),
        description="bounded smooth location score",
    )


def median_score() -> ScoreFamily:
    """ψ(x, t) = sign(x − t) - 짝수 분할에서 평탄 구간 발생 (반례)"""

    def psi(x: Observation, t: float) -> float:
        d = _real(x) - t
        return float((d > 0) - (d < 0))

    return ScoreFamily(
        name="median",
        eval=psi,
        domain=ParameterInterval.real_line(),
        claims=frozenset(),
        description="sign score; even splits leave a zero plateau",
    )


def step_score() -> ScoreFamily:
    """ψ(x, t) = +1 (t < x), −2 (t ≥ x) - T 이지만 Z 아님 (반례)"""

    def psi(x: Observation, t: float) -> float:
        return 1.0 if t < _real(x) else -2.0

    return ScoreFamily(
        name="step",
        eval=psi,
        domain=ParameterInterval.real_line(),
        claims=frozenset({Claim.T}),
        description="discontinuous score with a sign change but no zero",
    )


def table_score(table: PsiTable, name: str = "table") -> ScoreFamily:
    """PsiTable 을 가장 가까운 격자 열로 평가하는 ScoreFamily"""
    rows = {value: row for value, row in zip(table.observations, table.values)}

    def psi(x: Observation, t: float) -> float:
        try:
            row = rows[x]
        except KeyError:
            raise PreconditionError(f"observation {x!r} is not in the table alphabet") from None
        return row[table.nearest_index(t)]

    return ScoreFamily(
        name=name,
        eval=psi,
        domain=table.domain,
        claims=frozenset({Claim.T}),
        description=f"synthesized table over {len(table.observations)} symbols, "
                    f"{len(table.theta_grid)} grid points",
    )


class PsiCatalog(IPsiCatalog):
    """ψ-spec 미니 언어 해석기

    qa:id | qa:ln | qa:recip | qa:pow:<p> | huber:<kappa> | arctan | median | step | table:<path>
    """

    GENERATORS: dict[str, Callable[[], Generator]] = {
        "id": identity_generator,
        "ln": log_generator,
        "recip": reciprocal_generator,
    }

    SIMPLE: dict[str, Callable[[], ScoreFamily]] = {
        "arctan": arctan_score,
        "median": median_score,
        "step": step_score,
    }

    def __init__(self, table_store: Optional[IPsiTableStore] = None):
        self._table_store = table_store

    def parse(self, spec: str) -> ScoreFamily:
        text = spec.strip()
        head, _, rest = text.partition(":")

        if head == "table":
            return self._parse_table(rest)
        if head in self.SIMPLE and not rest:
            return self.SIMPLE[head]()
        if head == "huber":
            return huber_score(self._number(rest, spec))
        if head == "qa":
            return qa_score(self.parse_generator(rest))
        raise PsiSpecError(f"unknown psi spec: {spec!r}")

    def parse_generator(self, spec: str) -> Generator:
        """'id' | 'ln' | 'recip' | 'pow:<p>'"""
        name, _, param = spec.partition(":")
        if name in self.GENERATORS and not param:
            generator = self.GENERATORS[name]()
        elif name == "pow":
            p = self._number(param, spec)
            if p == 0:
                raise PsiSpecError("qa:pow:0 is not strictly monotone")
            generator = power_generator(p)
        else:
            raise PsiSpecError(f"unknown generator: {spec!r}")

        try:
            generator.validate()
        except (ValueError, ArithmeticError) as e:
            raise PsiSpecError(f"generator {spec!r} is unusable: {e}") from e
        return generator

    def list_families(self) -> list[ScoreFamily]:
        return [
            qa_score(identity_generator()),
            qa_score(log_generator()),
            qa_score(reciprocal_generator()),
            qa_score(power_generator(2.0)),
            huber_score(1.0),
            arctan_score(),
            median_score(),
            step_score(),
        ]

    def _parse_table(self, path: str) -> ScoreFamily:
        if not path:
            raise PsiSpecError("table spec needs a path: table:<path>")
        if self._table_store is None:
            raise PsiSpecError("no table store configured for table specs")
        try:
            table = self._table_store.load(path)
        except TableFormatError:
            raise
        except OSError as e:
            raise PsiSpecError(f"cannot read table {path}: {e}") from e
        logger.info(f"loaded psi table {path} ({len(table.observations)} symbols)")
        return table_score(table, name=f"table:{path}")

    @staticmethod
    def _number(text: str, spec: str) -> float:
        try:
            value = float(text)
        except ValueError:
            raise PsiSpecError(f"malformed parameter in {spec!r}") from None
        if not math.isfinite(value):
            raise PsiSpecError(f"parameter must be finite in {spec!r}")
        return value
