import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence, Union

from .enums import (
    Axiom,
    Claim,
    Command,
    DiagnoseKind,
    Membership,
    Monotonicity,
    Outcome,
    Provenance,
    ReportFormat,
    SignChangeStatus,
    Verdict,
)

# 관측값: 실수 스칼라(정수/유리수/부동소수) 또는 유한 알파벳 기호
Observation = Union[int, float, Fraction, str]


def observation_key(x: Observation) -> tuple:
    """정준 정렬 키 - 수치형 먼저, 기호는 그 뒤"""
    if isinstance(x, bool):
        raise TypeError("bool is not a valid observation")
    if isinstance(x, str):
        return (1, 0, x)
    return (0, x, "")


def observation_to_json(x: Observation) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    return x


def _format_bound(value: float) -> str:
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return repr(value)


@dataclass(frozen=True)
class ParameterInterval:
    """모수 공간 Θ - 양 끝이 열린 비퇴화 구간 (±inf 허용)"""
    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval ({self.lo}, {self.hi})")

    @staticmethod
    def real_line() -> "ParameterInterval":
        return ParameterInterval(-math.inf, math.inf)

    @staticmethod
    def from_string(text: str) -> "ParameterInterval":
        """'lo:hi' 형식 (-inf / inf 허용, 로케일 무관)"""
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError(f"interval must look like lo:hi, got {text!r}")
        return ParameterInterval(_parse_bound(parts[0]), _parse_bound(parts[1]))

    @property
    def bounded_below(self) -> bool:
        return math.isfinite(self.lo)

    @property
    def bounded_above(self) -> bool:
        return math.isfinite(self.hi)

    def contains(self, t: float) -> bool:
        return self.lo < t < self.hi

    def default_seed(self) -> float:
        """유계이면 중점, 아니면 0 을 구간 안으로 끌어들인 값"""
        if self.bounded_below and self.bounded_above:
            return self.lo + (self.hi - self.lo) / 2
        if self.contains(0.0):
            return 0.0
        if self.bounded_below:
            return self.lo + 1.0
        return self.hi - 1.0

    def interior_grid(self, size: int) -> tuple[float, ...]:
        """유계 구간 내부의 등간격 격자 lo + (hi-lo)k/(K+1), k=1..K"""
        if not (self.bounded_below and self.bounded_above):
            raise ValueError("interior grid requires a bounded interval")
        if size < 1:
            raise ValueError("grid size must be >= 1")
        width = self.hi - self.lo
        return tuple(self.lo + width * k / (size + 1) for k in range(1, size + 1))

    def to_dict(self) -> dict:
        return {"lo": _format_bound(self.lo), "hi": _format_bound(self.hi)}

    @staticmethod
    def from_dict(data: dict) -> "ParameterInterval":
        return ParameterInterval(_parse_bound(str(data["lo"])), _parse_bound(str(data["hi"])))


def _parse_bound(text: str) -> float:
    token = text.strip().lower()
    if token in ("inf", "+inf"):
        return math.inf
    if token == "-inf":
        return -math.inf
    return float(token)


@dataclass(frozen=True)
class WeightedSample:
    """양의 정수 중복도를 가진 관측값 다중집합 - 자유 가환 반군 S(X) 의 원소

    entries 는 항상 정준형(관측값 기준 정렬, 중복 병합)으로 저장된다.
    """
    entries: tuple[tuple[Observation, int], ...]

    def __post_init__(self):
        merged: dict[Observation, int] = {}
        for value, count in self.entries:
            if isinstance(count, bool) or not isinstance(count, int):
                raise ValueError(f"multiplicity must be an integer, got {count!r}")
            if count < 1:
                raise ValueError(f"multiplicity must be >= 1, got {count}")
            observation_key(value)
            merged[value] = merged.get(value, 0) + count
        if not merged:
            raise ValueError("sample must contain at least one observation")
        canonical = tuple(sorted(merged.items(), key=lambda item: observation_key(item[0])))
        object.__setattr__(self, "entries", canonical)

    @staticmethod
    def of(*values: Observation) -> "WeightedSample":
        """순서 있는 관측값 나열로부터 생성 (순서는 버려짐)"""
        return WeightedSample(tuple((v, 1) for v in values))

    @staticmethod
    def from_counts(counts: Mapping[Observation, int]) -> "WeightedSample":
        return WeightedSample(tuple(counts.items()))

    @property
    def size(self) -> int:
        return sum(count for _, count in self.entries)

    @property
    def distinct(self) -> tuple[Observation, ...]:
        return tuple(value for value, _ in self.entries)

    @property
    def is_numeric(self) -> bool:
        return all(not isinstance(value, str) for value, _ in self.entries)

    def multiplicity(self, value: Observation) -> int:
        for v, count in self.entries:
            if v == value:
                return count
        return 0

    def concat(self, other: "WeightedSample") -> "WeightedSample":
        """⊕ - 관측값별 중복도 합"""
        return WeightedSample(self.entries + other.entries)

    def replicate(self, n: int) -> "WeightedSample":
        """na := a ⊕ ... ⊕ a (n 번)"""
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f"replication factor must be a positive integer, got {n!r}")
        return WeightedSample(tuple((value, count * n) for value, count in self.entries))

    def expand(self) -> list[Observation]:
        """정준 순서로 펼친 관측값 목록"""
        return [value for value, count in self.entries for _ in range(count)]

    def weighted_mean(self) -> float:
        """수치형 표본의 중복도 가중 평균"""
        n = self.size
        return math.fsum(float(value) * count for value, count in self.entries) / n

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"value": observation_to_json(value), "count": count}
                for value, count in self.entries
            ],
            "size": self.size,
        }

    def __str__(self) -> str:
        inner = ", ".join(f"{value}:x{count}" for value, count in self.entries)
        return "{" + inner + "}"


def concat(a: WeightedSample, b: WeightedSample) -> WeightedSample:
    return a.concat(b)


def replicate(a: WeightedSample, n: int) -> WeightedSample:
    return a.replicate(n)


@dataclass(frozen=True)
class Tolerances:
    """수치 허용 오차 및 반복 상한"""
    bracket_growth: float = 2.0
    root_abs_tol: float = 1e-12
    plateau_width_tol: float = 1e-9
    zero_tol: float = 1e-10
    max_bracket_steps: int = 200
    max_bisect_steps: int = 200

    def __post_init__(self):
        if not self.bracket_growth > 1:
            raise ValueError("bracket_growth must be > 1")
        for name in ("root_abs_tol", "plateau_width_tol", "zero_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_bracket_steps < 1 or self.max_bisect_steps < 1:
            raise ValueError("step limits must be >= 1")

    def with_overrides(self, **overrides: Any) -> "Tolerances":
        values = self.to_dict()
        for key, value in overrides.items():
            if key not in values:
                raise ValueError(f"unknown tolerance key: {key}")
            values[key] = type(values[key])(value)
        return Tolerances(**values)

    def to_dict(self) -> dict:
        return {
            "bracket_growth": self.bracket_growth,
            "root_abs_tol": self.root_abs_tol,
            "plateau_width_tol": self.plateau_width_tol,
            "zero_tol": self.zero_tol,
            "max_bracket_steps": self.max_bracket_steps,
            "max_bisect_steps": self.max_bisect_steps,
        }


@dataclass(frozen=True)
class ScoreFamily:
    """ψ(x, t) 와 선언된 성질 - eval 은 순수 함수여야 한다"""
    name: str
    eval: Callable[[Observation, float], float]
    domain: ParameterInterval
    claims: frozenset[Claim] = frozenset()
    description: str = ""

    def __call__(self, x: Observation, t: float) -> float:
        return self.eval(x, t)

    def has(self, claim: Claim) -> bool:
        return claim in self.claims

    def claim_names(self) -> list[str]:
        return sorted(c.value for c in self.claims)


@dataclass(frozen=True)
class EstimatorOracle:
    """블랙박스 추정량 M - 다중집합 위에서 평가 (구성상 대칭)

    list_eval 이 있으면 순서 있는 목록도 받을 수 있는 오라클이다.
    """
    name: str
    eval: Callable[[WeightedSample], float]
    provenance: Provenance
    domain: ParameterInterval = field(default_factory=ParameterInterval.real_line)
    list_eval: Optional[Callable[[Sequence[Observation]], float]] = None

    def __call__(self, sample: WeightedSample) -> float:
        return self.eval(sample)

    @property
    def is_list_oracle(self) -> bool:
        return self.list_eval is not None

    def on_list(self, values: Sequence[Observation]) -> float:
        if self.list_eval is not None:
            return self.list_eval(values)
        return self.eval(WeightedSample.of(*values))


@dataclass(frozen=True)
class SignChangeResult:
    """감소형 부호 변화점 탐색 결과"""
    theta: float
    bracket: tuple[float, float]
    residual_at_theta: float
    evaluations: int
    status: SignChangeStatus
    plateau: Optional[tuple[float, float]] = None
    probes: tuple[tuple[float, float], ...] = ()
    # 부동소수 간격 때문에 b − a ≤ root_abs_tol 에 닿지 못함
    resolution_limited: bool = False

    @property
    def width(self) -> float:
        return self.bracket[1] - self.bracket[0]

    def to_dict(self) -> dict:
        data = {
            "theta": self.theta,
            "bracket": list(self.bracket),
            "residual_at_theta": self.residual_at_theta,
            "evaluations": self.evaluations,
            "status": self.status.value,
        }
        if self.resolution_limited:
            data["resolution_limited"] = True
        if self.plateau is not None:
            data["plateau"] = list(self.plateau)
        if self.status == SignChangeStatus.NO_BRACKET:
            data["probes"] = [list(p) for p in self.probes]
        return data


@dataclass(frozen=True)
class SignProfile:
    """격자 위 수준 집합 Θ_{f>0}, Θ_{f=0}, Θ_{f<0} 의 인덱스 분할"""
    positive: tuple[int, ...]
    zero: tuple[int, ...]
    negative: tuple[int, ...]
    decreasing_type: bool


@dataclass(frozen=True)
class EstimateReport:
    """일반화 ψ-추정값"""
    theta: float
    sign_change: SignChangeResult
    z_residual: float
    n: int
    psi_name: str = ""
    claim_violation: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "psi": self.psi_name,
            "theta": self.theta,
            "z_residual": self.z_residual,
            "n": self.n,
            "claim_violation": self.claim_violation,
            "sign_change": self.sign_change.to_dict(),
        }


@dataclass(frozen=True)
class SamplerConfig:
    """무작위 표본 추출 설정 (pool 또는 pool_range 중 하나 필수)"""
    seed: int = 0
    pool: tuple[Observation, ...] = ()
    pool_range: Optional[tuple[float, float]] = None
    max_block: int = 5
    trials: int = 200
    tolerance: float = 1e-9
    min_trials: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_block < 1:
            raise ValueError("max_block must be >= 1")
        if not self.pool and self.pool_range is None:
            raise ValueError("sampler needs a nonempty pool or a pool_range")
        if self.pool_range is not None:
            lo, hi = self.pool_range
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError("pool_range must be a finite nondegenerate range")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "pool": [observation_to_json(x) for x in self.pool],
            "pool_range": list(self.pool_range) if self.pool_range else None,
            "max_block": self.max_block,
            "trials": self.trials,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class Witness:
    """공리 위반의 구체적 반례 - 위반된 관계의 양변 포함"""
    trial: int
    inputs: dict
    lhs: float
    rhs: float
    violation: float
    relation: str = ""

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "violation": self.violation,
            "relation": self.relation,
        }


@dataclass(frozen=True)
class AxiomReport:
    """공리 하나에 대한 경험적 판정"""
    axiom: Axiom
    verdict: Verdict
    trials: int
    witnesses: tuple[Witness, ...] = ()
    max_violation: float = 0.0
    config: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict == Verdict.FAIL and not self.witnesses:
            raise ValueError("a Fail verdict needs at least one witness")

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom.value,
            "verdict": self.verdict.value,
            "trials": self.trials,
            "max_violation": self.max_violation,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "config": self.config,
            "metrics": self.metrics,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class RatioDiagnostic:
    """비율 함수 f_{x,y}(t) = -ψ_x(t)/ψ_y(t) 의 격자 진단"""
    x_block: WeightedSample
    y_block: WeightedSample
    x_estimate: float
    domain_gap: float
    expected_direction: Monotonicity
    grid: tuple[float, ...]
    values: tuple[float, ...]
    positive_on_gap_interval: bool
    monotone_on_gap_interval: bool
    continuity_consistent: bool
    max_jump: float
    max_jump_refined: float
    monotonicity_witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "x_block": self.x_block.to_dict(),
            "y_block": self.y_block.to_dict(),
            "x_estimate": self.x_estimate,
            "domain_gap": self.domain_gap,
            "expected_direction": self.expected_direction.value,
            "grid": list(self.grid),
            "values": list(self.values),
            "positive_on_gap_interval": self.positive_on_gap_interval,
            "monotone_on_gap_interval": self.monotone_on_gap_interval,
            "continuity_consistent": self.continuity_consistent,
            "max_jump": self.max_jump,
            "max_jump_refined": self.max_jump_refined,
            "monotonicity_witness": self.monotonicity_witness,
        }


@dataclass(frozen=True)
class ZLimitReport:
    """θ̂ 에서 비율 함수의 단측 극한 추정"""
    theta_hat: float
    steps: tuple[float, ...]
    left_values: tuple[float, ...]
    right_values: tuple[float, ...]
    direct_residual: float
    z_consistent: bool

    @property
    def left_limit(self) -> float:
        return self.left_values[-1]

    @property
    def right_limit(self) -> float:
        return self.right_values[-1]

    def to_dict(self) -> dict:
        return {
            "theta_hat": self.theta_hat,
            "left_limit": self.left_limit,
            "right_limit": self.right_limit,
            "direct_residual": self.direct_residual,
            "z_consistent": self.z_consistent,
            "steps": list(self.steps),
        }


@dataclass(frozen=True)
class CoreProbeResult:
    """na ⊕ s ∈ A_t 가 되는 최소 n (없으면 unresolved)"""
    n: Optional[int]
    n_max: int

    @property
    def resolved(self) -> bool:
        return self.n is not None


@dataclass(frozen=True)
class PsiTable:
    """합성된 ψ 의 격자 표현 - values[i][j] = ψ(observations[i], theta_grid[j])

    방향 규약: 감소형 (추정값 왼쪽 양수, 오른쪽 음수).
    """
    observations: tuple[Observation, ...]
    theta_grid: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]
    margins: tuple[float, ...]
    domain: ParameterInterval
    boundary_tol: float = 1e-9
    orientation: str = "decreasing-type"
    max_size: int = 0

    def __post_init__(self):
        if len(self.values) != len(self.observations):
            raise ValueError("one row per observation is required")
        if any(len(row) != len(self.theta_grid) for row in self.values):
            raise ValueError("every row must cover the whole theta grid")
        if len(self.margins) != len(self.theta_grid):
            raise ValueError("one margin per grid point is required")
        if any(b <= a for a, b in zip(self.theta_grid, self.theta_grid[1:])):
            raise ValueError("theta grid must be strictly increasing")
        if any(m < 0 for m in self.margins):
            raise ValueError("margins must be non-negative")

    def row(self, x: Observation) -> tuple[float, ...]:
        for value, row in zip(self.observations, self.values):
            if value == x:
                return row
        raise KeyError(f"observation {x!r} is not covered by the table")

    def nearest_index(self, t: float) -> int:
        """t 에 가장 가까운 격자 인덱스 (동률이면 왼쪽)"""
        best = 0
        for j, g in enumerate(self.theta_grid):
            if abs(g - t) < abs(self.theta_grid[best] - t):
                best = j
        return best

    def score_sum(self, sample: WeightedSample, j: int) -> float:
        return math.fsum(count * self.row(value)[j] for value, count in sample.entries)

    def with_value(self, x: Observation, j: int, value: float) -> "PsiTable":
        """한 칸을 바꾼 사본"""
        rows = []
        for obs, row in zip(self.observations, self.values):
            if obs == x:
                row = row[:j] + (value,) + row[j + 1:]
            rows.append(row)
        return PsiTable(
            observations=self.observations,
            theta_grid=self.theta_grid,
            values=tuple(rows),
            margins=self.margins,
            domain=self.domain,
            boundary_tol=self.boundary_tol,
            orientation=self.orientation,
            max_size=self.max_size,
        )


@dataclass(frozen=True)
class CombinationTerm:
    sample: WeightedSample
    side: Membership
    weight: int

    def to_dict(self) -> dict:
        return {"sample": self.sample.to_dict(), "side": self.side.value, "weight": self.weight}


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """분리 불가능 증명서 - A_t 원소들의 가중 ⊕ 가 B_t 원소들의 가중 ⊕ 와 같다

    가법적 F_t 에 대해 좌변은 음수, 우변은 양수여야 하므로 모순이다.
    """
    t: float
    combination: tuple[CombinationTerm, ...]

    def side_total(self, side: Membership) -> dict[Observation, int]:
        total: dict[Observation, int] = {}
        for term in self.combination:
            if term.side != side:
                continue
            for value, count in term.sample.entries:
                total[value] = total.get(value, 0) + term.weight * count
        return total

    def recheck(self) -> bool:
        """정수 산술로 모순 재검증"""
        if any(term.weight < 0 for term in self.combination):
            return False
        lhs = self.side_total(Membership.IN_A)
        rhs = self.side_total(Membership.IN_B)
        return bool(lhs) and lhs == rhs

    def describe(self) -> str:
        def side_text(side: Membership) -> str:
            parts = [f"{t.weight}·{t.sample}" for t in self.combination if t.side == side]
            return " ⊕ ".join(parts)

        return (
            f"{side_text(Membership.IN_A)} (in A_t) = "
            f"{side_text(Membership.IN_B)} (in B_t) at t={self.t}"
        )

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "combination": [term.to_dict() for term in self.combination],
            "witness": self.describe(),
            "rechecked": self.recheck(),
        }


@dataclass(frozen=True)
class SynthesisViolation:
    sample: WeightedSample
    grid_index: int
    t: float
    expected_sign: int
    score_sum: float


@dataclass(frozen=True)
class SynthesisVerification:
    """합성된 표의 부호 조건 전수 검사 결과"""
    checked: int
    boundary_skipped: int
    violations: tuple[SynthesisViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def violating_grid_points(self) -> tuple[int, ...]:
        return tuple(sorted({v.grid_index for v in self.violations}))

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "boundary_skipped": self.boundary_skipped,
            "violations": [
                {
                    "sample": v.sample.to_dict(),
                    "t": v.t,
                    "expected_sign": v.expected_sign,
                    "score_sum": v.score_sum,
                }
                for v in self.violations
            ],
            "passed": self.passed,
        }


@dataclass(frozen=True)
class RunConfig:
    """CLI 한 번 실행의 구성"""
    command: Command
    psi_spec: Optional[str] = None
    mean_name: Optional[str] = None
    data_path: Optional[str] = None
    theta_interval: Optional[ParameterInterval] = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    sampler: Optional[SamplerConfig] = None
    output_path: Optional[str] = None
    format: ReportFormat = ReportFormat.JSON
    axioms: tuple[Axiom, ...] = ()
    diagnose_kind: Optional[DiagnoseKind] = None
    x_block: Optional[WeightedSample] = None
    y_block: Optional[WeightedSample] = None
    t: Optional[float] = None
    grid_size: int = 100
    alphabet: tuple[Observation, ...] = ()
    max_size: int = 0
    table_path: str = "psi_table.json"

    FIELDS = (
        "command", "psi_spec", "mean_name", "data_path", "theta_interval", "tolerances",
        "sampler", "output_path", "format", "axioms", "diagnose_kind", "x_block",
        "y_block", "t", "grid_size", "alphabet", "max_size", "table_path",
    )

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """알 수 없는 키는 거부"""
        unknown = set(data) - set(cls.FIELDS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def validate(self) -> None:
        """명령별 필수 항목 검사"""
        from .errors import ConfigError

        needs_oracle = self.psi_spec is None and self.mean_name is None
        if self.command == Command.ESTIMATE:
            if not self.psi_spec or not self.data_path:
                raise ConfigError("estimate requires --psi and --data")
        elif self.command == Command.AUDIT:
            if needs_oracle:
                raise ConfigError("audit requires --psi or --mean")
        elif self.command == Command.KOLMOGOROV:
            if needs_oracle:
                raise ConfigError("kolmogorov requires --mean or --psi")
            interval = self.theta_interval
            if interval is None or not (interval.bounded_below and interval.bounded_above):
                raise ConfigError("kolmogorov requires a compact --interval lo:hi")
        elif self.command == Command.DIAGNOSE:
            if self.diagnose_kind is None:
                raise ConfigError("diagnose requires ratio|zlimits|semigroup")
            if self.x_block is None or self.y_block is None:
                raise ConfigError("diagnose requires --x and --y blocks")
            if self.diagnose_kind == DiagnoseKind.SEMIGROUP:
                if needs_oracle:
                    raise ConfigError("diagnose semigroup requires --mean or --psi")
            elif not self.psi_spec:
                raise ConfigError("diagnose ratio|zlimits requires --psi")
        elif self.command == Command.SYNTHESIZE:
            if not self.mean_name:
                raise ConfigError("synthesize requires --mean")
            if not self.alphabet or self.max_size < 1 or self.grid_size < 1:
                raise ConfigError("synthesize requires --alphabet, --max-size and --grid")


@dataclass
class RunReport:
    """구조화된 실행 보고서"""
    command: str
    inputs: dict
    version: str
    tolerances: dict
    verdicts: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    outcome: Outcome = Outcome.SUCCESS
    timing: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return self.outcome.value

    def body(self) -> dict:
        """타이밍을 제외한 결정적 본문"""
        return {
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "metrics": self.metrics,
            "tolerances": self.tolerances,
            "outcome": self.outcome.name.lower(),
            "exit_code": self.exit_code,
            "version": self.version,
        }

    def to_dict(self) -> dict:
        data = self.body()
        data["timing"] = self.timing
        return data


def verdict_of(reports: Iterable[AxiomReport]) -> Outcome:
    return (
        Outcome.FALSIFIED
        if any(r.verdict == Verdict.FAIL for r in reports)
        else Outcome.SUCCESS
    )
