import os
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

from domain.models import Observation, SamplerConfig, Tolerances

load_dotenv()

APP_VERSION = "0.1.0"


@dataclass
class Settings:
    """애플리케이션 설정"""

    # 부호 변화점 탐색 허용 오차
    bracket_growth: float = field(
        default_factory=lambda: float(os.getenv("PSI_BRACKET_GROWTH", "2.0"))
    )
    root_abs_tol: float = field(
        default_factory=lambda: float(os.getenv("PSI_ROOT_ABS_TOL", "1e-12"))
    )
    plateau_width_tol: float = field(
        default_factory=lambda: float(os.getenv("PSI_PLATEAU_WIDTH_TOL", "1e-9"))
    )
    zero_tol: float = field(
        default_factory=lambda: float(os.getenv("PSI_ZERO_TOL", "1e-10"))
    )
    max_bracket_steps: int = field(
        default_factory=lambda: int(os.getenv("PSI_MAX_BRACKET_STEPS", "200"))
    )
    max_bisect_steps: int = field(
        default_factory=lambda: int(os.getenv("PSI_MAX_BISECT_STEPS", "200"))
    )

    # 공리 검사 (표본 추출)
    seed: int = field(default_factory=lambda: int(os.getenv("PSI_SEED", "0")))
    trials: int = field(default_factory=lambda: int(os.getenv("PSI_TRIALS", "200")))
    max_block: int = field(default_factory=lambda: int(os.getenv("PSI_MAX_BLOCK", "5")))
    axiom_tol: float = field(
        default_factory=lambda: float(os.getenv("PSI_AXIOM_TOL", "1e-9"))
    )

    # 합성 (LP)
    boundary_tol: float = field(
        default_factory=lambda: float(os.getenv("PSI_BOUNDARY_TOL", "1e-9"))
    )
    max_multisets: int = field(
        default_factory=lambda: int(os.getenv("PSI_MAX_MULTISETS", "1000000"))
    )
    n_jobs: int = field(default_factory=lambda: int(os.getenv("PSI_N_JOBS", "1")))

    # 출력
    log_level: str = field(default_factory=lambda: os.getenv("PSI_LOG_LEVEL", "WARNING"))
    report_format: str = field(
        default_factory=lambda: os.getenv("PSI_REPORT_FORMAT", "json")
    )

    @classmethod
    def from_env(cls) -> "Settings":
        """환경 변수로부터 설정 로드"""
        return cls()

    def apply_overrides(self, overrides: dict[str, str]) -> None:
        """--tol k=v 형식의 덮어쓰기 적용 (알 수 없는 키는 거부)"""
        for key, raw in overrides.items():
            if not hasattr(self, key):
                raise ValueError(f"unknown setting: {key}")
            current = getattr(self, key)
            setattr(self, key, type(current)(raw))

    def validate(self) -> None:
        """설정 유효성 검사"""
        if not self.bracket_growth > 1:
            raise ValueError("PSI_BRACKET_GROWTH must be > 1")
        for name in ("root_abs_tol", "plateau_width_tol", "zero_tol", "boundary_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.axiom_tol < 0:
            raise ValueError("PSI_AXIOM_TOL must be non-negative")
        if self.max_bracket_steps < 1 or self.max_bisect_steps < 1:
            raise ValueError("step limits must be >= 1")
        if self.trials < 1:
            raise ValueError("PSI_TRIALS must be >= 1")
        if self.max_block < 1:
            raise ValueError("PSI_MAX_BLOCK must be >= 1")
        if self.max_multisets < 1:
            raise ValueError("PSI_MAX_MULTISETS must be >= 1")
        if self.n_jobs == 0:
            raise ValueError("PSI_N_JOBS must not be 0")
        if self.report_format not in ("json", "csv"):
            raise ValueError("PSI_REPORT_FORMAT must be json or csv")

    def tolerances(self) -> Tolerances:
        return Tolerances(
            bracket_growth=self.bracket_growth,
            root_abs_tol=self.root_abs_tol,
            plateau_width_tol=self.plateau_width_tol,
            zero_tol=self.zero_tol,
            max_bracket_steps=self.max_bracket_steps,
            max_bisect_steps=self.max_bisect_steps,
        )

    def sampler(
        self,
        pool: tuple[Observation, ...] = (),
        pool_range: Optional[tuple[float, float]] = None,
    ) -> SamplerConfig:
        """현재 설정으로 SamplerConfig 생성"""
        return SamplerConfig(
            seed=self.seed,
            pool=pool,
            pool_range=pool_range,
            max_block=self.max_block,
            trials=self.trials,
            tolerance=self.axiom_tol,
        )
