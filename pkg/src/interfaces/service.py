from abc import ABC, abstractmethod
from typing import Callable, Optional, Sequence

from domain.models import (
    AxiomReport,
    CoreProbeResult,
    EstimateReport,
    EstimatorOracle,
    InfeasibilityCertificate,
    Observation,
    ParameterInterval,
    PsiTable,
    RatioDiagnostic,
    RunConfig,
    RunReport,
    SamplerConfig,
    ScoreFamily,
    SignChangeResult,
    SignProfile,
    SynthesisVerification,
    Tolerances,
    WeightedSample,
    ZLimitReport,
)
from domain.enums import Membership

RealFunction = Callable[[float], float]


class ISignChangeFinder(ABC):
    """감소형 부호 변화점 탐색 인터페이스"""

    @abstractmethod
    def bracket_sign_change(
        self,
        f: RealFunction,
        domain: ParameterInterval,
        seed: Optional[float] = None,
        tol: Optional[Tolerances] = None,
    ) -> tuple[float, float]:
        """f(a) > 0 > f(b) 인 a < b 탐색"""
        pass

    @abstractmethod
    def find_sign_change(
        self,
        f: RealFunction,
        domain: ParameterInterval,
        seed: Optional[float] = None,
        tol: Optional[Tolerances] = None,
    ) -> SignChangeResult:
        """부호 변화점 위치 결정"""
        pass

    @abstractmethod
    def sign_profile(
        self, f: RealFunction, grid: Sequence[float], zero_tol: Optional[float] = None
    ) -> SignProfile:
        """격자 위 수준 집합 분할"""
        pass


class IPsiCatalog(ABC):
    """스코어 함수 카탈로그 인터페이스"""

    @abstractmethod
    def parse(self, spec: str) -> ScoreFamily:
        """ψ-spec 문자열을 ScoreFamily 로 해석"""
        pass

    @abstractmethod
    def list_families(self) -> list[ScoreFamily]:
        """기본 카탈로그 목록"""
        pass


class IEstimator(ABC):
    """일반화 ψ-추정 인터페이스"""

    @abstractmethod
    def score_sum(self, psi: ScoreFamily, sample: WeightedSample, t: float) -> float:
        """Σ mult·ψ(x, t)"""
        pass

    @abstractmethod
    def estimate(
        self, psi: ScoreFamily, sample: WeightedSample, tol: Optional[Tolerances] = None
    ) -> EstimateReport:
        """스코어 합의 부호 변화점"""
        pass

    @abstractmethod
    def homomorphism_residual(
        self, psi: ScoreFamily, a: WeightedSample, b: WeightedSample, t: float
    ) -> float:
        """|F_t(a⊕b) − F_t(a) − F_t(b)|"""
        pass

    @abstractmethod
    def as_oracle(self, psi: ScoreFamily, tol: Optional[Tolerances] = None) -> EstimatorOracle:
        """ScoreFamily 를 추정량 오라클로 감싸기"""
        pass


class IAxiomLab(ABC):
    """공리 검사 인터페이스"""

    @abstractmethod
    def check_symmetry(self, oracle: EstimatorOracle, cfg: SamplerConfig) -> AxiomReport:
        """대칭성"""
        pass

    @abstractmethod
    def check_internality(
        self, oracle: EstimatorOracle, cfg: SamplerConfig, strict: bool = False
    ) -> AxiomReport:
        """(엄격) 내부성"""
        pass

    @abstractmethod
    def check_asymptotic_idempotency(
        self,
        oracle: EstimatorOracle,
        block: WeightedSample,
        y: Observation,
        schedule: Optional[Sequence[int]] = None,
        tolerance: float = 1e-3,
    ) -> AxiomReport:
        """점근적 멱등성"""
        pass

    @abstractmethod
    def kolmogorov_suite(
        self, oracle: EstimatorOracle, cfg: SamplerConfig
    ) -> list[AxiomReport]:
        """Kolmogorov 공리계 검사"""
        pass


class IRatioAnalyzer(ABC):
    """비율 함수 진단 인터페이스"""

    @abstractmethod
    def ratio_fn(
        self, psi: ScoreFamily, x_block: WeightedSample, y_block: WeightedSample, t: float
    ) -> float:
        """-ψ_x(t) / ψ_y(t)"""
        pass

    @abstractmethod
    def audit_ratio(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y_block: WeightedSample,
        grid_size: int = 100,
        tol: Optional[Tolerances] = None,
    ) -> RatioDiagnostic:
        """비율 함수의 양수성 / 단조성 / 연속성 진단"""
        pass

    @abstractmethod
    def normalize_psi(
        self, psi_star: ScoreFamily, u: Observation, v: Observation
    ) -> ScoreFamily:
        """기준점 u, v 로 정규화"""
        pass

    @abstractmethod
    def z_via_ratio_limits(
        self,
        psi: ScoreFamily,
        x_block: WeightedSample,
        y: Observation,
        tol: float = 1e-8,
    ) -> ZLimitReport:
        """단측 극한으로 Z 성질 확인"""
        pass


class ISemigroupModel(ABC):
    """자유 가환 반군 모델 인터페이스"""

    @abstractmethod
    def mu(self, oracle: EstimatorOracle, sample: WeightedSample) -> float:
        """μ(s) = M(s)"""
        pass

    @abstractmethod
    def level_membership(
        self, oracle: EstimatorOracle, sample: WeightedSample, t: float, tol: float = 1e-9
    ) -> Membership:
        """A_t / B_t / 경계 판정"""
        pass

    @abstractmethod
    def closure_probe(
        self,
        oracle: EstimatorOracle,
        t: float,
        cfg: SamplerConfig,
    ) -> AxiomReport:
        """A_t, B_t 의 ⊕ 닫힘 검사"""
        pass

    @abstractmethod
    def core_probe(
        self,
        oracle: EstimatorOracle,
        t: float,
        a: WeightedSample,
        s: WeightedSample,
        n_max: int = 10_000,
    ) -> CoreProbeResult:
        """na ⊕ s ∈ A_t 인 최소 n"""
        pass

    @abstractmethod
    def enumerate_multisets(
        self, alphabet: Sequence[Observation], max_size: int
    ) -> list[WeightedSample]:
        """크기 1..N 인 모든 다중집합"""
        pass


class IPsiSynthesizer(ABC):
    """LP 기반 ψ 합성 인터페이스"""

    @abstractmethod
    def synthesize_psi(
        self,
        oracle: EstimatorOracle,
        alphabet: Sequence[Observation],
        theta_grid: Sequence[float],
        max_size: int,
        boundary_tol: float = 1e-9,
    ) -> PsiTable | InfeasibilityCertificate:
        """격자 점마다 분리 LP 풀이"""
        pass

    @abstractmethod
    def verify_synthesis(
        self,
        table: PsiTable,
        oracle: EstimatorOracle,
        alphabet: Sequence[Observation],
        max_size: int,
    ) -> SynthesisVerification:
        """합성된 표의 부호 조건 전수 검사"""
        pass


class IServiceFacade(ABC):
    """서비스 퍼사드 인터페이스"""

    @abstractmethod
    def run(self, config: RunConfig) -> RunReport:
        """실행 구성 하나를 처리하고 보고서 반환"""
        pass
