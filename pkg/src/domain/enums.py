from enum import Enum


class Claim(Enum):
    """스코어 함수가 선언하는 성질"""
    C = "C"     # 두 번째 변수에 대해 연속
    T = "T"     # 모든 표본에서 감소형 부호 변화점 존재
    Z = "Z"     # 부호 변화점에서 스코어 합이 0


class SignChangeStatus(Enum):
    """부호 변화점 탐색 결과 상태"""
    LOCATED = "Located"
    EXACT_ZERO = "ExactZero"
    PLATEAU = "Plateau"
    NO_BRACKET = "NoBracket"


class Verdict(Enum):
    """공리 검사 판정"""
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"


class Monotonicity(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class Provenance(Enum):
    """추정량 오라클의 출처"""
    FROM_SCORE_FAMILY = "from-score-family"
    FROM_TABLE = "from-table"
    BUILTIN = "builtin"


class Membership(Enum):
    """수준 집합 A_t / B_t 소속"""
    IN_A = "InA"
    IN_B = "InB"
    BOUNDARY = "Boundary"


class Axiom(Enum):
    """검사 가능한 공리 및 성질"""
    SYMMETRY = "symmetry"
    INTERNALITY = "internality"
    STRICT_INTERNALITY = "strict-internality"
    ASYMPTOTIC_IDEMPOTENCY = "asymptotic-idempotency"
    IDEMPOTENCY = "idempotency"
    T_PROPERTY = "t-property"
    Z_PROPERTY = "z-property"
    RANGE_COVERAGE = "range-coverage"
    # 준산술평균 (Kolmogorov 공리계)
    STRICT_MONOTONICITY = "strict-monotonicity"
    CONTINUITY = "continuity"
    REFLEXIVITY = "reflexivity"
    REPLACEMENT = "replacement"
    GENERATOR_EQUIVALENCE = "generator-equivalence"
    # 반군 모델
    SEMIGROUP_CLOSURE = "semigroup-closure"


class Command(Enum):
    ESTIMATE = "estimate"
    AUDIT = "audit"
    KOLMOGOROV = "kolmogorov"
    DIAGNOSE = "diagnose"
    SYNTHESIZE = "synthesize"
    CATALOG = "catalog"


class DiagnoseKind(Enum):
    RATIO = "ratio"
    ZLIMITS = "zlimits"
    SEMIGROUP = "semigroup"


class ReportFormat(Enum):
    JSON = "json"
    CSV = "csv"


class Outcome(Enum):
    """실행 결과 - 종료 코드에 대응"""
    SUCCESS = 0
    ERROR = 1
    FALSIFIED = 2
