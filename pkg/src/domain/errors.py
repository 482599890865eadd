from typing import Any, Optional


class PsiEstimatorError(Exception):
    """모든 도메인 오류의 기반 클래스"""


class ConfigError(PsiEstimatorError):
    """설정 / 실행 구성 오류"""


class PreconditionError(PsiEstimatorError):
    """연산의 사전 조건 위반"""


class SignChangeError(PsiEstimatorError):
    """부호 변화점 탐색 실패 (구조화된 결과 포함)"""

    def __init__(self, message: str, result: Any, sample: Optional[Any] = None):
        super().__init__(message)
        self.result = result
        self.sample = sample

    def with_sample(self, sample: Any) -> "SignChangeError":
        """문제가 된 표본을 첨부한 같은 종류의 오류 반환"""
        return type(self)(str(self), self.result, sample=sample)


class NoBracketError(SignChangeError):
    """탐색 범위 안에서 양/음 구간을 찾지 못함"""


class PlateauError(SignChangeError):
    """스코어 합이 구간 전체에서 0 - 엄격한 부호 변화 없음"""


class DenominatorNearZeroError(PsiEstimatorError):
    """비율 함수의 분모가 zero_tol 이하"""


class BlocksEqualEstimateError(PsiEstimatorError):
    """두 블록의 추정값이 같아 비교 구간이 퇴화함"""


class AnchorsIndistinguishableError(PsiEstimatorError):
    """정규화 기준점 u, v 의 추정값이 구별되지 않음"""


class EnumerationLimitError(PsiEstimatorError):
    """다중집합 열거 개수가 상한을 넘음"""


class SolverError(PsiEstimatorError):
    """선형계획 풀이 실패"""


class SampleParseError(PsiEstimatorError):
    """표본 파일 파싱 오류"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class CountNotPositiveError(SampleParseError):
    """중복도가 양의 정수가 아님"""


class PsiSpecError(PsiEstimatorError):
    """ψ-spec 문자열 해석 오류"""


class TableFormatError(PsiEstimatorError):
    """PsiTable 파일 형식 / 불변식 위반"""
