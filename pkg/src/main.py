import argparse
import logging
import sys
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from config.settings import Settings
from container import Container, create_container
from dataio.sample_reader import parse_observation_list
from domain.models import ParameterInterval, RunConfig, WeightedSample
from domain.enums import Axiom, Command, DiagnoseKind, Outcome, ReportFormat
from domain.errors import ConfigError, PsiEstimatorError
from service.service_facade import DEFAULT_POOL_RANGE

AUDIT_AXIOMS = (
    Axiom.SYMMETRY,
    Axiom.INTERNALITY,
    Axiom.STRICT_INTERNALITY,
    Axiom.ASYMPTOTIC_IDEMPOTENCY,
    Axiom.IDEMPOTENCY,
    Axiom.T_PROPERTY,
    Axiom.Z_PROPERTY,
    Axiom.RANGE_COVERAGE,
)
DEFAULT_KOLMOGOROV_INTERVAL = "0.1:10"


def setup_logging(level: str) -> None:
    """stderr 로 RichHandler 하나만 설치 (stdout 은 보고서용)"""
    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="%H:%M:%S"))
    root_logger.addHandler(handler)
    root_logger.setLevel(level.upper())


def parse_tol(text: Optional[str]) -> dict[str, str]:
    """'k=v,k=v' 형식"""
    overrides: dict[str, str] = {}
    if not text:
        return overrides
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ConfigError(f"--tol expects k=v pairs, got {item!r}")
        overrides[key.strip()] = value.strip()
    return overrides


def parse_axioms(text: Optional[str]) -> tuple[Axiom, ...]:
    if not text:
        return ()
    axioms = []
    for name in (item.strip() for item in text.split(",")):
        if not name:
            continue
        try:
            axiom = Axiom(name)
        except ValueError:
            axiom = None
        if axiom not in AUDIT_AXIOMS:
            choices = ", ".join(a.value for a in AUDIT_AXIOMS)
            raise ConfigError(f"unknown axiom {name!r} (choose from {choices})")
        axioms.append(axiom)
    return tuple(axioms)


def parse_block(text: Optional[str]) -> Optional[WeightedSample]:
    if text is None:
        return None
    return WeightedSample.of(*parse_observation_list(text))


def parse_interval(text: Optional[str]) -> Optional[ParameterInterval]:
    if text is None:
        return None
    try:
        return ParameterInterval.from_string(text)
    except ValueError as e:
        raise ConfigError(f"invalid interval {text!r}: {e}") from e


def build_parser() -> argparse.ArgumentParser:
    """CLI 인자 정의"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", help="허용 오차 덮어쓰기 (k=v,...)")
    common.add_argument("--seed", type=int, help="난수 seed")
    common.add_argument("--trials", type=int, help="공리 검사 시행 횟수")
    common.add_argument("--max-block", type=int, help="무작위 표본 최대 크기")
    common.add_argument("--n-jobs", type=int, help="병렬 작업 수")
    common.add_argument("--out", help="보고서 경로 (기본: stdout)")
    common.add_argument("--format", choices=[f.value for f in ReportFormat], help="보고서 형식")
    common.add_argument("--verbose", "-v", action="count", default=0, help="로그 상세도")

    parser = argparse.ArgumentParser(
        description="일반화 ψ-추정량 검증 도구",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    estimate = sub.add_parser("estimate", parents=[common], help="ψ-추정값 계산")
    estimate.add_argument("--psi", required=True, help="ψ-spec (예: qa:ln, huber:1.5)")
    estimate.add_argument("--data", required=True, help="표본 파일 (CSV/JSON)")
    estimate.add_argument("--theta", "--interval", dest="theta", help="모수 구간 lo:hi")

    audit = sub.add_parser("audit", parents=[common], help="공리 검사")
    audit.add_argument("--psi", help="ψ-spec")
    audit.add_argument("--mean", help="내장 평균 이름 또는 psi:<spec>")
    audit.add_argument("--axioms", help="쉼표 구분 공리 목록")
    audit.add_argument("--data", help="결정적 사례로 쓸 표본 파일")
    audit.add_argument("--pool", help="표본 추출 관측값 (a,b,...)")
    audit.add_argument("--theta", "--interval", dest="theta", help="모수 구간 lo:hi")

    kolmogorov = sub.add_parser("kolmogorov", parents=[common], help="준산술평균 공리계 검사")
    kolmogorov.add_argument("--mean", help="내장 평균 이름 또는 psi:<spec>")
    kolmogorov.add_argument("--psi", help="ψ-spec")
    kolmogorov.add_argument("--interval", "--theta", dest="theta",
                            default=DEFAULT_KOLMOGOROV_INTERVAL, help="컴팩트 구간 lo:hi")

    diagnose = sub.add_parser("diagnose", parents=[common], help="증명 진단")
    diagnose.add_argument("kind", choices=[k.value for k in DiagnoseKind])
    diagnose.add_argument("--psi", help="ψ-spec")
    diagnose.add_argument("--mean", help="semigroup 용 평균 이름")
    diagnose.add_argument("--x", required=True, help="x 블록 (a,b,...)")
    diagnose.add_argument("--y", required=True, help="y 블록 (c,d,...)")
    diagnose.add_argument("--t", type=float, help="semigroup 수준 t")
    diagnose.add_argument("--grid", type=int, default=100, help="비율 격자 크기")
    diagnose.add_argument("--theta", "--interval", dest="theta", help="모수 구간 lo:hi")

    synthesize = sub.add_parser("synthesize", parents=[common], help="LP 로 ψ 표 합성")
    synthesize.add_argument("--mean", required=True, help="내장 평균 이름 또는 psi:<spec>")
    synthesize.add_argument("--alphabet", required=True, help="관측 알파벳 (a,b,...)")
    synthesize.add_argument("--max-size", type=int, required=True, help="다중집합 최대 크기 N")
    synthesize.add_argument("--grid", type=int, required=True, help="θ 격자 크기")
    synthesize.add_argument("--theta", "--interval", dest="theta", help="θ 격자 구간 lo:hi")
    synthesize.add_argument("--table", default="psi_table.json", help="PsiTable 저장 경로")

    catalog = sub.add_parser("catalog", parents=[common], help="카탈로그 보기")
    catalog.add_argument("action", choices=["list"])

    return parser


def build_settings(args: argparse.Namespace) -> Settings:
    """환경 변수 → --tol → 개별 플래그 순으로 덮어쓴 뒤 검증"""
    settings = Settings.from_env()
    overrides = parse_tol(args.tol)
    for flag in ("seed", "trials", "max_block", "n_jobs"):
        value = getattr(args, flag)
        if value is not None:
            overrides[flag] = str(value)
    if args.format is not None:
        overrides["report_format"] = args.format
    if args.verbose:
        overrides["log_level"] = "DEBUG" if args.verbose > 1 else "INFO"
    try:
        settings.apply_overrides(overrides)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    settings.validate()
    return settings


def build_run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """argparse 결과를 RunConfig 로 변환"""
    command = Command(args.command)
    pool_text = getattr(args, "pool", None)
    pool = tuple(parse_observation_list(pool_text)) if pool_text else ()
    try:
        sampler = settings.sampler(pool=pool, pool_range=None if pool else DEFAULT_POOL_RANGE)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    alphabet_text = getattr(args, "alphabet", None)
    kind = getattr(args, "kind", None)
    return RunConfig(
        command=command,
        psi_spec=getattr(args, "psi", None),
        mean_name=getattr(args, "mean", None),
        data_path=getattr(args, "data", None),
        theta_interval=parse_interval(getattr(args, "theta", None)),
        tolerances=settings.tolerances(),
        sampler=sampler,
        output_path=args.out,
        format=ReportFormat(settings.report_format),
        axioms=parse_axioms(getattr(args, "axioms", None)),
        diagnose_kind=DiagnoseKind(kind) if kind else None,
        x_block=parse_block(getattr(args, "x", None)),
        y_block=parse_block(getattr(args, "y", None)),
        t=getattr(args, "t", None),
        grid_size=getattr(args, "grid", 100),
        alphabet=tuple(parse_observation_list(alphabet_text, allow_symbols=True))
        if alphabet_text else (),
        max_size=getattr(args, "max_size", 0) or 0,
        table_path=getattr(args, "table", "psi_table.json"),
    )


class Application:
    """메인 애플리케이션 - 명령 하나 실행 후 종료 코드 반환"""

    def __init__(self, settings: Settings, container: Optional[Container] = None):
        self._settings = settings
        self._container = container or create_container(settings)
        self._logger = logging.getLogger("application")

    def run(self, config: RunConfig) -> int:
        report = self._container.service_facade.run(config)
        try:
            self._container.report_writer.write(report, config.output_path, config.format)
        except OSError as e:
            self._logger.error(f"보고서 기록 실패: {e}")
            self._container.display.show_error(e)
            return Outcome.ERROR.value

        if config.command == Command.CATALOG:
            self._container.display.show_catalog(self._container.catalog.list_families())
        if config.output_path is not None or self._logger.isEnabledFor(logging.INFO):
            self._container.display.show_report(report)
        return report.exit_code


def main(argv: Optional[list[str]] = None) -> None:
    """메인 진입점"""
    args = build_parser().parse_args(argv)

    try:
        settings = build_settings(args)
    except (ValueError, ConfigError) as e:
        print(f"설정 오류: {e}", file=sys.stderr)
        print("\n허용 오차 키: bracket_growth, root_abs_tol, plateau_width_tol, zero_tol,", file=sys.stderr)
        print("  max_bracket_steps, max_bisect_steps, axiom_tol, boundary_tol, max_multisets", file=sys.stderr)
        sys.exit(Outcome.ERROR.value)

    setup_logging(settings.log_level)
    logger = logging.getLogger("application")

    try:
        config = build_run_config(args, settings)
    except PsiEstimatorError as e:
        logger.error(f"인자 오류: {e}")
        sys.exit(Outcome.ERROR.value)

    app = Application(settings)
    sys.exit(app.run(config))


if __name__ == "__main__":
    main()
