import dataclasses
import logging
import time
from typing import Optional

from interfaces.dataio import IPsiTableStore, ISampleReader
from interfaces.service import (
    IAxiomLab,
    IEstimator,
    IPsiCatalog,
    IPsiSynthesizer,
    IRatioAnalyzer,
    ISemigroupModel,
    IServiceFacade,
)
from domain.models import (
    AxiomReport,
    EstimatorOracle,
    InfeasibilityCertificate,
    ParameterInterval,
    RunConfig,
    RunReport,
    SamplerConfig,
    ScoreFamily,
    WeightedSample,
    observation_key,
    observation_to_json,
    verdict_of,
)
from domain.enums import Axiom, Claim, Command, DiagnoseKind, Membership, Outcome, Verdict
from domain.errors import ConfigError, PlateauError, PsiEstimatorError
from service.oracles import OracleResolver

DEFAULT_AUDIT_AXIOMS: tuple[Axiom, ...] = (
    Axiom.SYMMETRY,
    Axiom.INTERNALITY,
    Axiom.STRICT_INTERNALITY,
    Axiom.ASYMPTOTIC_IDEMPOTENCY,
)
DEFAULT_POOL_RANGE = (0.1, 10.0)


class ServiceFacade(IServiceFacade):
    """서비스 계층 통합 Facade - 명령 하나를 실행하고 RunReport 로 정리"""

    def __init__(
        self,
        sample_reader: ISampleReader,
        table_store: IPsiTableStore,
        catalog: IPsiCatalog,
        estimator: IEstimator,
        axiom_lab: IAxiomLab,
        ratio_analyzer: IRatioAnalyzer,
        semigroup: ISemigroupModel,
        synthesizer: IPsiSynthesizer,
        oracles: OracleResolver,
        version: str,
    ):
        self._sample_reader = sample_reader
        self._table_store = table_store
        self._catalog = catalog
        self._estimator = estimator
        self._axiom_lab = axiom_lab
        self._ratio = ratio_analyzer
        self._semigroup = semigroup
        self._synthesizer = synthesizer
        self._oracles = oracles
        self._version = version
        self._logger = logging.getLogger("service_facade")

    def run(self, config: RunConfig) -> RunReport:
        report = RunReport(
            command=config.command.value,
            inputs=self._inputs(config),
            version=self._version,
            tolerances=self._tolerance_snapshot(config),
        )
        started = time.perf_counter()
        handlers = {
            Command.ESTIMATE: self._run_estimate,
            Command.AUDIT: self._run_audit,
            Command.KOLMOGOROV: self._run_kolmogorov,
            Command.DIAGNOSE: self._run_diagnose,
            Command.SYNTHESIZE: self._run_synthesize,
            Command.CATALOG: self._run_catalog,
        }
        try:
            config.validate()
            handlers[config.command](config, report)
        except PsiEstimatorError as e:
            self._logger.error(f"{config.command.value} failed: {e}")
            report.outcome = Outcome.ERROR
            report.metrics["error"] = str(e)
            report.metrics["error_type"] = type(e).__name__
        report.timing = {"elapsed_seconds": round(time.perf_counter() - started, 6)}
        return report

    # ------------------------------------------------------------------
    # 명령별 처리
    # ------------------------------------------------------------------

    def _run_estimate(self, config: RunConfig, report: RunReport) -> None:
        psi = self._psi(config)
        sample = self._sample_reader.read(config.data_path)
        try:
            estimate = self._estimator.estimate(psi, sample, config.tolerances)
        except PlateauError as e:
            # 평탄 구간은 [T] 반증 - 실패가 아닌 결과
            report.outcome = Outcome.FALSIFIED
            report.metrics["sign_change"] = e.result.to_dict()
            report.witnesses.append({
                "kind": "plateau",
                "sample": sample.to_dict(),
                "plateau": list(e.result.plateau),
            })
            return
        report.metrics["estimate"] = estimate.to_dict()
        self._logger.info(f"{psi.name}: theta={estimate.theta} (n={estimate.n})")

    def _run_audit(self, config: RunConfig, report: RunReport) -> None:
        psi = self._psi(config) if config.psi_spec else None
        oracle = self._oracle(config, psi)
        data = self._sample_reader.read(config.data_path) if config.data_path else None
        cfg = self._sampler(config, data)
        axioms = config.axioms or DEFAULT_AUDIT_AXIOMS

        reports: list[AxiomReport] = []
        for axiom in axioms:
            reports.append(self._audit_one(axiom, oracle, psi, cfg, data, config))
        self._collect(report, reports)

    def _audit_one(
        self,
        axiom: Axiom,
        oracle: EstimatorOracle,
        psi: Optional[ScoreFamily],
        cfg: SamplerConfig,
        data: Optional[WeightedSample],
        config: RunConfig,
    ) -> AxiomReport:
        lab = self._axiom_lab
        samples = (data,) if data is not None else ()
        if axiom == Axiom.SYMMETRY:
            cases = (data.expand(),) if data is not None else ()
            return lab.check_symmetry(oracle, cfg, cases=cases)
        if axiom == Axiom.INTERNALITY:
            return lab.check_internality(oracle, cfg, strict=False)
        if axiom == Axiom.STRICT_INTERNALITY:
            return lab.check_internality(oracle, cfg, strict=True)
        if axiom == Axiom.ASYMPTOTIC_IDEMPOTENCY:
            block, y = self._idempotency_inputs(cfg, data)
            return lab.check_asymptotic_idempotency(oracle, block, y)
        if axiom == Axiom.IDEMPOTENCY:
            return lab.check_idempotency(oracle, cfg)
        if axiom in (Axiom.T_PROPERTY, Axiom.Z_PROPERTY):
            if psi is None:
                raise ConfigError(f"{axiom.value} needs --psi")
            check = lab.check_t_property if axiom == Axiom.T_PROPERTY else lab.check_z_property
            return check(psi, cfg, samples=samples, tol=config.tolerances)
        if axiom == Axiom.RANGE_COVERAGE:
            pool = cfg.pool or tuple(ParameterInterval(*cfg.pool_range).interior_grid(32))
            domain = psi.domain if psi is not None else oracle.domain
            return lab.check_range_coverage(oracle, pool, domain)
        raise ConfigError(f"axiom {axiom.value} is not available in audit")

    def _run_kolmogorov(self, config: RunConfig, report: RunReport) -> None:
        psi = self._psi(config) if config.psi_spec else None
        oracle = self._oracle(config, psi)
        interval = config.theta_interval
        base = config.sampler or SamplerConfig(pool_range=(interval.lo, interval.hi))
        cfg = dataclasses.replace(base, pool=(), pool_range=(interval.lo, interval.hi))
        self._collect(report, self._axiom_lab.kolmogorov_suite(oracle, cfg))

    def _run_diagnose(self, config: RunConfig, report: RunReport) -> None:
        x, y = config.x_block, config.y_block
        kind = config.diagnose_kind

        if kind == DiagnoseKind.RATIO:
            psi = self._psi(config)
            diagnostic = self._ratio.audit_ratio(psi, x, y, config.grid_size, config.tolerances)
            report.metrics["ratio"] = diagnostic.to_dict()
            broken = (
                (psi.has(Claim.T) and not (diagnostic.positive_on_gap_interval
                                           and diagnostic.monotone_on_gap_interval))
                or (psi.has(Claim.C) and not diagnostic.continuity_consistent)
            )
            if diagnostic.monotonicity_witness is not None:
                report.witnesses.append({"kind": "monotonicity",
                                         **diagnostic.monotonicity_witness})
            if broken:
                report.outcome = Outcome.FALSIFIED

        elif kind == DiagnoseKind.ZLIMITS:
            psi = self._psi(config)
            if y.size != 1:
                raise ConfigError("zlimits needs a single observation in --y")
            limits = self._ratio.z_via_ratio_limits(psi, x, y.distinct[0])
            report.metrics["zlimits"] = limits.to_dict()
            if psi.has(Claim.Z) and not limits.z_consistent:
                report.outcome = Outcome.FALSIFIED

        else:
            psi = self._psi(config) if config.psi_spec else None
            oracle = self._oracle(config, psi)
            t = config.t
            if t is None:
                t = (self._semigroup.mu(oracle, x) + self._semigroup.mu(oracle, y)) / 2
            pool = tuple(sorted(set(x.distinct) | set(y.distinct), key=observation_key))
            base = config.sampler or SamplerConfig(pool=pool)
            cfg = dataclasses.replace(base, pool=pool, pool_range=None)
            closure = self._semigroup.closure_probe(oracle, t, cfg, cases=((x, y),))
            self._collect(report, [closure])
            memberships = {
                "x": self._semigroup.level_membership(oracle, x, t).value,
                "y": self._semigroup.level_membership(oracle, y, t).value,
                "x+y": self._semigroup.level_membership(oracle, x.concat(y), t).value,
            }
            report.metrics["t"] = t
            report.metrics["membership"] = memberships
            if memberships["x"] == Membership.IN_A.value:
                core = self._semigroup.core_probe(oracle, t, x, y)
                report.metrics["core_probe"] = {"n": core.n, "n_max": core.n_max,
                                                "resolved": core.resolved}

    def _run_synthesize(self, config: RunConfig, report: RunReport) -> None:
        oracle = self._oracle(config, None)
        alphabet = config.alphabet
        interval = config.theta_interval or self._alphabet_interval(alphabet)
        grid = interval.interior_grid(config.grid_size)
        result = self._synthesizer.synthesize_psi(
            oracle, alphabet, grid, config.max_size, domain=interval,
        )
        if isinstance(result, InfeasibilityCertificate):
            report.outcome = Outcome.FALSIFIED
            report.witnesses.append({"kind": "infeasibility", **result.to_dict()})
            return

        verification = self._synthesizer.verify_synthesis(result, oracle, alphabet, config.max_size)
        self._table_store.save(result, config.table_path)
        report.metrics["table_path"] = config.table_path
        report.metrics["min_margin"] = min(result.margins)
        report.metrics["margins"] = list(result.margins)
        report.metrics["verification"] = verification.to_dict()
        report.metrics["multisets"] = self._semigroup.count_multisets(
            len(set(alphabet)), config.max_size
        )
        report.metrics["consistency"] = (
            f"consistent up to (N={config.max_size}, grid={len(grid)})"
            if verification.passed else "verification failed"
        )
        if not verification.passed:
            report.outcome = Outcome.FALSIFIED

    def _run_catalog(self, config: RunConfig, report: RunReport) -> None:
        report.metrics["families"] = [
            {
                "name": psi.name,
                "claims": psi.claim_names(),
                "domain": psi.domain.to_dict(),
                "description": psi.description,
            }
            for psi in self._catalog.list_families()
        ]
        report.metrics["means"] = OracleResolver.names()

    # ------------------------------------------------------------------
    # 내부 구현
    # ------------------------------------------------------------------

    def _psi(self, config: RunConfig) -> ScoreFamily:
        psi = self._catalog.parse(config.psi_spec)
        if config.theta_interval is not None and config.command != Command.KOLMOGOROV:
            psi = dataclasses.replace(psi, domain=config.theta_interval)
        return psi

    def _oracle(self, config: RunConfig, psi: Optional[ScoreFamily]) -> EstimatorOracle:
        if config.mean_name:
            return self._oracles.resolve(config.mean_name, config.tolerances)
        return self._estimator.as_oracle(psi, config.tolerances)

    @staticmethod
    def _sampler(config: RunConfig, data: Optional[WeightedSample]) -> SamplerConfig:
        cfg = config.sampler or SamplerConfig(pool_range=DEFAULT_POOL_RANGE)
        if not cfg.pool and data is not None:
            cfg = dataclasses.replace(cfg, pool=data.distinct, pool_range=None)
        return cfg

    @staticmethod
    def _idempotency_inputs(cfg: SamplerConfig, data: Optional[WeightedSample]):
        """블록은 최소 관측값 하나, y 는 최대 관측값 (y 는 블록 밖)"""
        if data is not None:
            values = tuple(sorted(data.distinct, key=observation_key))
            block = WeightedSample.of(values[0])
        elif cfg.pool:
            values = cfg.pool
            block = WeightedSample.of(values[0])
        else:
            lo, hi = cfg.pool_range
            values = (lo + (hi - lo) / 4, hi - (hi - lo) / 4)
            block = WeightedSample.of(values[0])
        return block, values[-1]

    @staticmethod
    def _alphabet_interval(alphabet) -> ParameterInterval:
        numeric = [float(x) for x in alphabet if not isinstance(x, str)]
        if len(numeric) != len(alphabet) or min(numeric) == max(numeric):
            raise ConfigError("symbolic or single-valued alphabets need an explicit --theta")
        return ParameterInterval(min(numeric), max(numeric))

    @staticmethod
    def _collect(report: RunReport, reports: list[AxiomReport]) -> None:
        for axiom_report in reports:
            report.verdicts.append(axiom_report.to_dict())
            for witness in axiom_report.witnesses:
                report.witnesses.append({"axiom": axiom_report.axiom.value, **witness.to_dict()})
        if verdict_of(reports) == Outcome.FALSIFIED:
            report.outcome = Outcome.FALSIFIED
        inconclusive = [r.axiom.value for r in reports if r.verdict == Verdict.INCONCLUSIVE]
        if inconclusive:
            report.metrics["inconclusive"] = inconclusive

    @staticmethod
    def _inputs(config: RunConfig) -> dict:
        def sample(value: Optional[WeightedSample]):
            return value.to_dict() if value is not None else None

        return {
            "psi": config.psi_spec,
            "mean": config.mean_name,
            "data": config.data_path,
            "theta": config.theta_interval.to_dict() if config.theta_interval else None,
            "axioms": [a.value for a in config.axioms],
            "diagnose": config.diagnose_kind.value if config.diagnose_kind else None,
            "x": sample(config.x_block),
            "y": sample(config.y_block),
            "t": config.t,
            "grid": config.grid_size,
            "alphabet": [observation_to_json(x) for x in config.alphabet],
            "max_size": config.max_size,
            "sampler": config.sampler.to_dict() if config.sampler else None,
        }

    @staticmethod
    def _tolerance_snapshot(config: RunConfig) -> dict:
        snapshot = config.tolerances.to_dict()
        if config.sampler is not None:
            snapshot["axiom_tolerance"] = config.sampler.tolerance
            snapshot["seed"] = config.sampler.seed
        return snapshot
