import logging
import math
from typing import Any, Callable, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from interfaces.service import IAxiomLab, IEstimator
from domain.models import (
    AxiomReport,
    EstimatorOracle,
    Observation,
    ParameterInterval,
    SamplerConfig,
    ScoreFamily,
    Tolerances,
    WeightedSample,
    Witness,
    observation_to_json,
)
from domain.enums import Axiom, Verdict
from domain.errors import NoBracketError, PlateauError, PreconditionError, SignChangeError
from service.psi_catalog import Generator, qa_mean
from service.sampling import SampleGenerator

DEFAULT_SCHEDULE: tuple[int, ...] = tuple(2 ** k for k in range(16))
MAX_WITNESSES = 10
# 연속성 검사의 섭동 크기 (구간 폭 대비)
CONTINUITY_SCALES: tuple[float, ...] = tuple(10.0 ** -k for k in range(1, 9))


def _values_json(values: Sequence[Observation]) -> list:
    return [observation_to_json(v) for v in values]


class AxiomLab(IAxiomLab):
    """추정량 공리계의 경험적 검증 / 반증

    같은 SamplerConfig (같은 seed) 는 같은 보고서를 만든다.
    입력은 미리 순차적으로 뽑고 평가만 병렬로 돌리므로 n_jobs 와 무관하게 결정적이다.
    """

    def __init__(self, estimator: IEstimator, n_jobs: int = 1):
        self._estimator = estimator
        self._n_jobs = n_jobs
        self._logger = logging.getLogger("axiom_lab")

    # ------------------------------------------------------------------
    # 특성화 정리의 조건 (a)-(c)
    # ------------------------------------------------------------------

    def check_symmetry(
        self,
        oracle: EstimatorOracle,
        cfg: SamplerConfig,
        cases: Sequence[Sequence[Observation]] = (),
    ) -> AxiomReport:
        if not oracle.is_list_oracle:
            return AxiomReport(
                axiom=Axiom.SYMMETRY,
                verdict=Verdict.PASS,
                trials=0,
                config=cfg.to_dict(),
                notes=(f"{oracle.name} is evaluated on multisets and is symmetric by construction",),
            )

        gen = SampleGenerator(cfg)
        inputs = [(list(c), list(reversed(c))) for c in cases]
        for _ in range(cfg.trials):
            values = gen.ordered_list()
            inputs.append((values, gen.permutation(values)))

        def trial(item):
            values, permuted = item
            return oracle.on_list(values), oracle.on_list(permuted)

        results = self._map(trial, inputs)
        witnesses, max_violation = [], 0.0
        for i, ((values, permuted), (lhs, rhs)) in enumerate(zip(inputs, results)):
            violation = abs(lhs - rhs)
            max_violation = max(max_violation, violation)
            if violation > cfg.tolerance:
                witnesses.append(Witness(
                    trial=i,
                    inputs={"list": _values_json(values), "permuted": _values_json(permuted)},
                    lhs=lhs,
                    rhs=rhs,
                    violation=violation,
                    relation="M(x) == M(permuted x)",
                ))
        return self._report(Axiom.SYMMETRY, cfg, len(inputs), witnesses, max_violation)

    def check_internality(
        self,
        oracle: EstimatorOracle,
        cfg: SamplerConfig,
        strict: bool = False,
        cases: Sequence[tuple[WeightedSample, WeightedSample]] = (),
    ) -> AxiomReport:
        gen = SampleGenerator(cfg)
        pairs = list(cases) + [(gen.sample(), gen.sample()) for _ in range(cfg.trials)]

        def trial(pair):
            x, y = pair
            return oracle(x), oracle(y), oracle(x.concat(y))

        results = self._map(trial, pairs)
        tol = cfg.tolerance
        witnesses, max_violation = [], 0.0
        for i, ((x, y), (mx, my, mxy)) in enumerate(zip(pairs, results)):
            lo, hi = min(mx, my), max(mx, my)
            violation = max(lo - mxy, mxy - hi, 0.0)
            bound = lo if mxy < lo else hi
            relation = "min(M(x),M(y)) <= M(x+y) <= max(M(x),M(y))"
            if strict and violation <= tol and hi - lo > tol:
                margin = min(mxy - lo, hi - mxy)
                if margin <= tol:
                    # violation 에는 |M(x+y) − bound| 를 그대로 남긴다 (≤ tol)
                    bound = lo if mxy - lo <= hi - mxy else hi
                    relation = "min(M(x),M(y)) < M(x+y) < max(M(x),M(y)) when M(x) != M(y)"
                    witnesses.append(self._pair_witness(i, x, y, mx, my, mxy, bound,
                                                        abs(mxy - bound), relation))
                    continue
            max_violation = max(max_violation, violation)
            if violation > tol:
                witnesses.append(self._pair_witness(i, x, y, mx, my, mxy, bound,
                                                    violation, relation))

        axiom = Axiom.STRICT_INTERNALITY if strict else Axiom.INTERNALITY
        return self._report(axiom, cfg, len(pairs), witnesses, max_violation)

    def check_asymptotic_idempotency(
        self,
        oracle: EstimatorOracle,
        block: WeightedSample,
        y: Observation,
        schedule: Optional[Sequence[int]] = None,
        tolerance: float = 1e-3,
    ) -> AxiomReport:
        schedule = tuple(schedule or DEFAULT_SCHEDULE)
        if not schedule or any(n < 1 for n in schedule):
            raise PreconditionError("schedule must be a nonempty list of positive integers")
        extra = WeightedSample.of(y)
        base = oracle(block)
        values = self._map(lambda n: oracle(block.replicate(n).concat(extra)), schedule)
        gaps = [abs(v - base) for v in values]

        tail = gaps[len(gaps) // 2:]
        decreasing = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
        if min(tail) > tolerance:
            verdict = Verdict.FAIL
        elif decreasing and gaps[-1] <= tolerance:
            verdict = Verdict.PASS
        else:
            verdict = Verdict.INCONCLUSIVE

        witnesses = ()
        if verdict == Verdict.FAIL:
            witnesses = (Witness(
                trial=len(schedule) - 1,
                inputs={"block": block.to_dict(), "y": observation_to_json(y), "n": schedule[-1]},
                lhs=values[-1],
                rhs=base,
                violation=gaps[-1],
                relation="M(n*x + y) -> M(x)",
            ),)
        if verdict == Verdict.INCONCLUSIVE:
            self._logger.warning(f"asymptotic idempotency of {oracle.name} is inconclusive")
        return AxiomReport(
            axiom=Axiom.ASYMPTOTIC_IDEMPOTENCY,
            verdict=verdict,
            trials=len(schedule),
            witnesses=witnesses,
            max_violation=gaps[-1],
            config={"schedule": list(schedule), "tolerance": tolerance},
            metrics={"gaps": [[n, g] for n, g in zip(schedule, gaps)], "base": base},
        )

    def check_idempotency(self, oracle: EstimatorOracle, cfg: SamplerConfig) -> AxiomReport:
        """μ(n·s) = μ(s)"""
        gen = SampleGenerator(cfg)
        inputs = [(gen.sample(), int(gen.rng.integers(2, 6))) for _ in range(cfg.trials)]
        results = self._map(lambda item: (oracle(item[0]), oracle(item[0].replicate(item[1]))),
                            inputs)
        witnesses, max_violation = [], 0.0
        for i, ((s, n), (ms, mns)) in enumerate(zip(inputs, results)):
            violation = abs(mns - ms)
            max_violation = max(max_violation, violation)
            if violation > cfg.tolerance:
                witnesses.append(Witness(i, {"sample": s.to_dict(), "n": n}, mns, ms,
                                         violation, "M(n*s) == M(s)"))
        return self._report(Axiom.IDEMPOTENCY, cfg, len(inputs), witnesses, max_violation)

    # ------------------------------------------------------------------
    # ScoreFamily 성질 [T] / [Z]
    # ------------------------------------------------------------------

    def check_t_property(
        self,
        psi: ScoreFamily,
        cfg: SamplerConfig,
        samples: Sequence[WeightedSample] = (),
        tol: Optional[Tolerances] = None,
    ) -> AxiomReport:
        gen = SampleGenerator(cfg)
        inputs = list(samples) + [gen.sample() for _ in range(cfg.trials)]

        def trial(sample):
            try:
                self._estimator.estimate(psi, sample, tol)
                return None
            except (PlateauError, NoBracketError) as e:
                return e

        witnesses, max_violation = [], 0.0
        for i, (sample, error) in enumerate(zip(inputs, self._map(trial, inputs))):
            if error is None:
                continue
            result = error.result
            if result.plateau is not None:
                lhs, rhs = result.plateau
                violation = rhs - lhs
            else:
                lhs = rhs = result.theta
                violation = abs(result.residual_at_theta)
            max_violation = max(max_violation, violation)
            witnesses.append(Witness(
                trial=i,
                inputs={"sample": sample.to_dict(), "status": result.status.value},
                lhs=lhs,
                rhs=rhs,
                violation=violation,
                relation="score sum changes sign strictly exactly once",
            ))
        return self._report(Axiom.T_PROPERTY, cfg, len(inputs), witnesses, max_violation,
                            tolerance=0.0)

    def check_z_property(
        self,
        psi: ScoreFamily,
        cfg: SamplerConfig,
        samples: Sequence[WeightedSample] = (),
        tol: Optional[Tolerances] = None,
    ) -> AxiomReport:
        gen = SampleGenerator(cfg)
        inputs = list(samples) + [gen.sample() for _ in range(cfg.trials)]

        def trial(sample):
            try:
                return self._estimator.estimate(psi, sample, tol)
            except SignChangeError:
                return None

        witnesses, max_violation, skipped = [], 0.0, 0
        for i, (sample, report) in enumerate(zip(inputs, self._map(trial, inputs))):
            if report is None:
                skipped += 1
                continue
            limit = cfg.tolerance * report.n
            violation = abs(report.z_residual)
            max_violation = max(max_violation, violation / report.n)
            if violation > limit:
                witnesses.append(Witness(
                    trial=i,
                    inputs={"sample": sample.to_dict(), "theta": report.theta},
                    lhs=report.z_residual,
                    rhs=0.0,
                    violation=violation,
                    relation="score sum vanishes at the estimate",
                ))
        notes = (f"{skipped} samples had no sign change and were skipped",) if skipped else ()
        return self._report(Axiom.Z_PROPERTY, cfg, len(inputs) - skipped, witnesses,
                            max_violation, notes=notes)

    def check_range_coverage(
        self,
        oracle: EstimatorOracle,
        pool: Sequence[Observation],
        domain: ParameterInterval,
        tolerance: float = 1e-6,
    ) -> AxiomReport:
        """단일 관측값 추정값 범위가 Θ 양 끝에 닿는지 (정보 제공용, Fail 없음)"""
        if not pool:
            raise PreconditionError("range coverage needs a nonempty pool")
        singles = self._map(lambda x: oracle(WeightedSample.of(x)), list(pool))
        low, high = min(singles), max(singles)
        reaches_lo = domain.bounded_below and low - domain.lo <= tolerance
        reaches_hi = domain.bounded_above and domain.hi - high <= tolerance
        verdict = Verdict.PASS if reaches_lo and reaches_hi else Verdict.INCONCLUSIVE
        return AxiomReport(
            axiom=Axiom.RANGE_COVERAGE,
            verdict=verdict,
            trials=len(singles),
            config={"tolerance": tolerance, "domain": domain.to_dict()},
            metrics={"observed_min": low, "observed_max": high},
            notes=("informational: characterisation assumes M_1(X) spans the parameter interval",),
        )

    # ------------------------------------------------------------------
    # 준산술평균 (Kolmogorov 공리계)
    # ------------------------------------------------------------------

    def kolmogorov_suite(
        self, oracle: EstimatorOracle, cfg: SamplerConfig
    ) -> list[AxiomReport]:
        if cfg.pool_range is None:
            raise PreconditionError("kolmogorov suite needs a compact interval (pool_range)")
        return [
            self._strict_monotonicity(oracle, cfg),
            self._continuity(oracle, cfg),
            self._reflexivity(oracle, cfg),
            self._replacement(oracle, cfg),
        ]

    def replacement_gap(
        self,
        oracle: EstimatorOracle,
        x: Sequence[Observation],
        y: Sequence[Observation],
    ) -> tuple[float, float]:
        """(M(x, y), M(x̄, …, x̄, y)) with x̄ = M(x)"""
        x_bar = oracle.on_list(list(x))
        return oracle.on_list(list(x) + list(y)), oracle.on_list([x_bar] * len(x) + list(y))

    def _strict_monotonicity(self, oracle: EstimatorOracle, cfg: SamplerConfig) -> AxiomReport:
        lo, hi = cfg.pool_range
        gen = SampleGenerator(cfg)
        inputs = []
        for _ in range(cfg.trials):
            values = gen.ordered_list()
            i = gen.index(len(values))
            bumped = list(values)
            bumped[i] = values[i] + gen.uniform(0.25, 0.75) * (hi - values[i])
            inputs.append((values, i, bumped))

        results = self._map(lambda item: (oracle.on_list(item[0]), oracle.on_list(item[2])),
                            inputs)
        witnesses, max_violation = [], 0.0
        for k, ((values, i, bumped), (before, after)) in enumerate(zip(inputs, results)):
            increase = after - before
            if increase <= cfg.tolerance:
                violation = cfg.tolerance - increase
                max_violation = max(max_violation, violation)
                witnesses.append(Witness(
                    trial=k,
                    inputs={"list": values, "index": i, "new_value": bumped[i]},
                    lhs=after,
                    rhs=before,
                    violation=violation,
                    relation="raising one coordinate strictly raises M",
                ))
        return self._report(Axiom.STRICT_MONOTONICITY, cfg, len(inputs), witnesses,
                            max_violation)

    def _continuity(self, oracle: EstimatorOracle, cfg: SamplerConfig) -> AxiomReport:
        lo, hi = cfg.pool_range
        width = hi - lo
        gen = SampleGenerator(cfg)
        inputs = []
        for _ in range(cfg.trials):
            values = gen.ordered_list()
            inputs.append((values, gen.index(len(values))))

        def trial(item):
            values, i = item
            base = oracle.on_list(values)
            # 구간 안쪽 방향으로 섭동
            direction = 1.0 if values[i] - lo < hi - values[i] else -1.0
            responses = []
            for scale in CONTINUITY_SCALES:
                moved = list(values)
                moved[i] = values[i] + direction * scale * width / 2
                responses.append(abs(oracle.on_list(moved) - base))
            return base, responses

        witnesses, max_violation = [], 0.0
        for k, ((values, i), (base, responses)) in enumerate(zip(inputs, self._map(trial, inputs))):
            final = responses[-1]
            max_violation = max(max_violation, final)
            if final > max(cfg.tolerance, responses[0] / 2):
                witnesses.append(Witness(
                    trial=k,
                    inputs={"list": values, "index": i, "responses": responses},
                    lhs=base + final,
                    rhs=base,
                    violation=final,
                    relation="|M(x + d*e_i) - M(x)| -> 0 as d -> 0",
                ))
        return self._report(Axiom.CONTINUITY, cfg, len(inputs), witnesses, max_violation,
                            tolerance=math.inf)

    def _reflexivity(self, oracle: EstimatorOracle, cfg: SamplerConfig) -> AxiomReport:
        gen = SampleGenerator(cfg)
        inputs = [(gen.value(), gen.block_size()) for _ in range(cfg.trials)]
        results = self._map(lambda item: oracle.on_list([item[0]] * item[1]), inputs)
        witnesses, max_violation = [], 0.0
        for k, ((x, n), value) in enumerate(zip(inputs, results)):
            violation = abs(value - x)
            max_violation = max(max_violation, violation)
            if violation > cfg.tolerance:
                witnesses.append(Witness(k, {"x": x, "n": n}, value, x, violation,
                                         "M(x, ..., x) == x"))
        return self._report(Axiom.REFLEXIVITY, cfg, len(inputs), witnesses, max_violation)

    def _replacement(self, oracle: EstimatorOracle, cfg: SamplerConfig) -> AxiomReport:
        gen = SampleGenerator(cfg)
        inputs = [(gen.ordered_list(), gen.ordered_list()) for _ in range(cfg.trials)]
        results = self._map(lambda item: self.replacement_gap(oracle, *item), inputs)
        witnesses, max_violation = [], 0.0
        for k, ((x, y), (lhs, rhs)) in enumerate(zip(inputs, results)):
            violation = abs(lhs - rhs)
            max_violation = max(max_violation, violation)
            if violation > cfg.tolerance:
                witnesses.append(Witness(k, {"x": x, "y": y}, lhs, rhs, violation,
                                         "M(x, y) == M(mean(x), ..., mean(x), y)"))
        return self._report(Axiom.REPLACEMENT, cfg, len(inputs), witnesses, max_violation)

    def check_generator_equivalence(
        self,
        f: Generator,
        g: Generator,
        cfg: SamplerConfig,
        cases: Sequence[WeightedSample] = (),
    ) -> AxiomReport:
        if cfg.pool_range is None:
            raise PreconditionError("generator equivalence needs a pool_range inside both intervals")
        gen = SampleGenerator(cfg)
        samples = list(cases) + [gen.sample() for _ in range(cfg.trials)]

        witnesses, max_violation = [], 0.0
        for k, sample in enumerate(samples):
            mf, mg = qa_mean(f, sample), qa_mean(g, sample)
            violation = abs(mf - mg)
            max_violation = max(max_violation, violation)
            if violation > cfg.tolerance:
                witnesses.append(Witness(k, {"sample": sample.to_dict()}, mf, mg, violation,
                                         f"A_{f.name}(x) == A_{g.name}(x)"))

        # f ≈ a·g + b 최소제곱 적합
        xs = np.linspace(*cfg.pool_range, 66)[1:-1]
        fv = np.array([f.f(float(x)) for x in xs])
        gv = np.array([g.f(float(x)) for x in xs])
        metrics: dict[str, Any] = {}
        notes = ()
        if np.ptp(gv) == 0:
            verdict = Verdict.INCONCLUSIVE
            notes = (f"generator {g.name} is constant on the fit grid",)
        else:
            design = np.column_stack([gv, np.ones_like(gv)])
            (a, b), *_ = np.linalg.lstsq(design, fv, rcond=None)
            residual = float(np.max(np.abs(design @ np.array([a, b]) - fv)))
            metrics = {"fit_a": float(a), "fit_b": float(b), "fit_residual": residual}
            verdict = Verdict.FAIL if witnesses else Verdict.PASS

        return AxiomReport(
            axiom=Axiom.GENERATOR_EQUIVALENCE,
            verdict=Verdict.FAIL if witnesses else verdict,
            trials=len(samples),
            witnesses=tuple(witnesses[:MAX_WITNESSES]),
            max_violation=max_violation,
            config=cfg.to_dict(),
            metrics=metrics,
            notes=notes,
        )

    # ------------------------------------------------------------------
    # 내부 구현
    # ------------------------------------------------------------------

    def _map(self, fn: Callable, items: Sequence) -> list:
        if self._n_jobs == 1 or len(items) < 2:
            return [fn(item) for item in items]
        return Parallel(n_jobs=self._n_jobs, prefer="threads")(
            delayed(fn)(item) for item in items
        )

    @staticmethod
    def _pair_witness(trial, x, y, mx, my, mxy, bound, violation, relation) -> Witness:
        return Witness(
            trial=trial,
            inputs={"x": x.to_dict(), "y": y.to_dict(), "M(x)": mx, "M(y)": my},
            lhs=mxy,
            rhs=bound,
            violation=violation,
            relation=relation,
        )

    def _report(
        self,
        axiom: Axiom,
        cfg: SamplerConfig,
        trials: int,
        witnesses: list[Witness],
        max_violation: float,
        tolerance: Optional[float] = None,
        notes: tuple[str, ...] = (),
    ) -> AxiomReport:
        tolerance = cfg.tolerance if tolerance is None else tolerance
        if witnesses:
            verdict = Verdict.FAIL
        elif trials >= cfg.min_trials and max_violation <= tolerance:
            verdict = Verdict.PASS
        else:
            verdict = Verdict.INCONCLUSIVE
        witnesses = sorted(witnesses, key=lambda w: w.trial)[:MAX_WITNESSES]
        self._logger.info(
            f"{axiom.value}: {verdict.value} ({trials} trials, {len(witnesses)} witnesses)"
        )
        return AxiomReport(
            axiom=axiom,
            verdict=verdict,
            trials=trials,
            witnesses=tuple(witnesses),
            max_violation=max_violation,
            config=cfg.to_dict(),
            notes=notes,
        )
