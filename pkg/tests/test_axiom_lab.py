import pytest

from domain.models import ParameterInterval, SamplerConfig, WeightedSample
from domain.enums import Axiom, Verdict
from domain.errors import PreconditionError
from service.axiom_lab import AxiomLab, DEFAULT_SCHEDULE
from service.estimator import Estimator
from service.oracles import builtin_oracle
from service.psi_catalog import PsiCatalog, affine_generator, identity_generator, log_generator
from service.sign_change import SignChangeFinder


@pytest.fixture
def estimator() -> Estimator:
    return Estimator(SignChangeFinder())


@pytest.fixture
def lab(estimator) -> AxiomLab:
    return AxiomLab(estimator)


@pytest.fixture
def catalog() -> PsiCatalog:
    return PsiCatalog()


def _cfg(**kwargs) -> SamplerConfig:
    base = {"seed": 0, "pool_range": (0.1, 10.0), "trials": 100, "max_block": 5}
    base.update(kwargs)
    return SamplerConfig(**base)


# ---------------------------------------------------------------------------
# 대칭성 / 내부성
# ---------------------------------------------------------------------------

def test_multiset_oracle_is_symmetric_by_construction(lab):
    report = lab.check_symmetry(builtin_oracle("arithmetic"), _cfg())
    assert report.verdict == Verdict.PASS
    assert report.trials == 0
    assert report.notes


def test_biased_first_fails_symmetry_with_exact_witness(lab):
    report = lab.check_symmetry(builtin_oracle("biased-first"), _cfg(trials=20), cases=([0, 1],))
    assert report.verdict == Verdict.FAIL
    witness = report.witnesses[0]
    assert witness.trial == 0
    assert witness.lhs == pytest.approx(1 / 3)
    assert witness.rhs == pytest.approx(2 / 3)


@pytest.mark.parametrize("spec", ["qa:id", "qa:ln", "arctan"])
def test_score_family_oracles_are_strictly_internal(lab, estimator, catalog, spec):
    oracle = estimator.as_oracle(catalog.parse(spec))
    assert lab.check_internality(oracle, _cfg(), strict=True).verdict == Verdict.PASS
    assert lab.check_internality(oracle, _cfg(), strict=False).verdict == Verdict.PASS


def test_max_fails_strict_internality(lab):
    cases = ((WeightedSample.of(1), WeightedSample.of(2)),)
    report = lab.check_internality(builtin_oracle("max"), _cfg(trials=10), strict=True, cases=cases)
    assert report.verdict == Verdict.FAIL
    assert report.axiom == Axiom.STRICT_INTERNALITY
    witness = report.witnesses[0]
    assert witness.trial == 0
    assert witness.lhs == 2.0
    # 경계까지의 거리 |M(x+y) − max| 가 그대로 남는다
    assert witness.rhs == 2.0
    assert witness.violation == abs(witness.lhs - witness.rhs) == 0.0


def test_max_is_internal_but_not_strictly(lab):
    assert lab.check_internality(builtin_oracle("max"), _cfg()).verdict == Verdict.PASS


def test_sum_is_not_internal(lab):
    cases = ((WeightedSample.of(1.0), WeightedSample.of(2.0)),)
    report = lab.check_internality(builtin_oracle("sum"), _cfg(trials=5), cases=cases)
    assert report.verdict == Verdict.FAIL
    assert report.witnesses[0].lhs == 3.0


# ---------------------------------------------------------------------------
# 점근적 멱등성 / 멱등성
# ---------------------------------------------------------------------------

def test_arithmetic_gap_follows_exact_law(lab):
    report = lab.check_asymptotic_idempotency(builtin_oracle("arithmetic"), WeightedSample.of(0), 1)
    assert report.verdict == Verdict.PASS
    for n, gap in report.metrics["gaps"]:
        assert abs(gap - 1 / (n + 1)) <= 1e-12
    assert [n for n, _ in report.metrics["gaps"]] == list(DEFAULT_SCHEDULE)


def test_max_has_persistent_gap(lab):
    report = lab.check_asymptotic_idempotency(builtin_oracle("max"), WeightedSample.of(0), 1)
    assert report.verdict == Verdict.FAIL
    assert report.max_violation == 1.0
    assert report.witnesses[0].violation == 1.0


def test_log_score_is_asymptotically_idempotent(lab, estimator, catalog):
    oracle = estimator.as_oracle(catalog.parse("qa:ln"))
    report = lab.check_asymptotic_idempotency(oracle, WeightedSample.of(1.0), 2.0)
    assert report.verdict == Verdict.PASS
    assert report.metrics["gaps"][-1][1] <= 1e-3


def test_schedule_must_be_positive(lab):
    with pytest.raises(PreconditionError):
        lab.check_asymptotic_idempotency(builtin_oracle("arithmetic"), WeightedSample.of(0), 1,
                                         schedule=[0, 1])


def test_idempotency(lab):
    assert lab.check_idempotency(builtin_oracle("median"), _cfg(trials=30)).verdict == Verdict.PASS
    assert lab.check_idempotency(builtin_oracle("sum"), _cfg(trials=30)).verdict == Verdict.FAIL


# ---------------------------------------------------------------------------
# [T] / [Z] / 범위
# ---------------------------------------------------------------------------

def test_median_fails_t_property_with_plateau_witness(lab, catalog):
    report = lab.check_t_property(catalog.parse("median"), _cfg(pool=(0, 1), pool_range=None,
                                                                trials=5),
                                  samples=(WeightedSample.of(0, 1),))
    assert report.verdict == Verdict.FAIL
    witness = report.witnesses[0]
    assert witness.trial == 0
    assert (witness.lhs, witness.rhs) == (0.25, 0.75)


def test_identity_score_has_t_and_z(lab, catalog):
    psi = catalog.parse("qa:id")
    assert lab.check_t_property(psi, _cfg(trials=50)).verdict == Verdict.PASS
    assert lab.check_z_property(psi, _cfg(trials=50)).verdict == Verdict.PASS


def test_step_score_fails_z_property(lab, catalog):
    report = lab.check_z_property(catalog.parse("step"), _cfg(trials=5),
                                  samples=(WeightedSample.of(0, 1),))
    assert report.verdict == Verdict.FAIL
    assert abs(abs(report.witnesses[0].lhs) - 1.0) <= 1e-12


def test_range_coverage(lab):
    oracle = builtin_oracle("arithmetic")
    pool = (0.1, 5.0, 10.0)
    covered = lab.check_range_coverage(oracle, pool, ParameterInterval(0.1, 10.0))
    assert covered.verdict == Verdict.PASS
    partial = lab.check_range_coverage(oracle, pool, ParameterInterval.real_line())
    assert partial.verdict == Verdict.INCONCLUSIVE
    assert partial.metrics == {"observed_min": 0.1, "observed_max": 10.0}


# ---------------------------------------------------------------------------
# 준산술평균
# ---------------------------------------------------------------------------

def test_arithmetic_satisfies_kolmogorov_axioms(lab):
    reports = lab.kolmogorov_suite(builtin_oracle("arithmetic"), _cfg(trials=50))
    assert [r.axiom for r in reports] == [
        Axiom.STRICT_MONOTONICITY, Axiom.CONTINUITY, Axiom.REFLEXIVITY, Axiom.REPLACEMENT,
    ]
    assert all(r.verdict == Verdict.PASS for r in reports)


def test_max_is_not_strictly_monotone(lab):
    reports = lab.kolmogorov_suite(builtin_oracle("max"), _cfg(trials=50))
    by_axiom = {r.axiom: r for r in reports}
    assert by_axiom[Axiom.STRICT_MONOTONICITY].verdict == Verdict.FAIL
    assert by_axiom[Axiom.REFLEXIVITY].verdict == Verdict.PASS


def test_kolmogorov_needs_an_interval(lab):
    with pytest.raises(PreconditionError):
        lab.kolmogorov_suite(builtin_oracle("arithmetic"), SamplerConfig(pool=(1, 2)))


def test_replacement_gap(lab):
    lhs, rhs = lab.replacement_gap(builtin_oracle("arithmetic"), [0, 2], [5])
    assert lhs == pytest.approx(7 / 3)
    assert rhs == pytest.approx(7 / 3)


def test_affine_generators_are_equivalent(lab):
    report = lab.check_generator_equivalence(
        log_generator(), affine_generator(log_generator(), 2.0, 1.0), _cfg(pool_range=(0.5, 5.0),
                                                                            trials=20)
    )
    assert report.verdict == Verdict.PASS
    assert report.metrics["fit_a"] == pytest.approx(0.5)
    assert report.metrics["fit_b"] == pytest.approx(-0.5)
    assert report.metrics["fit_residual"] <= 1e-9


def test_different_generators_are_not_equivalent(lab):
    report = lab.check_generator_equivalence(
        log_generator(), identity_generator(), _cfg(pool_range=(0.5, 5.0), trials=20),
        cases=(WeightedSample.of(1.0, 4.0),),
    )
    assert report.verdict == Verdict.FAIL
    assert report.witnesses[0].lhs == pytest.approx(2.0)
    assert report.witnesses[0].rhs == pytest.approx(2.5)


# ---------------------------------------------------------------------------
# 결정성
# ---------------------------------------------------------------------------

def test_same_seed_gives_same_report(estimator):
    oracle = builtin_oracle("arithmetic")
    first = AxiomLab(estimator).check_internality(oracle, _cfg(seed=11), strict=True)
    second = AxiomLab(estimator, n_jobs=2).check_internality(oracle, _cfg(seed=11), strict=True)
    assert first.to_dict() == second.to_dict()
