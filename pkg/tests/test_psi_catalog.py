import math

import pytest
from hypothesis import given, settings, strategies as st

from domain.models import ParameterInterval, PsiTable, WeightedSample
from domain.enums import Claim, Monotonicity
from domain.errors import PreconditionError, PsiSpecError, TableFormatError
from dataio.psi_table_store import PsiTableStore
from service.psi_catalog import (
    PsiCatalog,
    affine_generator,
    identity_generator,
    log_generator,
    power_generator,
    qa_mean,
    qa_score,
    reciprocal_generator,
)

positive_values = st.floats(min_value=0.1, max_value=10.0, allow_nan=False)


@pytest.fixture
def catalog() -> PsiCatalog:
    return PsiCatalog(PsiTableStore())


def test_huber_spec(catalog):
    psi = catalog.parse("huber:1.5")
    assert psi.name == "huber:1.5"
    assert psi(10.0, 0.0) == 1.5
    assert psi(0.0, 10.0) == -1.5
    assert psi(1.0, 0.5) == 0.5
    assert psi.claims == frozenset({Claim.C})


def test_log_spec_is_geometric_score(catalog):
    psi = catalog.parse("qa:ln")
    assert psi.domain == ParameterInterval(0.0, math.inf)
    assert psi(math.e, 1.0) == pytest.approx(1.0)
    assert psi.claims == frozenset({Claim.C, Claim.T, Claim.Z})


def test_power_zero_is_rejected(catalog):
    with pytest.raises(PsiSpecError):
        catalog.parse("qa:pow:0")


def test_negative_power_is_decreasing(catalog):
    g = catalog.parse_generator("pow:-1")
    assert g.monotonicity == Monotonicity.DECREASING
    assert g.sigma == -1
    # 감소 생성 함수도 스코어는 감소형
    psi = qa_score(g)
    assert psi(4.0, 2.0) > 0 > psi(1.0, 2.0)


@pytest.mark.parametrize("spec", ["nope", "huber:abc", "huber:inf", "qa:pow", "median:1", "table:"])
def test_malformed_specs(catalog, spec):
    with pytest.raises(PsiSpecError):
        catalog.parse(spec)


def test_table_spec_needs_a_store():
    with pytest.raises(PsiSpecError):
        PsiCatalog().parse("table:whatever.json")


def test_table_spec_loads_file(catalog, tmp_path):
    table = PsiTable(
        observations=(1, 2),
        theta_grid=(1.25, 1.5, 1.75),
        values=((-1.0, -1.0, -1.0), (1.0, 1.0, 1.0)),
        margins=(1.0, 1.0, 1.0),
        domain=ParameterInterval(1.0, 2.0),
    )
    path = tmp_path / "table.json"
    PsiTableStore().save(table, str(path))
    psi = catalog.parse(f"table:{path}")
    assert psi.name == f"table:{path}"
    assert psi(2, 1.3) == 1.0
    assert psi.claims == frozenset({Claim.T})
    with pytest.raises(PreconditionError):
        psi(3, 1.3)


def test_broken_table_file(catalog, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(TableFormatError):
        catalog.parse(f"table:{path}")


def test_list_families_has_claims(catalog):
    names = {psi.name for psi in catalog.list_families()}
    assert {"qa:id", "qa:ln", "qa:recip", "huber:1", "arctan", "median", "step"} <= names


def test_median_and_step_scores(catalog):
    median = catalog.parse("median")
    assert median(1.0, 0.5) == 1.0
    assert median(1.0, 1.0) == 0.0
    step = catalog.parse("step")
    assert step(1.0, 0.5) == 1.0
    assert step(1.0, 1.0) == -2.0


@pytest.mark.parametrize("factory", [
    identity_generator,
    log_generator,
    reciprocal_generator,
    lambda: power_generator(2.0),
    lambda: power_generator(-1.0),
])
def test_generators_are_valid(factory):
    factory().validate()


def test_power_generator_requires_nonzero():
    with pytest.raises(ValueError):
        power_generator(0.0)


def test_affine_generator_flips_direction():
    g = affine_generator(log_generator(), -2.0, 1.0)
    assert g.monotonicity == Monotonicity.DECREASING
    g.validate()


def test_qa_mean_known_values():
    sample = WeightedSample.of(2.0, 8.0)
    assert qa_mean(identity_generator(), sample) == pytest.approx(5.0)
    assert qa_mean(log_generator(), sample) == pytest.approx(4.0)
    assert qa_mean(reciprocal_generator(), WeightedSample.of(2.0, 6.0)) == pytest.approx(3.0)


def test_qa_mean_rejects_values_outside_interval():
    with pytest.raises(PreconditionError):
        qa_mean(log_generator(), WeightedSample.of(-1.0, 2.0))


@settings(max_examples=50)
@given(st.lists(positive_values, min_size=1, max_size=10), st.floats(min_value=0.5, max_value=5))
def test_affine_generator_gives_same_mean(values, a):
    sample = WeightedSample.of(*values)
    base = log_generator()
    assert qa_mean(affine_generator(base, a, 3.0), sample) == pytest.approx(
        qa_mean(base, sample), rel=1e-9
    )


@pytest.mark.parametrize("spec, outside", [("qa:ln", 0.0), ("qa:recip", -2.0), ("qa:pow:0.5", 0.0)])
def test_generator_score_rejects_observation_outside_interval(catalog, spec, outside):
    psi = catalog.parse(spec)
    with pytest.raises(PreconditionError):
        psi(outside, 1.0)


@pytest.mark.parametrize("spec", ["qa:pow:400", "qa:pow:-400"])
def test_unusable_power_generator_is_rejected(catalog, spec):
    # 검사 격자 위에서 넘침 또는 0 으로 떨어져 강단조성이 깨진다
    with pytest.raises(PsiSpecError):
        catalog.parse(spec)


def test_parsed_generators_pass_validation(catalog):
    for spec in ("id", "ln", "recip", "pow:2", "pow:-1", "pow:0.5"):
        catalog.parse_generator(spec).validate()


@pytest.mark.parametrize("spec", ["qa:id", "huber:1", "arctan", "median", "step"])
def test_numeric_scores_reject_symbols(catalog, spec):
    with pytest.raises(PreconditionError):
        catalog.parse(spec)("a", 0.5)
