import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from domain.models import (
    AxiomReport,
    CombinationTerm,
    InfeasibilityCertificate,
    ParameterInterval,
    PsiTable,
    RunConfig,
    RunReport,
    SamplerConfig,
    Tolerances,
    WeightedSample,
    concat,
    replicate,
)
from domain.enums import Axiom, Command, Membership, Outcome, Verdict
from domain.errors import ConfigError

observations = st.integers(min_value=-50, max_value=50)
samples = st.lists(observations, min_size=1, max_size=8).map(lambda xs: WeightedSample.of(*xs))


# ---------------------------------------------------------------------------
# WeightedSample
# ---------------------------------------------------------------------------

def test_sample_merges_duplicates_into_multiplicities():
    sample = WeightedSample.of(3, 1, 3, 2)
    assert sample.entries == ((1, 1), (2, 1), (3, 2))
    assert sample.size == 4
    assert sample.multiplicity(3) == 2
    assert sample.multiplicity(7) == 0


def test_concat_adds_multiplicities():
    joint = concat(WeightedSample.of(1, 2), WeightedSample.of(2, 3))
    assert joint.entries == ((1, 1), (2, 2), (3, 1))


def test_replicate_scales_multiplicities():
    assert replicate(WeightedSample.of(1, 2), 3).entries == ((1, 3), (2, 3))


def test_replicate_rejects_zero():
    with pytest.raises(ValueError):
        WeightedSample.of(1).replicate(0)


def test_empty_sample_is_rejected():
    with pytest.raises(ValueError):
        WeightedSample(())


def test_non_positive_multiplicity_is_rejected():
    with pytest.raises(ValueError):
        WeightedSample(((1, 0),))


def test_symbols_sort_after_numbers():
    sample = WeightedSample.of("b", 2, "a", Fraction(1, 2))
    assert sample.distinct == (Fraction(1, 2), 2, "a", "b")
    assert not sample.is_numeric


def test_weighted_mean():
    assert WeightedSample.from_counts({1: 2, 4: 1}).weighted_mean() == 2.0


@given(samples, samples)
def test_concat_is_commutative(a, b):
    assert a.concat(b) == b.concat(a)


@given(samples, samples, samples)
def test_concat_is_associative(a, b, c):
    assert a.concat(b).concat(c) == a.concat(b.concat(c))


@given(st.lists(observations, min_size=1, max_size=8), st.randoms())
def test_sample_ignores_order(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    assert WeightedSample.of(*values) == WeightedSample.of(*shuffled)


@given(samples, st.integers(min_value=1, max_value=5))
def test_replicate_matches_repeated_concat(sample, n):
    expected = sample
    for _ in range(n - 1):
        expected = expected.concat(sample)
    assert sample.replicate(n) == expected


# ---------------------------------------------------------------------------
# ParameterInterval / Tolerances / SamplerConfig
# ---------------------------------------------------------------------------

def test_interval_from_string_accepts_infinity():
    interval = ParameterInterval.from_string("-inf:inf")
    assert interval == ParameterInterval.real_line()
    assert not interval.bounded_below and not interval.bounded_above


def test_interval_rejects_degenerate():
    with pytest.raises(ValueError):
        ParameterInterval(1.0, 1.0)


def test_interval_is_open():
    interval = ParameterInterval(0.0, 1.0)
    assert not interval.contains(0.0)
    assert interval.contains(0.5)
    assert not interval.contains(1.0)


def test_interior_grid_excludes_endpoints():
    grid = ParameterInterval(0.0, 4.0).interior_grid(3)
    assert grid == (1.0, 2.0, 3.0)


def test_default_seed_stays_inside():
    assert ParameterInterval(0.0, math.inf).default_seed() == 1.0
    assert ParameterInterval(2.0, 4.0).default_seed() == 3.0
    assert ParameterInterval.real_line().default_seed() == 0.0


def test_interval_round_trips_through_dict():
    interval = ParameterInterval(0.0, math.inf)
    assert ParameterInterval.from_dict(interval.to_dict()) == interval


def test_tolerance_defaults():
    tol = Tolerances()
    assert tol.bracket_growth == 2
    assert tol.root_abs_tol == 1e-12
    assert tol.plateau_width_tol == 1e-9
    assert tol.zero_tol == 1e-10
    assert tol.max_bracket_steps == 200
    assert tol.max_bisect_steps == 200


def test_tolerance_overrides_reject_unknown_key():
    assert Tolerances().with_overrides(zero_tol="1e-8").zero_tol == 1e-8
    with pytest.raises(ValueError):
        Tolerances().with_overrides(nonsense=1)


@pytest.mark.parametrize("kwargs", [
    {"bracket_growth": 1.0},
    {"root_abs_tol": 0.0},
    {"max_bisect_steps": 0},
])
def test_tolerance_validation(kwargs):
    with pytest.raises(ValueError):
        Tolerances(**kwargs)


def test_sampler_needs_pool_or_range():
    with pytest.raises(ValueError):
        SamplerConfig()
    assert SamplerConfig(pool=(1, 2)).pool == (1, 2)
    with pytest.raises(ValueError):
        SamplerConfig(pool_range=(1.0, math.inf))


# ---------------------------------------------------------------------------
# 보고서 / 증명서
# ---------------------------------------------------------------------------

def test_fail_report_requires_a_witness():
    with pytest.raises(ValueError):
        AxiomReport(axiom=Axiom.SYMMETRY, verdict=Verdict.FAIL, trials=1)


def test_certificate_recheck_is_exact():
    certificate = InfeasibilityCertificate(
        t=0.4,
        combination=(
            CombinationTerm(WeightedSample.of(0.2), Membership.IN_A, 1),
            CombinationTerm(WeightedSample.of(0.3), Membership.IN_A, 1),
            CombinationTerm(WeightedSample.of(0.2, 0.3), Membership.IN_B, 1),
        ),
    )
    assert certificate.recheck()
    assert "in A_t" in certificate.describe()

    broken = InfeasibilityCertificate(
        t=0.4,
        combination=(
            CombinationTerm(WeightedSample.of(0.2), Membership.IN_A, 2),
            CombinationTerm(WeightedSample.of(0.2, 0.3), Membership.IN_B, 1),
        ),
    )
    assert not broken.recheck()


def _table() -> PsiTable:
    return PsiTable(
        observations=(1, 2),
        theta_grid=(1.25, 1.5, 1.75),
        values=((-1.0, -1.0, -1.0), (1.0, 0.5, 0.25)),
        margins=(0.5, 0.5, 0.5),
        domain=ParameterInterval(1.0, 2.0),
    )


def test_table_score_sum_and_nearest_index():
    table = _table()
    assert table.score_sum(WeightedSample.from_counts({1: 1, 2: 2}), 1) == 0.0
    assert table.nearest_index(1.3) == 0
    # 동률이면 왼쪽
    assert table.nearest_index(1.375) == 0


def test_table_with_value_copies():
    table = _table()
    changed = table.with_value(2, 0, 9.0)
    assert changed.row(2) == (9.0, 0.5, 0.25)
    assert table.row(2) == (1.0, 0.5, 0.25)


def test_table_validates_shape():
    with pytest.raises(ValueError):
        PsiTable(
            observations=(1,),
            theta_grid=(0.5, 0.25),
            values=((1.0, 1.0),),
            margins=(0.1, 0.1),
            domain=ParameterInterval(0.0, 1.0),
        )


# ---------------------------------------------------------------------------
# RunConfig / RunReport
# ---------------------------------------------------------------------------

def test_run_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"command": Command.CATALOG, "colour": "red"})


def test_run_config_validates_per_command():
    with pytest.raises(ConfigError):
        RunConfig(command=Command.ESTIMATE, psi_spec="qa:id").validate()
    with pytest.raises(ConfigError):
        RunConfig(command=Command.KOLMOGOROV, mean_name="arithmetic",
                  theta_interval=ParameterInterval(0.0, math.inf)).validate()
    RunConfig(command=Command.CATALOG).validate()


def test_report_body_excludes_timing():
    report = RunReport(command="catalog", inputs={}, version="0", tolerances={},
                       outcome=Outcome.FALSIFIED, timing={"elapsed_seconds": 1.0})
    assert "timing" not in report.body()
    assert report.to_dict()["timing"] == {"elapsed_seconds": 1.0}
    assert report.exit_code == 2
