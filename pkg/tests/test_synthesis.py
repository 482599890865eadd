import pytest

from domain.models import (
    CombinationTerm,
    InfeasibilityCertificate,
    ParameterInterval,
    PsiTable,
    WeightedSample,
)
from domain.enums import Membership
from domain.errors import PreconditionError
from dataio.psi_table_store import PsiTableStore
from service.oracles import builtin_oracle, table_oracle
from service.proofkit import PsiSynthesizer, SemigroupModel
from service.psi_catalog import PsiCatalog

ALPHABET = (1, 2, 3, 4)
MAX_SIZE = 6
GRID = ParameterInterval(1.0, 4.0).interior_grid(13)
SPACING = 3.0 / 14


@pytest.fixture
def semigroup() -> SemigroupModel:
    return SemigroupModel()


@pytest.fixture
def synthesizer(semigroup) -> PsiSynthesizer:
    return PsiSynthesizer(semigroup)


@pytest.fixture
def arithmetic_table(synthesizer) -> PsiTable:
    table = synthesizer.synthesize_psi(builtin_oracle("arithmetic"), ALPHABET, GRID, MAX_SIZE)
    assert isinstance(table, PsiTable)
    return table


def test_arithmetic_mean_is_separable(arithmetic_table):
    assert arithmetic_table.observations == ALPHABET
    assert arithmetic_table.theta_grid == GRID
    assert arithmetic_table.max_size == MAX_SIZE
    assert all(m > 0 for m in arithmetic_table.margins)
    for row in arithmetic_table.values:
        assert all(-1.0 - 1e-9 <= v <= 1.0 + 1e-9 for v in row)


def test_synthesized_table_passes_verification(synthesizer, arithmetic_table):
    verification = synthesizer.verify_synthesis(
        arithmetic_table, builtin_oracle("arithmetic"), ALPHABET, MAX_SIZE
    )
    assert verification.passed
    # 평균 2.5 인 다중집합들만 격자 점 2.5 에서 경계로 빠진다
    assert verification.boundary_skipped > 0
    assert verification.checked + verification.boundary_skipped == 209 * len(GRID)


def test_table_oracle_tracks_the_mean(semigroup, arithmetic_table):
    oracle = table_oracle(arithmetic_table)
    mean = builtin_oracle("arithmetic")
    for sample in semigroup.enumerate_multisets(ALPHABET, MAX_SIZE):
        assert abs(oracle(sample) - mean(sample)) <= SPACING


def test_corrupted_table_fails_verification(synthesizer, arithmetic_table):
    j = len(GRID) - 1
    broken = arithmetic_table.with_value(4, j, -1.0)
    verification = synthesizer.verify_synthesis(broken, builtin_oracle("arithmetic"),
                                                ALPHABET, MAX_SIZE)
    assert not verification.passed
    assert j in verification.violating_grid_points
    assert verification.violations[0].expected_sign == 1


def test_verification_needs_full_alphabet(synthesizer, arithmetic_table):
    with pytest.raises(PreconditionError):
        synthesizer.verify_synthesis(arithmetic_table, builtin_oracle("arithmetic"),
                                     (1, 2, 5), 2)


def test_sum_yields_infeasibility_certificate(synthesizer):
    result = synthesizer.synthesize_psi(builtin_oracle("sum"), (0.2, 0.3), [0.4], 2)
    assert isinstance(result, InfeasibilityCertificate)
    assert result.t == 0.4
    assert result.recheck()
    sides = {term.side for term in result.combination}
    assert sides == {Membership.IN_A, Membership.IN_B}
    assert all(term.weight > 0 for term in result.combination)


def test_certificate_recheck_rejects_unbalanced_combination():
    certificate = InfeasibilityCertificate(
        t=0.4,
        combination=(
            CombinationTerm(WeightedSample.of(0.2), Membership.IN_A, 1),
            CombinationTerm(WeightedSample.of(0.3, 0.3), Membership.IN_B, 1),
        ),
    )
    assert not certificate.recheck()


def test_grid_must_increase(synthesizer):
    with pytest.raises(PreconditionError):
        synthesizer.synthesize_psi(builtin_oracle("arithmetic"), ALPHABET, [2.0, 1.5], 2)


def test_parallel_solving_matches_serial(semigroup, arithmetic_table):
    parallel = PsiSynthesizer(semigroup, n_jobs=2).synthesize_psi(
        builtin_oracle("arithmetic"), ALPHABET, GRID, MAX_SIZE
    )
    assert isinstance(parallel, PsiTable)
    assert parallel.values == arithmetic_table.values


def test_saved_table_loads_as_score_family(tmp_path, arithmetic_table):
    store = PsiTableStore()
    path = tmp_path / "psi_table.json"
    store.save(arithmetic_table, str(path))
    assert store.load(str(path)) == arithmetic_table

    psi = PsiCatalog(store).parse(f"table:{path}")
    assert psi.name == f"table:{path}"
    assert psi(3, GRID[4]) == arithmetic_table.values[2][4]
