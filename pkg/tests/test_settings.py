import pytest

from config.settings import Settings


def test_defaults_validate():
    settings = Settings()
    settings.validate()
    tol = settings.tolerances()
    assert tol.root_abs_tol == settings.root_abs_tol
    assert tol.max_bisect_steps == settings.max_bisect_steps


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PSI_ZERO_TOL", "1e-6")
    monkeypatch.setenv("PSI_TRIALS", "17")
    settings = Settings.from_env()
    assert settings.zero_tol == 1e-6
    assert settings.trials == 17


def test_apply_overrides_keeps_field_types():
    settings = Settings()
    settings.apply_overrides({"root_abs_tol": "1e-10", "seed": "7"})
    assert settings.root_abs_tol == 1e-10
    assert settings.seed == 7


def test_apply_overrides_rejects_unknown_key():
    with pytest.raises(ValueError):
        Settings().apply_overrides({"nonsense": "1"})


@pytest.mark.parametrize("name, value", [
    ("bracket_growth", 1.0),
    ("zero_tol", 0.0),
    ("trials", 0),
    ("n_jobs", 0),
    ("report_format", "xml"),
])
def test_validate_rejects_bad_values(name, value):
    settings = Settings()
    setattr(settings, name, value)
    with pytest.raises(ValueError):
        settings.validate()


def test_sampler_uses_settings():
    settings = Settings()
    settings.seed = 3
    cfg = settings.sampler(pool=(1, 2, 3))
    assert cfg.seed == 3
    assert cfg.pool == (1, 2, 3)
    assert cfg.tolerance == settings.axiom_tol
