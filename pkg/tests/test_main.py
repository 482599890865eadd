import dataclasses
import json

import pytest

from config.settings import Settings
from container import create_container
from domain.models import ParameterInterval, RunConfig
from domain.enums import Axiom, Command, ReportFormat
from domain.errors import ConfigError
from main import (
    Application,
    build_parser,
    build_run_config,
    build_settings,
    main,
    parse_axioms,
    parse_interval,
    parse_tol,
)
from tests.mocks import MockReportWriter


def _config(argv: list[str]):
    args = build_parser().parse_args(argv)
    settings = build_settings(args)
    return build_run_config(args, settings), settings


def test_parse_tol():
    assert parse_tol("root_abs_tol=1e-10, zero_tol=1e-9") == {
        "root_abs_tol": "1e-10",
        "zero_tol": "1e-9",
    }
    assert parse_tol(None) == {}
    with pytest.raises(ConfigError):
        parse_tol("root_abs_tol")


def test_parse_axioms():
    assert parse_axioms("symmetry, t-property") == (Axiom.SYMMETRY, Axiom.T_PROPERTY)
    with pytest.raises(ConfigError):
        parse_axioms("replacement")
    with pytest.raises(ConfigError):
        parse_axioms("nonsense")


def test_parse_interval():
    assert parse_interval("0:inf") == ParameterInterval(0.0, float("inf"))
    assert parse_interval(None) is None
    with pytest.raises(ConfigError):
        parse_interval("1")


def test_synthesize_arguments():
    config, _ = _config(["synthesize", "--mean", "arithmetic", "--alphabet", "1,2,3,4",
                         "--max-size", "6", "--grid", "13", "--seed", "3"])
    assert config.command == Command.SYNTHESIZE
    assert config.alphabet == (1, 2, 3, 4)
    assert config.max_size == 6
    assert config.grid_size == 13
    assert config.sampler.seed == 3
    assert config.table_path == "psi_table.json"


def test_kolmogorov_default_interval():
    config, _ = _config(["kolmogorov", "--mean", "geometric"])
    assert config.theta_interval == ParameterInterval(0.1, 10.0)


def test_flags_override_tolerances():
    config, settings = _config(["estimate", "--psi", "qa:id", "--data", "d.csv",
                                "--tol", "root_abs_tol=1e-10", "--trials", "7",
                                "--format", "csv"])
    assert config.tolerances.root_abs_tol == 1e-10
    assert config.sampler.trials == 7
    assert config.format == ReportFormat.CSV
    assert settings.trials == 7


def test_audit_pool_replaces_range():
    config, _ = _config(["audit", "--mean", "arithmetic", "--pool", "1,2,5"])
    assert config.sampler.pool == (1, 2, 5)
    assert config.sampler.pool_range is None


def test_unknown_tolerance_key():
    args = build_parser().parse_args(["catalog", "list", "--tol", "nope=1"])
    with pytest.raises(ConfigError):
        build_settings(args)


def test_main_exits_with_error_on_bad_settings(capsys):
    with pytest.raises(SystemExit) as info:
        main(["catalog", "list", "--tol", "root_abs_tol=-1"])
    assert info.value.code == 1
    assert "설정 오류" in capsys.readouterr().err


def test_main_writes_catalog_report(tmp_path):
    path = tmp_path / "catalog.json"
    with pytest.raises(SystemExit) as info:
        main(["catalog", "list", "--out", str(path)])
    assert info.value.code == 0
    report = json.loads(path.read_text(encoding="utf-8"))
    assert report["command"] == "catalog"
    assert report["outcome"] == "success"


def test_main_estimate_from_file(tmp_path):
    data = tmp_path / "sample.csv"
    data.write_text("1\n2\n3\n", encoding="utf-8")
    out = tmp_path / "report.json"
    with pytest.raises(SystemExit) as info:
        main(["estimate", "--psi", "qa:id", "--data", str(data), "--out", str(out)])
    assert info.value.code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["metrics"]["estimate"]["theta"] == 2.0


def test_application_hands_report_to_writer():
    settings = Settings()
    writer = MockReportWriter()
    container = dataclasses.replace(create_container(settings), report_writer=writer)
    exit_code = Application(settings, container).run(RunConfig(Command.CATALOG))
    assert exit_code == 0
    report, path, fmt = writer.written[0]
    assert report.command == "catalog"
    assert path is None
    assert fmt == ReportFormat.JSON
    assert writer.render(writer.last, fmt) == "catalog:success"
