import pytest

from twk_config import Settings, load_settings


def test_defaults():
    settings = load_settings()
    assert settings == Settings()
    assert settings.step_limit == 10 ** 6
    assert settings.oracle_points == 100
    assert settings.oracle_tolerance == 1e-8


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("TWK_ORACLE_POINTS", "25")
    monkeypatch.setenv("TWK_SEED", "11")
    monkeypatch.setenv("TWK_LOG_LEVEL", "debug")
    settings = load_settings()
    assert settings.oracle_points == 25
    assert settings.seed == 11
    assert settings.log_level == "debug"


def test_env_file(tmp_path, monkeypatch):
    config = tmp_path / "calc.env"
    config.write_text("TWK_MAX_WORKERS=2\nTWK_OUTPUT_DIR=sweeps\n")
    monkeypatch.setenv("TWK_OUTPUT_DIR", "from-environment")
    settings = load_settings(str(config))
    assert settings.max_workers == 2
    assert settings.output_dir == "from-environment"


def test_default_env_file_in_working_directory(tmp_path):
    (tmp_path / ".env").write_text("TWK_STEP_LIMIT=5000\n")
    assert load_settings().step_limit == 5000


@pytest.mark.parametrize("name, value", [
    ("TWK_STEP_LIMIT", "0"),
    ("TWK_ORACLE_POINTS", "ten"),
    ("TWK_ORACLE_TOLERANCE", "-1e-3"),
    ("TWK_MAX_WORKERS", "0"),
    ("TWK_LOG_LEVEL", "LOUD"),
])
def test_invalid_values_name_the_variable(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError, match=name):
        load_settings()
