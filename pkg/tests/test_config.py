"""
Tests for configuration loading and RunConfig precedence.
"""

import pytest
import yaml

from quotient_germs.config import DEFAULT_SEED, Config, RunConfig


def test_load_without_file(tmp_path, monkeypatch):
    """Test that a missing config file gives an empty configuration."""
    monkeypatch.chdir(tmp_path)
    config = Config.load()
    assert config.data == {}
    assert RunConfig.from_sources(config).seed == DEFAULT_SEED


def test_load_from_working_directory(tmp_path, monkeypatch):
    """Test discovery of .quotient_germs.yaml."""
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".quotient_germs.yaml").write_text("sweep:\n  max_n: 30\nrun:\n  jobs: 2\n")
    config = Config.load()
    assert config.get_nested("sweep.max_n") == 30
    assert config.get_nested("sweep.missing", "x") == "x"
    run = RunConfig.from_sources(config)
    assert run.max_n == 30
    assert run.jobs == 2


def test_flags_override_the_file(tmp_path):
    """Test defaults < file < flags, with None flags ignored."""
    path = tmp_path / "settings.yaml"
    path.write_text("sweep:\n  max_b: 4\noutput:\n  format: json\n")
    config = Config.load(str(path))
    run = RunConfig.from_sources(config, max_b=6, max_n=None, subcommand="sweep-6e")
    assert run.max_b == 6
    assert run.max_n == 200
    assert run.output_format == "json"
    assert run.json_output


def test_invalid_values_are_refused():
    """Test RunConfig validation."""
    with pytest.raises(ValueError):
        RunConfig(output_format="xml")
    with pytest.raises(ValueError):
        RunConfig(jobs=0)
    with pytest.raises(ValueError):
        RunConfig(max_n=-1)
    with pytest.raises(ValueError):
        RunConfig.from_sources(None, colour="red")


def test_malformed_file_falls_back_to_defaults(tmp_path):
    """Test that a broken YAML file is logged and ignored."""
    path = tmp_path / "bad.yaml"
    path.write_text("sweep: [unclosed\n")
    assert Config.load(str(path)).data == {}
    path.write_text("- just\n- a list\n")
    assert Config.load(str(path)).data == {}


def test_save_and_default(tmp_path):
    """Test save and the default file, which never overwrites."""
    config = Config({"sweep": {"max_n": 10, "max_b": 3}, "run": {"seed": 1}})
    assert config["sweep"] == {"max_n": 10, "max_b": 3}
    assert "run" in config

    target = tmp_path / "saved.yaml"
    assert config.save(str(target))
    assert yaml.safe_load(target.read_text())["run"]["seed"] == 1

    default = tmp_path / "default.yaml"
    assert Config().create_default_config(str(default))
    data = yaml.safe_load(default.read_text())
    assert data == Config.defaults().data
    assert data["run"]["seed"] == DEFAULT_SEED
    assert RunConfig.from_sources(Config(data)) == RunConfig()
    assert not Config().create_default_config(str(default))
