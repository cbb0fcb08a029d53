"""
Tests for the run configuration schema
"""
import json
import math
from pathlib import Path

import pytest
from pydantic import ValidationError

from blochchain.exceptions import ConfigurationError
from blochchain.schemas import IntegratorSettings, OutputSettings, RunConfig, StateMode

CONFIG_DIR = Path(__file__).parent.parent / "configs"


def _with(data, section, **changes):
    updated = json.loads(json.dumps(data))
    updated[section].update(changes)
    return updated


class TestRunConfig:
    """Test run configuration validation"""

    def test_valid_config(self, run_config_data):
        config = RunConfig.model_validate(run_config_data)

        cfg = config.integrator_config()
        assert cfg.duration == pytest.approx(4 * math.pi)
        assert cfg.n_steps == 2000
        assert config.output.periods == [1]
        assert config.output.occupations_path == "occupations.csv"

    def test_defaults(self):
        config = RunConfig.model_validate(
            {"chain": {"n_nodes": 103, "field_strength": 0.2}, "packet": {"center": 78, "width": 6.0}}
        )

        assert config.coupling.variant.value == "static"
        assert config.output.periods == [1, 2]
        assert config.integrator_config().n_steps == 8000

    @pytest.mark.parametrize("section", ["chain", "coupling", "packet", "integrator", "output"])
    def test_unknown_keys_rejected(self, run_config_data, section):
        with pytest.raises(ValidationError):
            RunConfig.model_validate(_with(run_config_data, section, unexpected=1))

    def test_unknown_top_level_key(self, run_config_data):
        with pytest.raises(ValidationError):
            RunConfig.model_validate({**run_config_data, "extras": {}})

    def test_singular_uniform_amplitude(self, run_config_data):
        with pytest.raises(ValidationError, match="singular coupling"):
            RunConfig.model_validate(_with(run_config_data, "coupling", amplitude=0.6))

    def test_singular_eigenmode_amplitude(self, run_config_data):
        data = _with(run_config_data, "coupling", variant="eigenmode", amplitude=0.4)

        with pytest.raises(ValidationError, match="singular coupling"):
            RunConfig.model_validate(data)

    def test_packet_outside_chain(self, run_config_data):
        with pytest.raises(ValidationError):
            RunConfig.model_validate(_with(run_config_data, "packet", center=62))

    def test_periods_beyond_integration(self, run_config_data):
        with pytest.raises(ValidationError):
            RunConfig.model_validate(_with(run_config_data, "output", periods=[1, 2]))

    def test_zero_field_needs_explicit_grid(self, run_config_data):
        data = _with(run_config_data, "chain", field_strength=0.0)
        data["output"]["periods"] = []

        with pytest.raises(ValidationError):
            RunConfig.model_validate(data)

        data["integrator"] = {"step": 0.01, "duration": 2.0}
        assert RunConfig.model_validate(data).integrator_config().n_steps == 200

    def test_zero_field_rejects_record_periods(self, run_config_data):
        data = _with(run_config_data, "chain", field_strength=0.0)
        data["integrator"] = {"step": 0.01, "duration": 2.0}

        with pytest.raises(ValidationError):
            RunConfig.model_validate(data)

    def test_state_mode(self, run_config_data):
        assert not RunConfig.model_validate(run_config_data).use_mixed_state()
        assert RunConfig.model_validate(_with(run_config_data, "output", state="mixed")).use_mixed_state()
        assert RunConfig.model_validate(_with(run_config_data, "chain", dephasing_rate=0.05)).use_mixed_state()

    def test_pure_state_with_dephasing(self, run_config_data):
        data = _with(run_config_data, "chain", dephasing_rate=0.05)
        data["output"]["state"] = "pure"
        config = RunConfig.model_validate(data)

        with pytest.raises(ConfigurationError):
            config.use_mixed_state()


class TestRunConfigLoad:
    """Test reading config files"""

    def test_load(self, config_file):
        config = RunConfig.load(config_file())

        assert config.chain.n_nodes == 61

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            RunConfig.load(tmp_path / "missing.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")

        with pytest.raises(ConfigurationError):
            RunConfig.load(path)

    def test_load_embedded_config(self, tmp_path, run_config_data):
        """Test a run summary can be used as a config"""
        config = RunConfig.model_validate(run_config_data)
        path = tmp_path / "summary.json"
        path.write_text(json.dumps({"centers": {}, "config": config.model_dump(mode="json")}), encoding="utf-8")

        assert RunConfig.load(path) == config

    @pytest.mark.parametrize(
        "name, periods",
        [("static_chain", [1, 2]), ("static_dephasing", [1, 2]), ("resonant_uniform", [1]), ("eigenmode", [1])],
    )
    def test_shipped_configs(self, name, periods):
        """Test driven configs starting at the chain middle stop after one period"""
        config = RunConfig.load(CONFIG_DIR / f"{name}.json")

        assert config.chain.n_nodes == 103
        assert config.output.periods == periods
        assert config.integrator_config().n_steps == 4000 * max(periods)


class TestSettingsSections:
    """Test integrator and output sections"""

    def test_explicit_grid_needs_both_fields(self):
        with pytest.raises(ValidationError):
            IntegratorSettings(step=0.1)

    def test_record_periods_are_sorted(self):
        assert OutputSettings(periods=[2, 1, 2]).periods == [1, 2]

    def test_record_periods_positive(self):
        with pytest.raises(ValidationError):
            OutputSettings(periods=[0])

    def test_state_mode_values(self):
        assert OutputSettings(state="mixed").state == StateMode.MIXED
