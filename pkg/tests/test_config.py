"""Run-config parsing: the shipped files load, everything else is strict."""

from pathlib import Path

import pytest

from qarchsim.config import ConfigError, load_config, parse_config
from qarchsim.hamiltonians import Model

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def minimal(**overrides):
    data = {"benchmark": {"model": "nn_tfim", "rows": 3, "cols": 3}}
    data.update(overrides)
    return data


def test_shipped_configs_load():
    cfgs = {p.stem: load_config(p) for p in sorted(CONFIG_DIR.glob("*.toml"))}
    assert set(cfgs) == {"fermi_hubbard_10x10", "heisenberg_5x10",
                         "lr_tfim_10x10", "nn_tfim_10x10"}
    heis = cfgs["heisenberg_5x10"]
    assert heis.benchmark.model is Model.HEISENBERG_2D
    assert heis.benchmark.trotter_order == 6
    assert heis.benchmark.trotter_steps == 300
    assert heis.scale_factor == 300
    assert heis.t_count_override == 15_000_000
    lr = cfgs["lr_tfim_10x10"]
    assert lr.architecture.width_max == 3
    assert lr.benchmark.model is Model.TFIM_LR_2D
    for cfg in cfgs.values():
        assert cfg.architecture.code == "two_gross"
        assert cfg.architecture.factories == (1, 2, 3, 5, 10, 15, 25, 50)
        assert cfg.simulation.seeds == 10
        assert cfg.simulation.base_seed == 20240901
        assert cfg.benchmark.precision == 1e-10


def test_defaults_from_minimal_config():
    cfg = parse_config(minimal())
    assert cfg.name == "nn_tfim_3x3"
    assert cfg.t_count_override is None
    assert cfg.architecture.width_max is None
    assert cfg.simulation.seeds == 10
    assert cfg.benchmark.trotter_steps == 1


def test_unknown_keys_are_rejected_with_path():
    with pytest.raises(ConfigError, match="config.extra"):
        parse_config(minimal(extra={}))
    with pytest.raises(ConfigError, match="benchmark.typo"):
        parse_config({"benchmark": {"model": "nn_tfim", "rows": 3, "cols": 3,
                                    "typo": 1}})
    with pytest.raises(ConfigError, match="simulation.seed"):
        parse_config(minimal(simulation={"seed": 4}))


def test_missing_required_fields():
    with pytest.raises(ConfigError, match="benchmark"):
        parse_config({})
    with pytest.raises(ConfigError, match="benchmark.rows"):
        parse_config({"benchmark": {"model": "nn_tfim", "cols": 3}})


def test_bool_is_not_an_int():
    with pytest.raises(ConfigError, match="wrong type"):
        parse_config(minimal(simulation={"seeds": True}))


def test_unknown_model_and_code():
    with pytest.raises(ConfigError, match="unknown model"):
        parse_config({"benchmark": {"model": "ising", "rows": 3, "cols": 3}})
    with pytest.raises(ConfigError, match="unknown code"):
        parse_config(minimal(architecture={"code": "steane"}))
    with pytest.raises(ConfigError, match="unknown architecture"):
        parse_config(minimal(architecture={"architectures": ["teleport"]}))


def test_range_checks():
    with pytest.raises(ConfigError, match="factories"):
        parse_config(minimal(architecture={"factories": [0]}))
    with pytest.raises(ConfigError, match="discard_rate"):
        parse_config(minimal(architecture={"discard_rate": 1.0}))
    with pytest.raises(ConfigError, match="width_max"):
        parse_config(minimal(architecture={"width_max": 0}))
    with pytest.raises(ConfigError, match="seeds"):
        parse_config(minimal(simulation={"seeds": 0}))
    with pytest.raises(ConfigError, match="t_count_override"):
        parse_config(minimal(synthesis={"t_count_override": 0}))


def test_override_must_split_across_steps():
    data = {"benchmark": {"model": "nn_tfim", "rows": 3, "cols": 3,
                          "trotter_steps": 3},
            "synthesis": {"t_count_override": 100}}
    with pytest.raises(ConfigError, match="divide evenly"):
        parse_config(data)
    data["synthesis"]["t_count_override"] = 99
    assert parse_config(data).t_count_override == 99


def test_invalid_toml_reports_path(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[benchmark\nmodel = 'nn_tfim'")
    with pytest.raises(ConfigError, match="invalid TOML"):
        load_config(bad)
