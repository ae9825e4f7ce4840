import copy
import json

import pytest

from uavlink.bound import d_max
from uavlink.channel import derive_constants
from uavlink.config import (
    config_from_dict,
    config_to_dict,
    load_config,
    load_preset,
    preset_config,
)


def test_presets_carry_expected_defaults():
    dense = load_preset("dense_urban")
    assert dense.airspace.theta_min_deg == 45.0
    assert dense.airspace.r_min_m == 250.0
    assert dense.airspace.r_max_m == 400.0
    assert dense.fbl.blocklength == 200
    assert dense.fbl.epsilon == 1e-9
    assert dense.link.bandwidth_hz == 1e6
    assert dense.link.carrier_hz == 2.5e9
    sub = load_preset("suburban")
    assert sub.airspace.theta_min_deg == 30.0
    assert sub.scenario.a == 4.88


def test_unknown_preset_rejected():
    with pytest.raises(ValueError):
        preset_config("rural")


def test_round_trip_is_idempotent():
    data = preset_config("dense_urban")
    cfg = config_from_dict(data)
    dumped = config_to_dict(cfg)
    assert dumped == data
    assert config_from_dict(dumped) == cfg
    assert json.dumps(config_to_dict(config_from_dict(dumped))) == json.dumps(dumped)


def test_non_canonical_units_converge_after_one_cycle():
    data = preset_config("dense_urban")
    data["link"]["tx_power_db"] = -20.0
    data["link"]["tx_power_unit"] = "dBm"
    first = config_to_dict(config_from_dict(data))
    second = config_to_dict(config_from_dict(first))
    assert first == second
    assert first["link"]["tx_power_unit"] == "dBW"
    assert first["link"]["tx_power_db"] == -50.0


def test_total_noise_reading_converts_to_density():
    data = preset_config("dense_urban")
    data["link"]["noise_db"] = -113.0  # total over 1 MHz
    data["link"]["noise_unit"] = "dBm"
    cfg = config_from_dict(data)
    assert cfg.link.noise_psd_dbm_hz == pytest.approx(-173.0, abs=1e-12)


def test_unknown_section_rejected():
    data = preset_config("dense_urban")
    data["extra"] = {"x": 1}
    with pytest.raises(ValueError, match="unknown config sections"):
        config_from_dict(data)


def test_unknown_key_rejected():
    data = preset_config("dense_urban")
    data["scenario"]["typo"] = 1.0
    with pytest.raises(ValueError, match="unknown keys"):
        config_from_dict(data)


def test_missing_key_rejected():
    data = preset_config("dense_urban")
    del data["fbl"]["epsilon"]
    with pytest.raises(ValueError, match="missing keys"):
        config_from_dict(data)


def test_missing_section_rejected():
    data = preset_config("dense_urban")
    del data["airspace"]
    with pytest.raises(ValueError, match="missing"):
        config_from_dict(data)


def test_bad_units_rejected():
    data = preset_config("dense_urban")
    data["link"]["tx_power_unit"] = "watts"
    with pytest.raises(ValueError, match="tx_power_unit"):
        config_from_dict(data)
    data = preset_config("dense_urban")
    data["link"]["noise_unit"] = "K"
    with pytest.raises(ValueError, match="noise_unit"):
        config_from_dict(data)


def test_load_config_file(tmp_path):
    data = preset_config("suburban")
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    cfg = load_config(path)
    assert cfg == config_from_dict(data)


def test_overrides():
    cfg = load_preset("dense_urban")
    bumped = cfg.with_overrides(seed=77, n_samples=123)
    assert bumped.seed == 77
    assert bumped.n_samples == 123
    assert bumped.scenario == cfg.scenario


def _alternate_reading(name):
    # transmit power read as dBm, noise value read as total power in dBm
    data = copy.deepcopy(preset_config(name))
    data["link"]["tx_power_unit"] = "dBm"
    data["link"]["noise_unit"] = "dBm"
    return config_from_dict(data)


def test_distance_limit_under_alternate_unit_reading():
    # documents how the unit switches move d_max into the tens of kilometers
    dense = _alternate_reading("dense_urban")
    limit = d_max(derive_constants(dense.scenario, dense.link), dense.fbl)
    assert limit == pytest.approx(56427.15203853725, rel=1e-9)
    sub = _alternate_reading("suburban")
    limit_sub = d_max(derive_constants(sub.scenario, sub.link), sub.fbl)
    assert limit_sub == pytest.approx(71475.549676274926, rel=1e-9)
