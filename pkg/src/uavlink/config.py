"""Run configuration: one structured file drives every estimator.

A config is a JSON object with sections scenario / link / airspace / fbl /
estimators (and an optional output section). Two presets carry the default
parameter sets for the bundled dense-urban and suburban environments.
Loading is strict: unknown or missing keys are rejected. Serialization is
canonical (power in dBW, noise as a dBm/Hz density), so a load/dump cycle
is idempotent.
"""

import json
import math
from dataclasses import dataclass, replace

from .channel import LinkBudget, Scenario
from .fbl_rate import FblConfig
from .geometry import Airspace

PRESET_NAMES = ("dense_urban", "suburban")

_SCENARIO_CONSTANTS = {
    "dense_urban": {"a": 12.08, "b": 0.11, "eta_los_db": 1.6, "eta_nlos_db": 23.0,
                    "theta_min_deg": 45.0},
    "suburban": {"a": 4.88, "b": 0.43, "eta_los_db": 0.1, "eta_nlos_db": 21.0,
                 "theta_min_deg": 30.0},
}


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run needs, validated on construction."""

    scenario: Scenario
    link: LinkBudget
    airspace: Airspace
    fbl: FblConfig
    n_theta: int
    n_dist: int
    n_samples: int
    seed: int
    shards: int
    output_dir: str

    def with_overrides(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)


def preset_config(name: str) -> dict:
    """Canonical config dict for a bundled preset."""
    if name not in _SCENARIO_CONSTANTS:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    env = _SCENARIO_CONSTANTS[name]
    return {
        "scenario": {
            "name": name,
            "a": env["a"],
            "b": env["b"],
            "eta_los_db": env["eta_los_db"],
            "eta_nlos_db": env["eta_nlos_db"],
        },
        "link": {
            "tx_power_db": -20.0,
            "tx_power_unit": "dBW",
            "noise_db": -173.0,
            "noise_unit": "dBm_per_Hz",
            "bandwidth_hz": 1e6,
            "carrier_hz": 2.5e9,
            "light_speed_m_s": 3e8,
        },
        "airspace": {
            "r_min_m": 250.0,
            "r_max_m": 400.0,
            "theta_min_deg": env["theta_min_deg"],
        },
        "fbl": {"blocklength": 200, "epsilon": 1e-9},
        "estimators": {"n_theta": 30, "n_dist": 30, "n_samples": 10_000,
                       "seed": 1, "shards": 1},
        "output": {"directory": "."},
    }


_SECTION_KEYS = {
    "scenario": {"name", "a", "b", "eta_los_db", "eta_nlos_db"},
    "link": {"tx_power_db", "tx_power_unit", "noise_db", "noise_unit",
             "bandwidth_hz", "carrier_hz", "light_speed_m_s"},
    "airspace": {"r_min_m", "r_max_m", "theta_min_deg"},
    "fbl": {"blocklength", "epsilon"},
    "estimators": {"n_theta", "n_dist", "n_samples", "seed", "shards"},
    "output": {"directory"},
}


def _strict_section(data: dict, section: str) -> dict:
    if section not in data:
        raise ValueError(f"config is missing the {section!r} section")
    got = data[section]
    expected = _SECTION_KEYS[section]
    unknown = set(got) - expected
    if unknown:
        raise ValueError(f"unknown keys in {section!r} section: {sorted(unknown)}")
    missing = expected - set(got)
    if missing:
        raise ValueError(f"missing keys in {section!r} section: {sorted(missing)}")
    return got


def config_from_dict(data: dict) -> RunConfig:
    """Build a validated RunConfig from a config dict; strict about keys."""
    known_sections = set(_SECTION_KEYS)
    unknown = set(data) - known_sections
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")

    sc = _strict_section(data, "scenario")
    li = _strict_section(data, "link")
    ai = _strict_section(data, "airspace")
    fb = _strict_section(data, "fbl")
    es = _strict_section(data, "estimators")
    out_dir = "."
    if "output" in data:
        out_dir = str(_strict_section(data, "output")["directory"])

    tx_power_dbw = float(li["tx_power_db"])
    unit = li["tx_power_unit"]
    if unit == "dBm":
        tx_power_dbw -= 30.0
    elif unit != "dBW":
        raise ValueError(f"tx_power_unit must be 'dBW' or 'dBm', got {unit!r}")

    noise_psd = float(li["noise_db"])
    nunit = li["noise_unit"]
    if nunit == "dBm":  # total power over the bandwidth
        noise_psd -= 10.0 * math.log10(float(li["bandwidth_hz"]))
    elif nunit != "dBm_per_Hz":
        raise ValueError(f"noise_unit must be 'dBm_per_Hz' or 'dBm', got {nunit!r}")

    return RunConfig(
        scenario=Scenario(
            name=str(sc["name"]), a=float(sc["a"]), b=float(sc["b"]),
            eta_los_db=float(sc["eta_los_db"]), eta_nlos_db=float(sc["eta_nlos_db"]),
        ),
        link=LinkBudget(
            tx_power_dbw=tx_power_dbw,
            noise_psd_dbm_hz=noise_psd,
            bandwidth_hz=float(li["bandwidth_hz"]),
            carrier_hz=float(li["carrier_hz"]),
            light_speed_m_s=float(li["light_speed_m_s"]),
        ),
        airspace=Airspace(
            r_min_m=float(ai["r_min_m"]), r_max_m=float(ai["r_max_m"]),
            theta_min_deg=float(ai["theta_min_deg"]),
        ),
        fbl=FblConfig(blocklength=int(fb["blocklength"]), epsilon=float(fb["epsilon"])),
        n_theta=int(es["n_theta"]),
        n_dist=int(es["n_dist"]),
        n_samples=int(es["n_samples"]),
        seed=int(es["seed"]),
        shards=int(es["shards"]),
        output_dir=out_dir,
    )


def config_to_dict(cfg: RunConfig) -> dict:
    """Canonical dict form of a RunConfig (dBW power, dBm/Hz noise density)."""
    return {
        "scenario": {
            "name": cfg.scenario.name,
            "a": cfg.scenario.a,
            "b": cfg.scenario.b,
            "eta_los_db": cfg.scenario.eta_los_db,
            "eta_nlos_db": cfg.scenario.eta_nlos_db,
        },
        "link": {
            "tx_power_db": cfg.link.tx_power_dbw,
            "tx_power_unit": "dBW",
            "noise_db": cfg.link.noise_psd_dbm_hz,
            "noise_unit": "dBm_per_Hz",
            "bandwidth_hz": cfg.link.bandwidth_hz,
            "carrier_hz": cfg.link.carrier_hz,
            "light_speed_m_s": cfg.link.light_speed_m_s,
        },
        "airspace": {
            "r_min_m": cfg.airspace.r_min_m,
            "r_max_m": cfg.airspace.r_max_m,
            "theta_min_deg": cfg.airspace.theta_min_deg,
        },
        "fbl": {"blocklength": cfg.fbl.blocklength, "epsilon": cfg.fbl.epsilon},
        "estimators": {
            "n_theta": cfg.n_theta,
            "n_dist": cfg.n_dist,
            "n_samples": cfg.n_samples,
            "seed": cfg.seed,
            "shards": cfg.shards,
        },
        "output": {"directory": cfg.output_dir},
    }


def load_config(path) -> RunConfig:
    """Load and validate a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def load_preset(name: str) -> RunConfig:
    return config_from_dict(preset_config(name))
