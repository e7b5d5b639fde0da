import json

import pytest

from sgqe import HBAR, MeasurementOutcome
from sgqe.config import REFERENCE_DEFAULTS, ConfigError, config_from_dict, figure_preset, load_config


def test_defaults_reproduce_reference_parameters():
    cfg = config_from_dict({"epsilon_T": 3.0})
    p = cfg.params
    assert p.mass == 1e-26 and p.epsilon == 1e8
    assert p.transit_time == pytest.approx(3e-8)
    assert cfg.t_over_T == pytest.approx(10.0)
    assert p.delta_x0 == pytest.approx(1e-6)
    assert cfg.outcome is MeasurementOutcome.ZERO_PHOTONS


def test_si_and_relative_inputs_must_agree():
    cfg = config_from_dict({"transit_time_s": 3e-8, "epsilon_T": 3.0, "x0_m": 1e-7,
                            "x0_over_lambda": 0.01})
    assert cfg.params.x0 == 1e-7
    with pytest.raises(ConfigError):
        config_from_dict({"transit_time_s": 3e-8, "epsilon_T": 2.0})


@pytest.mark.parametrize("doc", [
    {},
    {"epsilon_T": 3.0, "outcome": "two"},
    {"epsilon_T": 3.0, "t_over_T": -1},
    {"epsilon_T": 3.0, "grid": {"x_min_over_lambda": -1, "points": 256}},
    {"epsilon_T": 3.0, "grid": {"x_min_over_lambda": -1, "x_max_over_lambda": 1, "points": 100}},
    {"epsilon_T": 3.0, "wigner_x_points": 300},
    {"epsilon_T": 3.0, "mass_kg": "heavy"},
])
def test_rejected_documents(doc):
    with pytest.raises(ConfigError):
        config_from_dict(doc)


def test_invalid_physics_is_reported():
    with pytest.raises(ValueError):
        config_from_dict({"epsilon_T": 3.0, "delta_x0_over_lambda": 0.5})


@pytest.mark.parametrize("which, eps_T", [(2, 0.3), (3, 3.0), (4, 30.0)])
def test_presets(tmp_path, which, eps_T):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(figure_preset(which)))
    cfg = load_config(path)
    assert cfg.params.epsilon_T == pytest.approx(eps_T)
    assert cfg.grid.points == 4096
    top = cfg.p_grid.x_max / (HBAR * cfg.params.k)
    assert top > eps_T


def test_resolved_round_trip():
    cfg = config_from_dict(figure_preset(3))
    again = config_from_dict(cfg.resolved())
    assert again.params == cfg.params
    assert again.grid == cfg.grid
    assert again.t == pytest.approx(cfg.t)


def test_presets_do_not_mutate_defaults():
    figure_preset(4)
    assert "epsilon_T" not in REFERENCE_DEFAULTS
