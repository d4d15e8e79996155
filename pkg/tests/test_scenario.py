import json

import numpy as np
import pytest

from neseek import LawKind, load_scenario
from neseek.data import bundled_path
from neseek.errors import ParseError, ValidationError
from neseek.scenario import AdvisoryWarning, scenario_from_dict


def spectrum_dict():
    return json.loads(bundled_path("spectrum_paper").read_text())


def quadratic_dict():
    return json.loads(bundled_path("quadratic_demo").read_text())


def test_bundled_spectrum_loads_with_published_parameters():
    with pytest.warns(AdvisoryWarning):
        s = load_scenario(bundled_path("spectrum_paper"))
    assert s.n == 5
    assert s.engine.alpha == 0.14
    assert s.engine.beta == 1.5
    assert s.engine.dt == 0.025
    assert s.engine.horizon == 20.0
    assert s.law is LawKind.STOCHASTIC
    assert s.trigger.kappa == 1.075
    assert s.trigger.a_floor == 0.05
    assert s.trigger.eta == 10.0
    assert np.array_equal(s.trigger.c, np.ones(5))
    assert np.array_equal(s.trigger.sigma, 0.8 / s.graph.in_degrees)
    assert s.runs == 100


def test_sigma_above_bound_warns_but_loads():
    with pytest.warns(AdvisoryWarning, match="sigma exceeds"):
        s = scenario_from_dict(quadratic_dict())
    assert s.advisories


def test_explicit_sigma_list():
    data = quadratic_dict()
    data["trigger"].pop("sigma_rule")
    data["trigger"]["sigma"] = [0.01, 0.02]
    s = scenario_from_dict(data)
    assert np.array_equal(s.trigger.sigma, [0.01, 0.02])


def test_wrong_x0_length():
    data = spectrum_dict()
    data["x0"] = [14, 12, 10, 4]
    with pytest.raises(ValidationError, match="x0"):
        scenario_from_dict(data)


def test_wrong_y0_shape():
    data = spectrum_dict()
    data["y0"] = [[0.0] * 5] * 4
    with pytest.raises(ValidationError, match="y0"):
        scenario_from_dict(data)


def test_infeasible_x0():
    data = spectrum_dict()
    data["x0"][0] = 99.0
    with pytest.raises(ValidationError, match="outside"):
        scenario_from_dict(data)


def test_unknown_law():
    data = spectrum_dict()
    data["trigger"]["law"] = "telepathy"
    with pytest.raises(ValidationError, match="telepathy"):
        scenario_from_dict(data)


def test_bad_kappa_named():
    data = spectrum_dict()
    data["trigger"]["kappa"] = 0.9
    with pytest.raises(ValidationError, match="kappa"):
        scenario_from_dict(data)


def test_missing_field_named():
    data = spectrum_dict()
    del data["engine"]["alpha"]
    with pytest.raises(ValidationError, match="alpha"):
        scenario_from_dict(data)


def test_ne_override_roundtrip():
    data = spectrum_dict()
    data["ne_override"] = [2.0, 3.987, 6.011, 8.018, 9.99]
    with pytest.warns(AdvisoryWarning):
        s = scenario_from_dict(data)
    assert np.allclose(s.ne_override, data["ne_override"])


def test_parse_error_has_location(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"adjacency": [[0, 1], [1, 0]],\n  "game": }')
    with pytest.raises(ParseError, match="broken.json:2"):
        load_scenario(bad)


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_scenario(tmp_path / "nope.json")


def test_mismatched_game_size():
    data = spectrum_dict()
    data["adjacency"] = [[0, 1], [1, 0]]
    with pytest.raises(ValidationError):
        scenario_from_dict(data)


def test_not_strongly_connected_is_advisory():
    data = quadratic_dict()
    data["adjacency"] = [[0, 1], [0, 0]]
    data["trigger"]["sigma"] = [0.01, 0.01]
    data["trigger"].pop("sigma_rule", None)
    with pytest.warns(AdvisoryWarning, match="strongly connected"):
        s = scenario_from_dict(data)
    assert any("strongly connected" in a for a in s.advisories)


def test_scalar_and_list_trigger_vectors_agree():
    data = quadratic_dict()
    data["trigger"]["c"] = [1.0, 1.0]
    data["trigger"]["delta0"] = [1.0, 1.0]
    with pytest.warns(AdvisoryWarning):
        from_list = scenario_from_dict(data)
    with pytest.warns(AdvisoryWarning):
        from_scalar = scenario_from_dict(quadratic_dict())
    assert np.array_equal(from_list.trigger.c, from_scalar.trigger.c)
    assert np.array_equal(from_list.trigger.delta0, from_scalar.trigger.delta0)


def test_runs_must_be_positive():
    data = quadratic_dict()
    data["runs"] = 0
    with pytest.raises(ValidationError, match="runs"):
        scenario_from_dict(data)
