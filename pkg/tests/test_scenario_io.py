import json
import math

import numpy as np
import pytest

from approx import ConstantPermittivity, SampledTarget, SampledWeight, UnitWeight
from errors import SchemaError
from presets import PRESETS, get_preset
from scenario_io import load_scenario, save_scenario, scenario_from_dict, scenario_to_dict


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_survive_a_document_round_trip(name):
    scenario = scenario_from_dict(get_preset(name))
    assert scenario_from_dict(scenario_to_dict(scenario)) == scenario


def test_defaults_for_optional_fields():
    scenario = scenario_from_dict({
        "label": "minimal",
        "omega": [[1.0, 2.0]],
        "target": {"kind": "constant_permittivity", "eps_t": 2.0},
        "weight": {"kind": "unit"},
        "norm": 1,
    })
    assert scenario.symmetric
    assert scenario.norm_p == 1.0
    assert scenario.weight == UnitWeight()
    assert scenario.target == ConstantPermittivity(2.0)
    assert scenario.b_bounds == (-math.inf, math.inf)
    assert scenario.basis_spec is None
    assert scenario.sum_rule_rows == ()


def test_sampled_target():
    scenario = scenario_from_dict({
        "label": "table",
        "omega": [[1.0, 2.0]],
        "target": {"kind": "samples", "x": [1.0, 1.5, 2.0], "re": [0.0, 1.0, 2.0], "im": [0.0, 0.5, 0.0]},
    })
    assert isinstance(scenario.target, SampledTarget)
    np.testing.assert_allclose(scenario.target(np.array([1.25])), [0.5 + 0.25j])


def test_sampled_weight():
    weight = {"kind": "samples", "x": [0.9, 1.0, 1.1], "w": [2.0, 1.0, 0.5]}
    doc = get_preset("passive_5_1")
    doc["weight"] = weight
    scenario = scenario_from_dict(doc)
    assert isinstance(scenario.weight, SampledWeight)
    np.testing.assert_allclose(scenario.weight(np.array([0.95, 1.05])), [1.5, 0.75])
    assert scenario_to_dict(scenario)["weight"] == weight


def test_symmetric_must_be_a_boolean_not_a_truthy_string():
    doc = get_preset("passive_5_1")
    doc["symmetric"] = False
    assert not scenario_from_dict(doc).symmetric
    doc["symmetric"] = "no"
    with pytest.raises(SchemaError, match="true or false"):
        scenario_from_dict(doc)


def test_save_and_load(tmp_path):
    scenario = scenario_from_dict(get_preset("sumrule_5_4"))
    path = save_scenario(scenario, tmp_path / "nested" / "scenario.json")
    assert load_scenario(path) == scenario


@pytest.mark.parametrize("edit, field", [
    (lambda d: d.update(colour="red"), "colour"),
    (lambda d: d.pop("label"), "label"),
    (lambda d: d.update(norm=3), "norm"),
    (lambda d: d.update(omega=[[1.01, 0.99]]), "omega[0]"),
    (lambda d: d["region_neg"].update(points=[0.5, "x"]), "region_neg.points[1]"),
    (lambda d: d["basis"].update(count=0), "basis.count"),
    (lambda d: d.update(sum_rules=[{"power": "two", "rhs": 1.0}]), "sum_rules[0].power"),
    (lambda d: d["target"].update(kind="drude"), "target.kind"),
    (lambda d: d.update(samples_per_cell=1), "samples_per_cell"),
    (lambda d: d.update(density_bounds=[0, 1]), "density_bounds"),
    (lambda d: d.update(b_bounds=5), "b_bounds"),
    (lambda d: d.update(b_bounds=[0.0]), "b_bounds"),
    (lambda d: d.update(symmetric="no"), "symmetric"),
    (lambda d: d.update(weight={"kind": "samples", "x": [0.9, 1.1], "w": [1.0, -1.0]}), "weight.w"),
    (lambda d: d.update(weight={"kind": "samples", "x": 0.9, "w": [1.0]}), "weight.x"),
    (lambda d: d.update(target={"kind": "samples", "x": [0.9, 1.1], "re": 1.0, "im": [0, 0]}),
     "target.re"),
])
def test_schema_errors_name_the_field(edit, field):
    doc = get_preset("passive_5_1")
    edit(doc)
    with pytest.raises(SchemaError) as info:
        scenario_from_dict(doc)
    assert info.value.field == field
    assert f"field '{field}'" in str(info.value)


def test_odd_sum_rule_power_is_a_schema_error():
    doc = get_preset("sumrule_5_4")
    doc["sum_rules"] = [{"power": -1, "rhs": 1.0}]
    with pytest.raises(SchemaError, match="even"):
        scenario_from_dict(doc)


def test_json_syntax_error_reports_line(tmp_path):
    path = tmp_path / "scenario.json"
    text = json.dumps(get_preset("passive_5_1"), indent=2).replace('"norm": "inf"', '"norm": inf')
    path.write_text(text)
    with pytest.raises(SchemaError) as info:
        load_scenario(path)
    assert info.value.line == text.splitlines().index('  "norm": inf,') + 1
