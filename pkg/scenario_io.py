"""
Scenario documents (JSON / dict) <-> Scenario objects

Schema errors name the offending field; JSON syntax errors carry line and column.
"""

import json
import math
from pathlib import Path

import numpy as np

from approx import (
    BasisSpec,
    ConstantPermittivity,
    InverseWeight,
    Region,
    SampledTarget,
    SampledWeight,
    Scenario,
    UnitWeight,
)
from errors import InvalidArgumentError, SchemaError
from representation import read_json_document

KNOWN_FIELDS = {
    "label", "symmetric", "omega", "target", "weight", "norm", "region_pos",
    "region_neg", "basis", "b_fixed", "b_bounds", "density_bounds", "sum_rules",
    "samples_per_cell", "metadata",
}


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"expected a number, got {value!r}", field=field)
    if not math.isfinite(value):
        raise SchemaError("number must be finite", field=field)
    return float(value)


def _optional_number(value, field):
    return None if value is None else _number(value, field)


def _intervals(value, field):
    if not isinstance(value, list):
        raise SchemaError("expected a list of [lo, hi] pairs", field=field)
    out = []
    for i, pair in enumerate(value):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError("expected a [lo, hi] pair", field=f"{field}[{i}]")
        lo = _number(pair[0], f"{field}[{i}][0]")
        hi = _number(pair[1], f"{field}[{i}][1]")
        if not hi > lo:
            raise SchemaError(f"interval [{lo}, {hi}] is empty", field=f"{field}[{i}]")
        out.append((lo, hi))
    return tuple(out)


def _region(value, field):
    if value is None:
        return Region()
    if not isinstance(value, dict):
        raise SchemaError("expected an object with intervals and points", field=field)
    intervals = _intervals(value.get("intervals", []), f"{field}.intervals")
    points = value.get("points", [])
    if not isinstance(points, list):
        raise SchemaError("expected a list of numbers", field=f"{field}.points")
    points = tuple(_number(p, f"{field}.points[{i}]") for i, p in enumerate(points))
    return Region(intervals=intervals, points=points)


def _target(value):
    if not isinstance(value, dict) or "kind" not in value:
        raise SchemaError("expected an object with a 'kind'", field="target")
    kind = value["kind"]
    if kind == "constant_permittivity":
        return ConstantPermittivity(_number(value.get("eps_t"), "target.eps_t"))
    if kind == "samples":
        x = _numbers(value.get("x", []), "target.x")
        re = _numbers(value.get("re", []), "target.re")
        im = _numbers(value.get("im", []), "target.im")
        if len(x) < 2 or len(re) != len(x) or len(im) != len(x):
            raise SchemaError("x, re and im need the same length (at least 2)", field="target")
        if np.any(np.diff(x) <= 0):
            raise SchemaError("sample abscissae must increase", field="target.x")
        return SampledTarget(x=x, values=re + 1j * im)
    raise SchemaError(f"unknown target kind {kind!r}", field="target.kind")


def _numbers(value, field):
    if not isinstance(value, list):
        raise SchemaError("expected a list of numbers", field=field)
    return np.array([_number(v, f"{field}[{i}]") for i, v in enumerate(value)])


def _weight(value):
    if value is None:
        return InverseWeight()
    kind = value.get("kind") if isinstance(value, dict) else None
    if kind == "inverse":
        return InverseWeight()
    if kind == "unit":
        return UnitWeight()
    if kind == "samples":
        x = _numbers(value.get("x", []), "weight.x")
        w = _numbers(value.get("w", []), "weight.w")
        if len(x) < 2 or len(w) != len(x):
            raise SchemaError("x and w need the same length (at least 2)", field="weight")
        if np.any(np.diff(x) <= 0):
            raise SchemaError("sample abscissae must increase", field="weight.x")
        if np.any(w <= 0):
            raise SchemaError("weight samples must be positive", field="weight.w")
        return SampledWeight(x=x, values=w)
    raise SchemaError(f"unknown weight {value!r}", field="weight")


def _norm(value):
    if value in ("inf", "Inf", "infinity", math.inf):
        return math.inf
    if value in (1, 2, "1", "2"):
        return float(value)
    raise SchemaError(f"norm must be 1, 2 or 'inf', got {value!r}", field="norm")


def scenario_from_dict(data):
    """Build a Scenario from a scenario document."""
    if not isinstance(data, dict):
        raise SchemaError("scenario document must be an object")
    unknown = sorted(set(data) - KNOWN_FIELDS)
    if unknown:
        raise SchemaError(f"unknown field(s) {', '.join(unknown)}", field=unknown[0])
    for key in ("label", "omega", "target"):
        if key not in data:
            raise SchemaError("missing required field", field=key)
    if not isinstance(data["label"], str) or not data["label"]:
        raise SchemaError("label must be a non-empty string", field="label")

    basis_spec = None
    basis = data.get("basis")
    if basis is not None:
        if not isinstance(basis, dict) or "count" not in basis:
            raise SchemaError("expected an object with count and order", field="basis")
        count = basis["count"]
        order = basis.get("order", 2)
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            raise SchemaError("count must be a positive integer", field="basis.count")
        if not isinstance(order, int) or isinstance(order, bool) or order < 2:
            raise SchemaError("order must be an integer >= 2", field="basis.order")
        support = None
        if basis.get("support") is not None:
            support = _intervals([basis["support"]], "basis.support")[0]
        basis_spec = BasisSpec(count=count, order=order, support=support)

    sum_rules = []
    for i, row in enumerate(data.get("sum_rules", []) or []):
        if not isinstance(row, dict):
            raise SchemaError("expected an object with power and rhs", field=f"sum_rules[{i}]")
        power = row.get("power")
        if not isinstance(power, int) or isinstance(power, bool):
            raise SchemaError("power must be an integer", field=f"sum_rules[{i}].power")
        sum_rules.append((power, _number(row.get("rhs"), f"sum_rules[{i}].rhs")))

    density = data.get("density_bounds") or {}
    if not isinstance(density, dict):
        raise SchemaError("expected an object with lower and upper", field="density_bounds")
    b_bounds = data.get("b_bounds") or [None, None]
    if not isinstance(b_bounds, list) or len(b_bounds) != 2:
        raise SchemaError("expected a [lower, upper] pair", field="b_bounds")
    symmetric = data.get("symmetric", True)
    if not isinstance(symmetric, bool):
        raise SchemaError(f"expected true or false, got {symmetric!r}", field="symmetric")
    samples = data.get("samples_per_cell")
    if samples is not None and (not isinstance(samples, int) or samples < 2):
        raise SchemaError("samples_per_cell must be an integer >= 2", field="samples_per_cell")
    metadata = data.get("metadata", {}) or {}
    if not isinstance(metadata, dict):
        raise SchemaError("metadata must be an object", field="metadata")

    try:
        return Scenario(
            label=data["label"],
            omega=_intervals(data["omega"], "omega"),
            target=_target(data["target"]),
            weight=_weight(data.get("weight")),
            norm_p=_norm(data.get("norm", "inf")),
            region_pos=_region(data.get("region_pos"), "region_pos"),
            region_neg=_region(data.get("region_neg"), "region_neg"),
            basis_spec=basis_spec,
            symmetric=symmetric,
            b_fixed=_optional_number(data.get("b_fixed"), "b_fixed"),
            b_bounds=(
                -math.inf if b_bounds[0] is None else _number(b_bounds[0], "b_bounds[0]"),
                math.inf if b_bounds[1] is None else _number(b_bounds[1], "b_bounds[1]"),
            ),
            density_lower=_optional_number(density.get("lower"), "density_bounds.lower"),
            density_upper=_optional_number(density.get("upper"), "density_bounds.upper"),
            sum_rule_rows=tuple(sum_rules),
            samples_per_cell=samples,
            metadata=dict(metadata),
        )
    except InvalidArgumentError as e:
        raise SchemaError(str(e)) from e


def scenario_to_dict(scenario):
    basis = None
    if scenario.basis_spec is not None:
        basis = {"count": scenario.basis_spec.count, "order": scenario.basis_spec.order}
        if scenario.basis_spec.support is not None:
            basis["support"] = list(scenario.basis_spec.support)
    return {
        "label": scenario.label,
        "symmetric": scenario.symmetric,
        "omega": [list(iv) for iv in scenario.omega],
        "target": scenario.target.to_dict(),
        "weight": scenario.weight.to_dict(),
        "norm": "inf" if scenario.norm_p == math.inf else int(scenario.norm_p),
        "region_pos": scenario.region_pos.to_dict(),
        "region_neg": scenario.region_neg.to_dict(),
        "basis": basis,
        "b_fixed": scenario.b_fixed,
        "b_bounds": [None if math.isinf(v) else v for v in scenario.b_bounds],
        "density_bounds": {"lower": scenario.density_lower, "upper": scenario.density_upper},
        "sum_rules": [{"power": r.power, "rhs": r.rhs} for r in scenario.sum_rule_rows],
        "samples_per_cell": scenario.samples_per_cell,
        "metadata": dict(scenario.metadata),
    }


def load_scenario(path):
    return scenario_from_dict(read_json_document(path))


def save_scenario(scenario, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(scenario_to_dict(scenario), f, indent=2, default=str)
    return path
