"""
Metamaterial permittivity presets, as plain scenario documents

All four approximate a constant target eps_t = -1 with w(x) = 1/x and the
high-frequency permittivity eps_inf = 1 fixing b. Copy a dict, edit it and
hand it to scenario_io.scenario_from_dict to run a variant.
"""

import copy

# reference hat spacing used when reporting mass amplitudes (0.06 / 100)
REFERENCE_SPACING = 0.0006

PASSIVE_5_1 = {
    "label": "passive_5_1",
    "symmetric": True,
    "omega": [[0.99, 1.01]],
    "target": {"kind": "constant_permittivity", "eps_t": -1.0},
    "weight": {"kind": "inverse"},
    "norm": "inf",
    "region_pos": {"intervals": [[0.97, 1.03]], "points": [0.0]},
    "region_neg": {"intervals": [], "points": []},
    "basis": {"count": 100, "order": 2},
    "b_fixed": 1.0,
    "sum_rules": [],
    "metadata": {"eps_inf": 1.0, "eps_t": -1.0, "B": 0.02,
                 "reference_spacing": REFERENCE_SPACING},
}

NONPASSIVE_5_2 = {
    "label": "nonpassive_5_2",
    "symmetric": True,
    "omega": [[0.99, 1.01]],
    "target": {"kind": "constant_permittivity", "eps_t": -1.0},
    "weight": {"kind": "inverse"},
    "norm": "inf",
    "region_pos": {"intervals": [], "points": [0.0]},
    "region_neg": {"intervals": [[0.97, 0.99], [1.01, 1.03]], "points": []},
    "basis": {"count": 100, "order": 2},
    "b_fixed": 1.0,
    "sum_rules": [],
    "metadata": {"eps_inf": 1.0, "eps_t": -1.0, "B": 0.02,
                 "reference_spacing": REFERENCE_SPACING},
}

POINTMASS_5_3 = {
    "label": "pointmass_5_3",
    "symmetric": True,
    "omega": [[0.99, 1.01]],
    "target": {"kind": "constant_permittivity", "eps_t": -1.0},
    "weight": {"kind": "inverse"},
    "norm": "inf",
    "region_pos": {"intervals": [], "points": [0.0]},
    "region_neg": {"intervals": [], "points": [0.971, 1.029]},
    "basis": None,
    "b_fixed": 1.0,
    "sum_rules": [],
    "metadata": {"eps_inf": 1.0, "eps_t": -1.0, "B": 0.02, "x_u": 1.029, "centre": 1.0,
                 "reference_spacing": REFERENCE_SPACING},
}

SUMRULE_5_4 = {
    "label": "sumrule_5_4",
    "symmetric": True,
    "omega": [[0.9, 1.1]],
    "target": {"kind": "constant_permittivity", "eps_t": -1.0},
    "weight": {"kind": "inverse"},
    "norm": "inf",
    "region_pos": {"intervals": [[0.01, 0.9], [1.5, 2.0]], "points": []},
    "region_neg": {"intervals": [[1.1, 1.5]], "points": []},
    "basis": {"count": 1000, "order": 2},
    "b_fixed": 1.0,
    # a_1 - b_1 = eps_s - eps_inf
    "sum_rules": [{"power": -2, "rhs": 2.0}],
    "metadata": {"eps_inf": 1.0, "eps_t": -1.0, "eps_s": 3.0, "B": 0.2},
}

# same constraints as sumrule_5_4, measure restricted to two point masses
SUMRULE_5_4_TWO_MASSES = {
    **SUMRULE_5_4,
    "label": "sumrule_5_4_two_masses",
    "region_pos": {"intervals": [], "points": [0.469]},
    "region_neg": {"intervals": [], "points": [1.499]},
    "basis": None,
    "metadata": {**SUMRULE_5_4["metadata"], "reference_spacing": 1.99 / 1001},
}

PRESETS = {
    "passive_5_1": PASSIVE_5_1,
    "nonpassive_5_2": NONPASSIVE_5_2,
    "pointmass_5_3": POINTMASS_5_3,
    "sumrule_5_4": SUMRULE_5_4,
    "sumrule_5_4_two_masses": SUMRULE_5_4_TWO_MASSES,
}

# default sweep per preset: (axis, lo, hi, count)
SWEEP_DEFAULTS = {
    "passive_5_1": ("B", 0.02, 0.056, 10),
    "nonpassive_5_2": ("B", 0.02, 0.056, 10),
    "pointmass_5_3": ("x_u", 1.012, 1.06, 9),
    "sumrule_5_4": ("eps_s", 2.0, 6.0, 9),
    "sumrule_5_4_two_masses": ("eps_s", 2.0, 6.0, 9),
}


def get_preset(name):
    """Deep copy of a preset document."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return copy.deepcopy(PRESETS[name])
