import json

import pandas as pd
import pytest

import approx_pipeline
import run_history
from approx_pipeline import EXIT_CONFIG, EXIT_OK, RunConfig, main, parse_values
from errors import InvalidArgumentError

pytestmark = pytest.mark.usefixtures("isolated_outputs")

SMALL_SCENARIO = {
    "label": "small",
    "symmetric": True,
    "omega": [[0.8, 1.2]],
    "target": {"kind": "constant_permittivity", "eps_t": -1.0},
    "weight": {"kind": "inverse"},
    "norm": "inf",
    "region_pos": {"intervals": [[0.5, 1.5]], "points": [0.0]},
    "basis": {"count": 6, "order": 2},
    "b_fixed": 1.0,
}


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(SMALL_SCENARIO))
    return path


def test_parse_values_range():
    values = parse_values("0.02:0.056:10")
    assert len(values) == 10
    assert values[0] == pytest.approx(0.02)
    assert values[-1] == pytest.approx(0.056)


def test_parse_values_list():
    assert parse_values("1.0, 2.5,3") == [1.0, 2.5, 3.0]


@pytest.mark.parametrize("text", ["0.1:0.2", "a,b", "1:2:x"])
def test_parse_values_rejects(text):
    with pytest.raises(InvalidArgumentError):
        parse_values(text)


def test_run_config_needs_exactly_one_source():
    with pytest.raises(InvalidArgumentError):
        RunConfig(command="solve")
    with pytest.raises(InvalidArgumentError):
        RunConfig(command="solve", preset="passive_5_1", scenario_path="x.json")
    with pytest.raises(InvalidArgumentError):
        RunConfig(command="solve", preset="drude")
    assert RunConfig(command="history").preset is None


def test_show_config():
    assert main(["show-config"]) == EXIT_OK


def test_show_config_rejects_bad_solver(monkeypatch):
    monkeypatch.setattr(approx_pipeline.config, "SOLVER", "SIMPLEX")
    assert main(["show-config"]) == EXIT_CONFIG


def test_malformed_scenario_exits_with_config_status(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"label": "bad",\n "omega": [[1, 2]],\n "target": }')
    assert main(["solve", "--scenario", str(path), "--no-record"]) == EXIT_CONFIG
    assert "line 3" in capsys.readouterr().out


def test_unknown_field_exits_with_config_status(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**SMALL_SCENARIO, "colour": "red"}))
    assert main(["solve", "--scenario", str(path), "--no-record"]) == EXIT_CONFIG


@pytest.mark.parametrize("changes", [
    {"density_bounds": [0, 1]},
    {"b_bounds": 5},
    {"symmetric": "no"},
])
def test_mistyped_field_exits_with_config_status(tmp_path, capsys, changes):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**SMALL_SCENARIO, **changes}))
    assert main(["solve", "--scenario", str(path), "--no-record"]) == EXIT_CONFIG
    assert f"field '{next(iter(changes))}'" in capsys.readouterr().out


def test_solve_verify_and_history(scenario_file, tmp_path):
    out = tmp_path / "run"
    assert main(["solve", "--scenario", str(scenario_file), "--out", str(out)]) == EXIT_OK
    for name in ("rep.json", "residuals.csv", "scenario.json", "summary.json"):
        assert (out / name).exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["status"] == "optimal"
    assert summary["b"] == pytest.approx(1.0)
    assert len(pd.read_csv(out / "residuals.csv")) > 0

    check = tmp_path / "check"
    code = main(["verify", "--scenario", str(out / "scenario.json"),
                 "--rep", str(out / "rep.json"), "--out", str(check)])
    assert code == EXIT_OK
    report = json.loads((check / "verify.json").read_text())
    assert report["error"] == pytest.approx(report["recorded_error"], abs=1e-9)
    assert report["identity_residuals"]["0"] <= 1e-9

    history = run_history.get_run_history()
    assert list(history["scenario"]) == ["small"]
    assert history["status"].iloc[0] == "optimal"
    assert main(["history", "--scenario", "small"]) == EXIT_OK


def test_no_record_leaves_history_empty(scenario_file, tmp_path):
    assert main(["solve", "--scenario", str(scenario_file), "--out", str(tmp_path / "run"),
                 "--no-record"]) == EXIT_OK
    assert len(run_history.get_run_history()) == 0


def test_sweep_writes_table(scenario_file, tmp_path):
    out = tmp_path / "sweep"
    code = main(["sweep", "--scenario", str(scenario_file), "--axis", "B",
                 "--values", "0.3,0.2", "--out", str(out), "--no-record"])
    assert code == EXIT_OK
    frame = pd.read_csv(out / "sweep.csv")
    assert list(frame["value"]) == [0.2, 0.3]
    assert (frame["status"] == "optimal").all()


def test_sweep_without_axis_on_scenario_file(scenario_file):
    assert main(["sweep", "--scenario", str(scenario_file), "--no-record"]) == EXIT_CONFIG


def test_run_history_best_run(tmp_path):
    db = tmp_path / "runs.db"
    for error in (0.3, 0.1, 0.2):
        run_history.save_run({"command": "solve", "label": "s", "status": "optimal", "error": error},
                             db_path=str(db))
    run_history.save_run({"command": "solve", "label": "s", "status": "infeasible"}, db_path=str(db))
    best = run_history.get_best_run("s", db_path=str(db))
    assert best["error"].iloc[0] == 0.1
    assert len(run_history.get_run_history("s", limit=2, db_path=str(db))) == 2


def test_plots_are_written(scenario_file, tmp_path):
    out = tmp_path / "plotted"
    assert main(["solve", "--scenario", str(scenario_file), "--out", str(out),
                 "--plot", "--no-record"]) == EXIT_OK
    assert (out / "small_permittivity.png").exists()

    sweep_out = tmp_path / "plotted_sweep"
    assert main(["sweep", "--scenario", str(scenario_file), "--axis", "B", "--values", "0.2,0.3",
                 "--out", str(sweep_out), "--plot", "--no-record"]) == EXIT_OK
    assert (sweep_out / "small_sweep_B.png").exists()
