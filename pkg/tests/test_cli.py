import json

import numpy as np
import pytest
from click.testing import CliRunner

from main import cli

COUNTEREXAMPLE_RIDGE = json.dumps({
    "direction": [1, 2, 0],
    "coefficients": [[-2, 0.5, 0.0], [-1, 0.5, 0.0], [1, 0.5, 0.0], [2, 0.5, 0.0]],
})


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, expect=0):
        result = runner.invoke(cli, [str(a) for a in args], env={"PCNN_LOG": "quiet", "PCNN_LOG_DIR": ""})
        assert result.exit_code == expect, result.output
        return json.loads(result.output) if expect == 0 else result

    return invoke


def test_factorize_inline_filter(run):
    out = run("factorize", "--json", '{"coefficients": [1, 2, 1], "period": 5}', "--s", 2)
    assert out["depth"] == 1
    assert out["residual"] <= 1e-12
    assert out["factors"][0]["period"] == 5


def test_factorize_rejects_narrow_edge(run):
    result = run("factorize", "--json", '{"coefficients": [1, 1], "period": 3}', "--s", 1, expect=1)
    assert "Error" in result.output


def test_lattice_check(run):
    assert run("lattice-check", "--generators", "[[1, 0, 0]]", "--u", "3,0,0")["member"] is True
    out = run("lattice-check", "--generators", "[[1, 0, 0]]", "--u", "1,2,0")
    assert out["member"] is False
    assert out["hnf_basis"] == [[1, 0, 0]]


def test_lower_bound(run):
    out = run("lower-bound", "--json", COUNTEREXAMPLE_RIDGE, "--generators", "[[1, 0, 0]]")
    assert out["epsilon"] == pytest.approx(1.0)
    assert out["member"] is False
    out = run("lower-bound", "--json", COUNTEREXAMPLE_RIDGE, "--generators", "[[1, 0, 0], [0, 1, 0]]")
    assert out["epsilon"] == 0.0


def test_lower_bound_reads_ridge_file(run, tmp_path):
    path = tmp_path / "ridge.json"
    path.write_text(COUNTEREXAMPLE_RIDGE)
    assert run("lower-bound", path, "--generators", "[[1, 0, 0]]")["epsilon"] == pytest.approx(1.0)


def test_counterexample(run):
    out = run("counterexample")
    assert out["epsilon"] == 1.0
    assert out["norm"] == pytest.approx(1.0, abs=1e-12)
    assert out["grid_gap"] <= 1e-6


def test_build_then_evaluate_network(run, tmp_path):
    out = run("build-ridge-net", "--seed", 0, "--d", 6, "--knots", 16, "--out", tmp_path,
              "--direction", "1,0,1,0,1,1")
    assert out["oracle_gap"] <= 1e-9
    net_path = tmp_path / "network.json"
    assert net_path.exists() and (tmp_path / "error_report.json").exists()
    assert json.loads((tmp_path / "knots.json").read_text())["pairs"]

    x = [0.1, 0.4, 0.2, 0.3, 0.05, 0.45]
    value = run("eval-net", net_path, "--x", ",".join(map(str, x)))[0]
    y = 0.1 + 0.2 + 0.05 + 0.45
    assert abs(value - np.cos(2 * np.pi * y)) <= 1.05 * out["knot_error"] + 1e-9

    points = tmp_path / "points.json"
    points.write_text(json.dumps([x, [0.0] * 6]))
    values = run("eval-net", net_path, "--points", points)
    assert values[0] == pytest.approx(value)
    assert values[1] == pytest.approx(1.0, abs=1e-9)


def test_eval_net_needs_points(run):
    net = '{"width": 3, "layers": [], "readout": [1, 0, 0]}'
    run("eval-net", "--json", net, expect=2)
    assert run("eval-net", "--json", net, "--x", "0.5,1,2") == [0.5]
    run("eval-net", "--json", net, "--x", "0.5,1", expect=1)


def test_relu_closure_writes_layer_fractions(run, tmp_path):
    net = json.dumps({
        "width": 3,
        "layers": [{"filter": {"coefficients": [1.0, 0.5]}, "bias": [0.1, 0.1, 0.1]}],
        "readout": [1, 0, 0],
    })
    out = run("relu-closure", "--json", net, "--generators", "[[1, 0]]", "--modes", "[[1, 0]]",
              "--grid", 16, "--out", tmp_path)
    assert out["passed"] is True
    assert len(out["layers"]) == 2
    assert (tmp_path / "closure.csv").exists()
    out = run("relu-closure", "--json", net, "--generators", "[[0, 1]]", "--modes", "[[1, 0]]", "--grid", 16)
    assert out["passed"] is False
    run("relu-closure", "--json", net, "--generators", "[[1, 0]]", "--modes", "[[1, 0]]", "--grid", 2, expect=1)


def test_convergence_writes_results(run, tmp_path):
    out = run("convergence", "--seed", 1, "--d", 6, "--knots", "8,16", "--out", tmp_path)
    assert out["rows"] == 8
    for name in ("results.csv", "results.json", "timings.csv", "convergence.dat"):
        assert (tmp_path / name).exists()
    errors = [r["value"] for r in json.loads((tmp_path / "results.json").read_text())
              if r["metric"] == "sup_error"]
    assert errors[0] > errors[1]


def test_experiments_need_a_seed(run, tmp_path):
    run("convergence", "--out", tmp_path, expect=1)


def test_experiment_config_file(run, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": 4, "d": 5, "knots": [8], "n_samples": 2000}))
    out = run("convergence", "--config", config, "--out", tmp_path / "out")
    assert out["rows"] == 4
    rows = json.loads((tmp_path / "out" / "results.json").read_text())
    assert {r["params"]["d"] for r in rows} == {5}


def test_dichotomy(run, tmp_path):
    run("dichotomy", "--seed", 0, "--d", 6, "--knots", "8,16", "--grid", 16, "--out", tmp_path)
    rows = json.loads((tmp_path / "results.json").read_text())
    by_metric = {(r["case"], r["metric"], r["n"]): r["value"] for r in rows}
    assert by_metric[("blocked", "epsilon", None)] == pytest.approx(1.0)
    assert by_metric[("blocked", "floor_holds", None)] == 1.0
    assert by_metric[("approachable", "epsilon", None)] == 0.0
    assert by_metric[("approachable", "sup_error", 16)] < by_metric[("approachable", "sup_error", 8)]
    assert (tmp_path / "dichotomy.dat").exists()


def test_bad_log_level_fails_fast():
    result = CliRunner().invoke(cli, ["counterexample"], env={"PCNN_LOG": "loud"})
    assert result.exit_code == 1


def test_config_file_with_mismatched_box_fails(run, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": 1, "d": 6, "box": [[0, 1]] * 3, "knots": [8]}))
    result = run("convergence", "--config", config, "--out", tmp_path / "out", expect=1)
    assert "box" in result.output
    assert not (tmp_path / "out").exists()


def test_narrow_width_needs_a_rising_profile(run, tmp_path):
    run("convergence", "--seed", 0, "--d", 4, "--out", tmp_path, expect=1)
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": 2, "d": 3, "profile": "identity", "knots": [4]}))
    assert run("convergence", "--config", config, "--out", tmp_path / "out")["rows"] == 4
