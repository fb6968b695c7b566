from dataclasses import replace

import pyarrow.csv as pacsv
import pytest

from experiments import ResultRow, emit_outputs
from experiments.outputs import COLUMNS, rows_table
from pcnn_utils import load_json
from periodic_cnn import PcnnError

ROWS = [
    ResultRow("convergence", "ridge", 16, "sup_error", 0.05, {"d": 6}, runtime=0.2),
    ResultRow("convergence", "ridge", 8, "sup_error", 0.1, {"d": 6}, runtime=0.1),
    ResultRow("convergence", "ridge", 8, "mean_error", 0.02, {"d": 6}, runtime=0.1),
    ResultRow("dichotomy", "blocked", None, "epsilon", 1.0, {"grid": 32}),
]


def load_csv(path):
    return pacsv.read_csv(str(path))


def load_rows(path):
    return [ResultRow(**{k: d[k] for k in COLUMNS}) for d in load_json(str(path))]


def test_empty_run_writes_header_only(tmp_path):
    emit_outputs([], str(tmp_path))
    table = load_csv(tmp_path / "results.csv")
    assert table.num_rows == 0
    assert table.column_names == ["experiment", "case", "n", "metric", "value", "params"]
    assert load_json(str(tmp_path / "results.json")) == []
    assert not (tmp_path / "timings.csv").exists()


def test_one_dat_file_per_experiment(tmp_path):
    emit_outputs(ROWS, str(tmp_path))
    assert sorted(p.name for p in tmp_path.glob("*.dat")) == ["convergence.dat", "dichotomy.dat"]
    assert (tmp_path / "convergence.dat").read_text() == "# n error\n8 0.1\n16 0.05\n"
    assert (tmp_path / "dichotomy.dat").read_text() == "# n error\n"


def test_results_round_trip_without_runtime(tmp_path):
    emit_outputs(ROWS, str(tmp_path))
    loaded = load_rows(tmp_path / "results.json")
    assert loaded == sorted((replace(r, runtime=None) for r in ROWS), key=ResultRow.key)
    assert load_csv(tmp_path / "results.csv").num_rows == len(ROWS)
    timings = load_csv(tmp_path / "timings.csv")
    assert timings.num_rows == 3


def test_results_are_byte_identical_across_runs(tmp_path):
    slower = [ResultRow(r.experiment, r.case, r.n, r.metric, r.value, r.params,
                        None if r.runtime is None else r.runtime * 7) for r in ROWS]
    emit_outputs(ROWS, str(tmp_path / "a"))
    emit_outputs(list(reversed(slower)), str(tmp_path / "b"))
    for name in ("results.csv", "results.json", "convergence.dat", "dichotomy.dat"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_duplicate_rows_are_rejected():
    with pytest.raises(AssertionError):
        rows_table([ROWS[0], ROWS[0]])


def test_rows_must_be_finite():
    with pytest.raises(PcnnError):
        ResultRow("convergence", "ridge", 8, "sup_error", float("nan"))
