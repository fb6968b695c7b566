"""Result rows and the files they are written to.

results.csv and results.json hold every row without its wall-clock runtime,
so equal configs give byte-identical files; runtimes go to timings.csv.
Each experiment also gets a plot-ready `<experiment>.dat` with `n error`
lines taken from its sup_error rows.
"""

import json
import math
from dataclasses import dataclass, field

import pyarrow as pa

from pcnn_utils import debug, join, save_csv, save_json, save_text, validate
from periodic_cnn import PcnnError

COLUMNS = ["experiment", "case", "n", "metric", "value", "params"]
SCHEMA = pa.schema([
    ("experiment", pa.string()),
    ("case", pa.string()),
    ("n", pa.int64()),
    ("metric", pa.string()),
    ("value", pa.float64()),
    ("params", pa.string()),
])
DAT_METRIC = "sup_error"


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    case: str
    n: int | None
    metric: str
    value: float
    params: dict = field(default_factory=dict)
    runtime: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if self.n is not None:
            object.__setattr__(self, "n", int(self.n))
        if not math.isfinite(self.value):
            raise PcnnError(f"{self.experiment}/{self.metric}: value must be finite, got {self.value}")

    def key(self):
        return (self.experiment, self.case, -1 if self.n is None else self.n, self.metric)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "case": self.case,
            "n": self.n,
            "metric": self.metric,
            "value": self.value,
            "params": self.params,
        }


def rows_table(rows: list[ResultRow]) -> pa.Table:
    table = pa.Table.from_pylist(
        [{**r.to_dict(), "params": json.dumps(r.params, sort_keys=True)} for r in rows],
        schema=SCHEMA,
    )
    validate(table, {
        "columns": {"experiment": "string", "case": "string", "n": "int64",
                    "metric": "string", "value": "double", "params": "string"},
        "not_null": ["experiment", "case", "metric", "value"],
        "unique": ["experiment", "case", "n", "metric"],
        "finite": ["value"],
    })
    return table


def _dat_text(rows: list[ResultRow]) -> str:
    lines = ["# n error"]
    for r in sorted(rows, key=ResultRow.key):
        if r.metric == DAT_METRIC and r.n is not None:
            lines.append(f"{r.n} {r.value!r}")
    return "\n".join(lines) + "\n"


def emit_outputs(rows: list[ResultRow], out_dir: str) -> list[str]:
    """Write results.csv, results.json, timings.csv and one .dat per experiment."""
    rows = sorted(rows, key=ResultRow.key)
    written = []

    path = join(out_dir, "results.csv")
    save_csv(path, rows_table(rows))
    written.append(path)

    path = join(out_dir, "results.json")
    save_json(path, [r.to_dict() for r in rows])
    written.append(path)

    timed = [r for r in rows if r.runtime is not None]
    if timed:
        path = join(out_dir, "timings.csv")
        save_csv(path, pa.table({
            "experiment": [r.experiment for r in timed],
            "case": [r.case for r in timed],
            "n": pa.array([r.n for r in timed], type=pa.int64()),
            "metric": [r.metric for r in timed],
            "runtime_s": [r.runtime for r in timed],
        }))
        written.append(path)

    for experiment in sorted({r.experiment for r in rows}):
        path = join(out_dir, f"{experiment}.dat")
        save_text(path, _dat_text([r for r in rows if r.experiment == experiment]))
        written.append(path)

    debug.log("outputs", f"wrote {len(rows)} rows to {out_dir}")
    return written
