import csv
import os
import sys
from datetime import datetime
from pathlib import Path

from .config import get_log_dir, get_log_level, get_run_id

_LEVELS = {"quiet": 0, "info": 1, "debug": 2}


def log(tag: str, message: str, level: str = "info") -> None:
    """Print `[tag] message` to stderr when PCNN_LOG allows it."""
    if _LEVELS.get(get_log_level(), 1) >= _LEVELS[level]:
        print(f"[{tag}] {message}", file=sys.stderr)


def debug(tag: str, message: str) -> None:
    log(tag, message, level="debug")


def _append_csv(filename: str, row: dict, fieldnames: list):
    log_dir = get_log_dir()
    if not log_dir:
        return
    filepath = Path(log_dir) / filename
    filepath.parent.mkdir(parents=True, exist_ok=True)
    file_exists = filepath.exists()
    with open(filepath, 'a', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator='\n')
        if not file_exists:
            writer.writeheader()
        writer.writerow(row)


def log_run_start(command: str):
    _append_csv("runs.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "event": "start",
        "command": command,
        "status": "",
        "error": "",
    }, ["timestamp", "run_id", "event", "command", "status", "error"])


def log_run_end(command: str, status="completed", error=None):
    _append_csv("runs.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "event": "end",
        "command": command,
        "status": status,
        "error": str(error) if error else "",
    }, ["timestamp", "run_id", "event", "command", "status", "error"])


def log_experiment_row(experiment: str, metric: str, value: float, runtime: float | None = None):
    _append_csv("experiments.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "experiment": experiment,
        "metric": metric,
        "value": value,
        "runtime_s": "" if runtime is None else f"{runtime:.6f}",
        "pid": os.getpid(),
    }, ["timestamp", "run_id", "experiment", "metric", "value", "runtime_s", "pid"])
