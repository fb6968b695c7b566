"""Result file I/O.

Everything goes through fsspec via `get_fs(uri)`, so an output directory can
be a local path or any fsspec URI. Failures are re-raised as OSError naming
the path.
"""

import io
import json
from typing import Optional

import pyarrow as pa
import pyarrow.csv as pacsv

from . import debug
from .config import get_fs


def join(base: str, name: str) -> str:
    return f"{base.rstrip('/')}/{name}"


def _write_bytes(uri: str, data: bytes) -> None:
    fs = get_fs(uri)
    try:
        with fs.open(uri, "wb") as f:
            f.write(data)
    except OSError as e:
        raise OSError(f"failed to write {uri}: {e}") from e


def _read_bytes(uri: str) -> Optional[bytes]:
    """Read bytes from a URI. Returns None if not found."""
    fs = get_fs(uri)
    try:
        with fs.open(uri, "rb") as f:
            return f.read()
    except FileNotFoundError:
        return None
    except OSError as e:
        raise OSError(f"failed to read {uri}: {e}") from e


def save_text(uri: str, text: str) -> None:
    _write_bytes(uri, text.encode("utf-8"))
    debug.log("io", f"saved {uri}")


def save_json(uri: str, data) -> None:
    """Sorted keys and fixed indent so equal data gives equal bytes."""
    save_text(uri, json.dumps(data, indent=2, sort_keys=True) + "\n")


def load_json(uri: str):
    data = _read_bytes(uri)
    if data is None:
        raise OSError(f"file not found: {uri}")
    return json.loads(data)


def table_to_csv(table: pa.Table) -> str:
    """Comma-separated, header row, LF line endings."""
    buf = io.BytesIO()
    pacsv.write_csv(table, buf, write_options=pacsv.WriteOptions(
        include_header=True, delimiter=",", quoting_style="needed",
    ))
    return buf.getvalue().decode("utf-8").replace("\r\n", "\n")


def save_csv(uri: str, table: pa.Table) -> None:
    save_text(uri, table_to_csv(table))
