"""
Checks run on result tables before anything is written.

Usage:
    from pcnn_utils import validate

    validate(table, {
        "columns": {"experiment": "string", "n": "int64", "value": "double"},
        "not_null": ["experiment", "metric", "value"],
        "unique": ["experiment", "case", "n", "metric"],
        "finite": ["value"],
    })
"""

import math

import pyarrow as pa


def assert_finite(table: pa.Table, column: str) -> None:
    """Every non-null value in the column is a finite number."""
    values = [v for v in table.column(column).to_pylist() if v is not None]
    invalid = [v for v in values if not math.isfinite(v)]
    assert not invalid, f"Column '{column}' has non-finite values: {invalid[:5]}..."


def validate(table: pa.Table, schema: dict) -> None:
    """Raise AssertionError when the table breaks the schema.

    Schema keys, all optional:
        columns: {name: substring expected in the arrow type}
        not_null: columns without nulls
        unique: columns forming a unique (composite) key
        finite: numeric columns without NaN or inf
        min_rows: lower bound on the row count
    """
    if (min_rows := schema.get("min_rows")) is not None:
        assert len(table) >= min_rows, f"Expected >= {min_rows} rows, got {len(table)}"

    for col, expected_type in schema.get("columns", {}).items():
        assert col in table.column_names, f"Missing column: {col}"
        actual_type = str(table.schema.field(col).type)
        assert expected_type in actual_type, (
            f"Column '{col}': expected type containing '{expected_type}', got '{actual_type}'"
        )

    for col in schema.get("not_null", []):
        null_count = table.column(col).null_count
        assert null_count == 0, f"Column '{col}' has {null_count} null values"

    if unique := schema.get("unique"):
        keys = list(zip(*(table.column(col).to_pylist() for col in unique)))
        duplicates = len(keys) - len(set(keys))
        assert duplicates == 0, f"Columns {unique} have {duplicates} duplicate combinations"

    for col in schema.get("finite", []):
        assert_finite(table, col)
