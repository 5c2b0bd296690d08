"""CSV ingestion and atomic file output.

The expected dialect is plain comma-separated UTF-8 with a mandatory header
row and '.' decimals.  Rows containing missing cells (empty or non-finite)
are dropped with a count; any other non-numeric cell is an error naming the
row and column.  Rows are numbered from 1 at the header.
"""

import csv
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import DataFormatError
from .screening import Dataset


def atomic_write(path, text: str) -> None:
    """Write via a temp file in the target directory plus rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_cell(cell: str, row_number: int, column: str) -> float:
    text = cell.strip()
    if not text:
        return math.nan  # missing: row will be dropped
    try:
        return float(text)
    except ValueError:
        raise DataFormatError(
            f"non-numeric value {text!r} at row {row_number}, column {column!r}"
        ) from None


def load_csv_dataset(path, target: str, mode: str = "regression") -> tuple[Dataset, int]:
    """Read a numeric CSV into a dataset, returning it with the dropped-row count.

    ``target`` names the response column; if no header matches, it is
    interpreted as a zero-based column index.
    """
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"input file not found: {path}")
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"empty input file: {path}") from None
        header = [name.strip() for name in header]
        if len(header) < 2:
            raise DataFormatError("need a header with at least two columns")
        if len(set(header)) != len(header):
            raise DataFormatError("duplicate column names in header")
        if target in header:
            target_idx = header.index(target)
        else:
            try:
                target_idx = int(target)
            except ValueError:
                raise DataFormatError(f"target column {target!r} not found") from None
            if not 0 <= target_idx < len(header):
                raise DataFormatError(f"target index {target} out of range")

        rows = []
        dropped = 0
        for row_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataFormatError(
                    f"row {row_number} has {len(row)} cells, expected {len(header)}"
                )
            parsed = [_parse_cell(cell, row_number, header[i]) for i, cell in enumerate(row)]
            if all(math.isfinite(v) for v in parsed):
                rows.append(parsed)
            else:
                dropped += 1

    if len(rows) < 2:
        raise DataFormatError(
            f"need at least 2 complete rows, got {len(rows)} ({dropped} dropped)"
        )
    table = np.asarray(rows, dtype=np.float64)
    predictor_idx = [i for i in range(len(header)) if i != target_idx]
    dataset = Dataset(
        predictors=table[:, predictor_idx],
        response=table[:, target_idx],
        names=tuple(header[i] for i in predictor_idx),
        mode=mode,
    )
    return dataset, dropped


def dataset_csv(dataset: Dataset, target_name: str = "y") -> str:
    """Serialize a dataset back to the ingestion dialect."""
    lines = [",".join((*dataset.names, target_name))]
    X, y = dataset.predictors, dataset.response
    for i in range(dataset.n):
        lines.append(",".join(repr(float(v)) for v in (*X[i], y[i])))
    return "\n".join(lines) + "\n"
