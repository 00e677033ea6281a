"""CSV ingestion/export and report rendering."""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .core import DataError, build_dataset


@dataclass(frozen=True)
class CsvSchema:
    delimiter: str = ","
    header: bool = True
    label_column: object = "label"  # name, or 0-based index
    feature_columns: object = None  # names/indices; None = every other column


@dataclass(frozen=True)
class LoadedTable:
    dataset: object
    feature_names: tuple
    label_name: str
    raw_labels: np.ndarray


def _resolve(col, names):
    if isinstance(col, int) or (isinstance(col, str) and col.isdigit() and col not in names):
        i = int(col)
        if not 0 <= i < len(names):
            raise DataError(f"column index {i} out of range (0..{len(names) - 1})")
        return i
    if col not in names:
        raise DataError(f"missing column {col!r}; available: {', '.join(names)}")
    return names.index(col)


def read_table(path, schema=CsvSchema(), numeric_label=False):
    """Parse ``path``; returns feature matrix, label column and names."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh, delimiter=schema.delimiter) if r]
    if not rows or (schema.header and len(rows) == 1):
        raise DataError(f"{path}: no data rows")
    if schema.header:
        names, rows = [c.strip() for c in rows[0]], rows[1:]
    else:
        names = [str(i) for i in range(len(rows[0]))]
    width = len(names)
    for i, r in enumerate(rows, start=1):
        if len(r) != width:
            raise DataError(f"row {i}: expected {width} fields, got {len(r)}")
    label_idx = _resolve(schema.label_column, names)
    if schema.feature_columns is None:
        feat_idx = [i for i in range(width) if i != label_idx]
    else:
        feat_idx = [_resolve(c, names) for c in schema.feature_columns]
    if not feat_idx:
        raise DataError("no feature columns")
    x = np.empty((len(rows), len(feat_idx)))
    for i, r in enumerate(rows):
        for j, c in enumerate(feat_idx):
            try:
                x[i, j] = float(r[c])
            except ValueError:
                raise DataError(f"unparseable number {r[c]!r} at row {i + 1}, "
                                f"column {names[c]!r}") from None
    labels = np.array([r[label_idx].strip() for r in rows])
    if numeric_label:
        try:
            labels = labels.astype(float)
        except ValueError:
            raise DataError(f"label column {names[label_idx]!r} is not numeric") from None
    return x, labels, tuple(names[c] for c in feat_idx), names[label_idx]


def load_csv(path, schema=CsvSchema()):
    x, labels, feat_names, label_name = read_table(path, schema)
    return LoadedTable(build_dataset(x, labels), feat_names, label_name, labels)


def write_csv(path, x, labels, feature_names=None, label_name="label"):
    x = np.asarray(x)
    if feature_names is None:
        feature_names = [f"x{j + 1}" for j in range(x.shape[1])]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(list(feature_names) + [label_name])
        for row, lab in zip(x, labels):
            w.writerow([repr(float(v)) if x.dtype.kind == "f" else str(v) for v in row] + [lab])


def to_json(report):
    return json.dumps(report, indent=2, default=_json_default)


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def format_table(rows, headers):
    """Aligned plain-text columns; floats to 4 decimals."""
    def cell(v):
        if isinstance(v, (float, np.floating)):
            return f"{v:.4f}"
        return str(v)
    body = [[cell(v) for v in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(headers)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in body]
    return "\n".join(lines)
