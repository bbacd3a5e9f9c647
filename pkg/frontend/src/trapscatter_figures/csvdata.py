"""Reader for trapscatter CSV datasets.

Files carry '#'-prefixed key/value header lines (including a 'columns'
declaration), numeric/string data rows, and optional '#' footer records
after the data.  Everything the renderer needs must come from the file;
no physics is recomputed here.
"""

from dataclasses import dataclass, field

import numpy as np


class DatasetError(ValueError):
    """Malformed or mismatched input dataset."""


@dataclass
class Dataset:
    path: str
    header: dict = field(default_factory=dict)
    columns: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        try:
            i = self.columns.index(name)
        except ValueError:
            raise DatasetError(f"{self.path}: missing column {name!r}") from None
        vals = [r[i] for r in self.rows]
        try:
            return np.array([float(v) for v in vals])
        except ValueError:
            return np.array(vals, dtype=object)

    def groups(self, key: str):
        """Distinct values of a column, in first-appearance order."""
        raw = self.column(key)
        seen = []
        for v in raw.tolist():
            if v not in seen:
                seen.append(v)
        return seen

    def mask(self, key: str, value) -> np.ndarray:
        col = self.column(key)
        if col.dtype == object:
            return np.array([v == value for v in col])
        return np.isclose(col.astype(float), float(value))


def load_dataset(path) -> Dataset:
    ds = Dataset(path=str(path))
    in_data = False
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" not in body:
                    continue
                k, v = (s.strip() for s in body.split(":", 1))
                if k == "columns":
                    ds.columns = [c.strip() for c in v.split(",")]
                elif in_data:
                    ds.footer[k] = v
                else:
                    ds.header[k] = v
            else:
                if not ds.columns:
                    raise DatasetError(f"{path}: data before a columns declaration")
                cells = line.split(",")
                if len(cells) != len(ds.columns):
                    raise DatasetError(
                        f"{path}: row width {len(cells)} != {len(ds.columns)} columns"
                    )
                ds.rows.append(cells)
                in_data = True
    if not ds.rows:
        raise DatasetError(f"{path}: no data rows")
    return ds


def validate(ds: Dataset, required_header: dict, required_columns: list):
    for key, want in required_header.items():
        got = ds.header.get(key)
        if got != want:
            raise DatasetError(
                f"{ds.path}: header {key!r} is {got!r}, expected {want!r}"
            )
    missing = [c for c in required_columns if c not in ds.columns]
    if missing:
        raise DatasetError(f"{ds.path}: missing columns {missing}")
