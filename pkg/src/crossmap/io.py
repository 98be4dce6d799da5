"""CSV ingestion and result serialization.

Input layout: header row of unique column names, then one time step per
row; every column becomes one series. Skill matrices serialize with target
names across the header, library names down the first column, cells to six
decimals, and the literal token "NA" for undefined entries, so a
write/read/write cycle is byte-stable.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .ccm import SkillMatrix
from .errors import CsvFormatError
from .series import Dataset, TimeSeries

_NA = "NA"


def load_csv(path) -> Dataset:
    """Parse a columns-as-series CSV into a Dataset."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file") from None
        names = [cell.strip() for cell in header]
        if any(not name for name in names):
            raise CsvFormatError(f"{path}: blank column name in header")
        duplicates = {n for n in names if names.count(n) > 1}
        if duplicates:
            raise CsvFormatError(f"{path}: duplicate column names: {sorted(duplicates)}")
        columns: list[list[float]] = [[] for _ in names]
        for row_number, row in enumerate(reader, start=2):
            if len(row) != len(names):
                raise CsvFormatError(
                    f"{path}: row {row_number} has {len(row)} cells, expected {len(names)}"
                )
            for col, cell in enumerate(row):
                try:
                    value = float(cell)
                except ValueError:
                    raise CsvFormatError(
                        f"{path}: row {row_number}, column {names[col]!r}: "
                        f"not numeric: {cell.strip()!r}"
                    ) from None
                if not math.isfinite(value):
                    raise CsvFormatError(
                        f"{path}: row {row_number}, column {names[col]!r}: "
                        f"non-finite value {cell.strip()!r}"
                    )
                columns[col].append(value)
    if not columns[0]:
        raise CsvFormatError(f"{path}: no data rows")
    return Dataset(tuple(TimeSeries(column, name) for column, name in zip(columns, names)))


def _format_cell(value: float) -> str:
    return _NA if not math.isfinite(value) else f"{value:.6f}"


def write_skill_matrix(matrix: SkillMatrix, path) -> None:
    """Serialize a skill matrix; see the module docstring for the layout."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([""] + matrix.names)
        for i, name in enumerate(matrix.names):
            writer.writerow([name] + [_format_cell(v) for v in matrix.rho[i]])


def read_skill_matrix(path) -> SkillMatrix:
    """Inverse of write_skill_matrix, at six-decimal precision."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file") from None
        names = header[1:]
        if not names:
            raise CsvFormatError(f"{path}: no target columns in header")
        rho = np.full((len(names), len(names)), np.nan)
        row_names = []
        for row_number, row in enumerate(reader, start=2):
            if len(row) != len(names) + 1:
                raise CsvFormatError(
                    f"{path}: row {row_number} has {len(row)} cells, expected {len(names) + 1}"
                )
            row_names.append(row[0])
            for col, cell in enumerate(row[1:]):
                if cell == _NA:
                    continue
                try:
                    rho[row_number - 2, col] = float(cell)
                except (ValueError, IndexError):
                    raise CsvFormatError(
                        f"{path}: row {row_number}, column {names[col]!r}: bad cell {cell!r}"
                    ) from None
    if row_names != names:
        raise CsvFormatError(f"{path}: library rows do not match target columns")
    return SkillMatrix(names, rho)
