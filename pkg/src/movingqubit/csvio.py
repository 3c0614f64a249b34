"""Deterministic CSV output: '#' provenance lines, a header row, 17 significant digits."""
from __future__ import annotations

from pathlib import Path

import numpy as np


def format_value(x) -> str:
    return f"{float(x):.17g}"


def write_table(path, columns, data, comments=(), force: bool = False) -> Path:
    """Write ``data`` (rows x len(columns)) to ``path``; refuse to overwrite unless ``force``."""
    path = Path(path)
    if path.exists() and not force:
        raise FileExistsError(f"{path} exists; pass force to overwrite")
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(columns):
        raise ValueError(f"data shape {data.shape} does not match {len(columns)} columns")
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(columns))
    lines.extend(",".join(format_value(x) for x in row) for row in data)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_table(path) -> tuple[list[str], list[str], np.ndarray]:
    """Inverse of write_table: (comments, columns, data)."""
    comments, rows, columns = [], [], None
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line[2:] if line.startswith("# ") else line[1:])
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append([float(x) for x in line.split(",")])
    return comments, columns, np.array(rows, dtype=float).reshape(-1, len(columns))

