"""Named exchange matrices and matrix-file loading."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable

from .counterexamples import b_family
from .grassmannian import geometric_rank2_matrix
from .matrix import ExchangeMatrix
from .rank2 import rank2_matrix
from .wall import brick_wall_matrix

__all__ = ["PRESETS", "preset", "load_matrix", "parse_matrix"]

PRESETS: dict[str, Callable[[], ExchangeMatrix]] = {
    "a1xa1": lambda: rank2_matrix(0, 0),
    "a2": lambda: ExchangeMatrix.from_rows([[0, 1], [-1, 0]]),
    "b2": lambda: rank2_matrix(1, 2),
    "c2": lambda: rank2_matrix(2, 1),
    "g2": lambda: rank2_matrix(1, 3),
    "affine-a11": lambda: rank2_matrix(2, 2),
    "gr25": lambda: geometric_rank2_matrix(1, 1),
    "rank1": lambda: ExchangeMatrix.from_rows([[0]], [[1], [-1]]),
    "brick-wall": brick_wall_matrix,
    "b113": lambda: b_family(1, 1, 3),
}


def preset(name: str) -> ExchangeMatrix:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}") from None


def parse_matrix(data) -> ExchangeMatrix:
    """Accept {"n", "frozen", "rows"}, {"principal", "frozen_rows"} or a bare list of rows.

    A bare list with more rows than columns treats the extra rows as frozen.
    """
    if isinstance(data, dict):
        if "principal" in data:
            return ExchangeMatrix.from_rows(data["principal"], data.get("frozen_rows", ()))
        if "rows" in data and "n" not in data:
            data = data["rows"]
        else:
            return ExchangeMatrix.from_dict(data)
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix must be a nonempty list of rows")
    n = len(data[0])
    if len(data) < n:
        raise ValueError("fewer rows than columns")
    return ExchangeMatrix.from_rows(data[:n], data[n:])


def load_matrix(path: str | Path) -> ExchangeMatrix:
    return parse_matrix(json.loads(Path(path).read_text()))
