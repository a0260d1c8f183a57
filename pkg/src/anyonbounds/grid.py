"""Square sample grids for densities and potentials, and their JSON format.

File schema::

    {"x0": float, "y0": float, "side": float, "n": int, "values": [n*n floats]}

``values`` is row-major: entry ``i*n + j`` is the cell in row i (y direction)
and column j (x direction). Cell integrals are value times cell area.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class GridError(ValueError):
    """Invalid grid file or grid data. ``code`` distinguishes the failure."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SquareGrid:
    x0: float
    y0: float
    side: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise GridError("shape", f"values must be a square n x n array, got {vals.shape}")
        if not is_power_of_two(vals.shape[0]):
            raise GridError("resolution", "resolution must be a power of two")
        if not (self.side > 0 and math.isfinite(self.side)):
            raise GridError("side", "side must be positive and finite")
        if not np.all(np.isfinite(vals)):
            raise GridError("nonfinite", "grid values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def area(self) -> float:
        return self.side * self.side

    @property
    def cell_area(self) -> float:
        return self.area / (self.n * self.n)

    def integral(self, power: float = 1.0) -> float:
        return float(np.sum(self.values**power) * self.cell_area)

    def to_dict(self) -> dict:
        return {"x0": self.x0, "y0": self.y0, "side": self.side, "n": self.n,
                "values": self.values.ravel().tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class DensityGrid(SquareGrid):
    """Nonnegative one-particle density sampled on a dyadic grid."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(self.values < 0):
            raise GridError("negative", "negative density")

    @property
    def mass(self) -> float:
        return self.integral(1.0)


class PotentialGrid(SquareGrid):
    """Real potential V sampled on the same kind of grid."""

    def negative_part(self) -> np.ndarray:
        return np.maximum(0.0, -self.values)


def uniform_density(mass: float, n: int = 16, side: float = 1.0,
                    x0: float = 0.0, y0: float = 0.0) -> DensityGrid:
    return DensityGrid(x0, y0, side, np.full((n, n), mass / side**2))


def _grid_from_dict(data, cls):
    if not isinstance(data, dict):
        raise GridError("schema", "grid file must hold a JSON object")
    missing = {"x0", "y0", "side", "n", "values"} - set(data)
    if missing:
        raise GridError("schema", f"missing keys: {sorted(missing)}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GridError("schema", "n must be a positive integer")
    if not is_power_of_two(n):
        raise GridError("resolution", "resolution must be a power of two")
    values = data["values"]
    if not isinstance(values, list) or len(values) != n * n:
        raise GridError("schema", f"values must be a list of length n*n = {n * n}")
    try:
        arr = np.asarray(values, dtype=float).reshape(n, n)
        x0, y0, side = float(data["x0"]), float(data["y0"]), float(data["side"])
    except (TypeError, ValueError) as exc:
        raise GridError("schema", f"non-numeric grid data: {exc}") from exc
    return cls(x0, y0, side, arr)


def load_density(path) -> DensityGrid:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GridError("schema", f"invalid JSON: {exc}") from exc
    return _grid_from_dict(data, DensityGrid)


def load_potential(path) -> PotentialGrid:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GridError("schema", f"invalid JSON: {exc}") from exc
    return _grid_from_dict(data, PotentialGrid)
