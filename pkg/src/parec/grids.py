"""Square sample grids and their on-disk format.

A grid stores N x N real samples with spacing ``step``; index ``(m, n)`` maps
to the point ``(m*step, n*step)``.  For image grids the axes are (x, y), for
data grids (detector position x, time t).

The file format is a single-line JSON header followed by a newline and the
raw payload: n_x * n_y little-endian float64 values, row-major with the first
axis (x / detector) outermost.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = ["RealGrid2D", "GridFormatError", "write_grid", "read_grid"]

_FORMAT_VERSION = 1


class GridFormatError(Exception):
    """Raised for malformed grid files."""


@dataclass
class RealGrid2D:
    """N x N real samples with uniform spacing along both axes."""

    step: float
    values: np.ndarray
    axis_kind: str = "image"  # "image" -> (x, y), "data" -> (x, t)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise ValueError("values must be a 2D array")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.axis_kind not in ("image", "data"):
            raise ValueError(f"unknown axis_kind {self.axis_kind!r}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid values must be finite")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def extent(self) -> float:
        """Physical side length X = N * step."""
        return self.n * self.step

    def axis(self, which: int) -> np.ndarray:
        return np.arange(self.values.shape[which]) * self.step

    def like(self, values: np.ndarray, axis_kind: str | None = None) -> "RealGrid2D":
        return RealGrid2D(self.step, values, axis_kind or self.axis_kind)


def write_grid(path, grid: RealGrid2D) -> None:
    header = {
        "version": _FORMAT_VERSION,
        "n_x": int(grid.values.shape[0]),
        "n_y": int(grid.values.shape[1]),
        "step": float(grid.step),
        "axis_kind": grid.axis_kind,
        "dtype": "f64le",
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header).encode("ascii"))
        fh.write(b"\n")
        fh.write(np.ascontiguousarray(grid.values, dtype="<f8").tobytes())


def read_grid(path) -> RealGrid2D:
    with open(path, "rb") as fh:
        raw = fh.read()
    nl = raw.find(b"\n")
    if nl < 0:
        raise GridFormatError("missing header line")
    try:
        header = json.loads(raw[:nl].decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise GridFormatError(f"bad header: {exc}") from exc
    for key in ("n_x", "n_y", "step", "axis_kind", "dtype"):
        if key not in header:
            raise GridFormatError(f"header missing field {key!r}")
    if header["dtype"] != "f64le":
        raise GridFormatError(f"unsupported dtype {header['dtype']!r}")
    n_x, n_y = int(header["n_x"]), int(header["n_y"])
    payload = raw[nl + 1 :]
    if len(payload) != 8 * n_x * n_y:
        raise GridFormatError(
            f"payload has {len(payload)} bytes, expected {8 * n_x * n_y}"
        )
    values = np.frombuffer(payload, dtype="<f8").reshape(n_x, n_y).copy()
    return RealGrid2D(float(header["step"]), values, header["axis_kind"])
