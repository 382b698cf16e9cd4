"""8-bit grayscale export of reconstruction grids.

The display mapping is fixed: value -0.4 maps to black, 1.0 to white, values
outside that range are clamped.  PGM (binary P5) needs no dependencies; PNG
goes through matplotlib.
"""

from __future__ import annotations

import numpy as np

from .grids import RealGrid2D

__all__ = ["to_display_bytes", "write_pgm", "write_png"]

DISPLAY_BLACK = -0.4
DISPLAY_WHITE = 1.0


def to_display_bytes(values: np.ndarray) -> np.ndarray:
    """Map reals to uint8 with -0.4 -> 0 and 1.0 -> 255, clamped."""
    scaled = (np.asarray(values, dtype=float) - DISPLAY_BLACK) / (DISPLAY_WHITE - DISPLAY_BLACK)
    return np.round(np.clip(scaled, 0.0, 1.0) * 255.0).astype(np.uint8)


def write_pgm(path, grid: RealGrid2D) -> None:
    """Binary P5 PGM; rows follow the first grid axis."""
    pixels = to_display_bytes(grid.values)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())


def write_png(path, grid: RealGrid2D) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.imsave(path, to_display_bytes(grid.values), cmap="gray", vmin=0, vmax=255)
