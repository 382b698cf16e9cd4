"""Photoacoustic reconstruction for the planar line-detector geometry.

Fourier-domain reconstruction built on a 1D nonuniform FFT, four baseline
interpolation methods, temporal back-projection, forward-data simulation,
and a benchmark harness.
"""

from .grids import GridFormatError, RealGrid2D, read_grid, write_grid
from .harness import BenchmarkRecord, SamplingReport, rel_l2_error, run_benchmark, sampling_check
from .recon import METHODS, ReconConfig, reconstruct
from .windows import KaiserBesselWindow, RectWindow

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RealGrid2D",
    "GridFormatError",
    "read_grid",
    "write_grid",
    "KaiserBesselWindow",
    "RectWindow",
    "ReconConfig",
    "METHODS",
    "reconstruct",
    "BenchmarkRecord",
    "SamplingReport",
    "rel_l2_error",
    "run_benchmark",
    "sampling_check",
]
