"""Reconstruction methods for planar-geometry photoacoustic data.

All Fourier methods share the same pipeline: an exact FFT along the detector
axis, evaluation of the time-axis transform at the nonuniform nodes
``omega(k, l) = sign(l) * sqrt(k^2 + l^2)``, spectral weighting, and a 2D
inverse FFT.  They differ only in how the nonuniform evaluation is done:
direct summation (the ground-truth reference), nearest/linear interpolation
on an oversampled grid, truncated sinc, or the Kaiser-Bessel nonuniform FFT.
Temporal back-projection is the time-domain alternative.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import nufft
from .grids import RealGrid2D
from .windows import KaiserBesselWindow, RectWindow

__all__ = [
    "ReconConfig",
    "METHODS",
    "spectral_weight",
    "band_limit_policy",
    "node_field",
    "time_axis_dft",
    "reconstruct",
    "reconstruct_nufft",
    "reconstruct_direct",
    "reconstruct_interp",
    "reconstruct_trunc_sinc",
    "reconstruct_backprojection",
]

METHODS = ("nufft", "direct", "nearest", "linear", "trunc_sinc", "backprojection")


@dataclass(frozen=True)
class ReconConfig:
    method: str = "nufft"
    c: float = 2.0
    k_interp: float = 3.0
    alpha: float | None = None  # None -> 0.99 * pi * (2c - 1)
    band_limit: str = "zero"  # "zero" or "wrap"
    weight_convention: str = "axis"  # "axis" (2l/omega) or "literal" (2k/omega)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.c < 1:
            raise ValueError("oversampling factor must be >= 1")
        if self.band_limit not in ("zero", "wrap"):
            raise ValueError(f"unknown band_limit policy {self.band_limit!r}")
        if self.weight_convention not in ("axis", "literal"):
            raise ValueError(f"unknown weight convention {self.weight_convention!r}")

    def resolved_alpha(self) -> float:
        return self.alpha if self.alpha is not None else nufft.default_alpha(self.c)


def spectral_weight(k: int, l: int) -> float:
    """Weight 2|l|/sqrt(k^2+l^2) relating data and image spectra; zero on the
    l = 0 row (including DC) where the numerator vanishes."""
    if l == 0:
        return 0.0
    return 2.0 * abs(l) / float(np.hypot(k, l))


def band_limit_policy(k: int, l: int, n: int) -> bool:
    """True (keep) when the node radius is representable, i.e.
    sqrt(k^2+l^2) <= n/2; False (zero) beyond the data band."""
    return float(np.hypot(k, l)) <= n / 2.0


def _symmetric_index(n: int) -> np.ndarray:
    """FFT-ordered indices mapped to {-n/2, ..., n/2-1}."""
    idx = np.arange(n)
    return np.where(idx < n // 2, idx, idx - n)


def node_field(n: int):
    """Nodes omega(k, l) and weights on the FFT-ordered (k, l) index grid.

    sign(0) is taken as +1; the l = 0 row carries zero weight either way.
    """
    ks = _symmetric_index(n)[:, None]
    ls = _symmetric_index(n)[None, :]
    radius = np.hypot(ks, ls)
    sign_l = np.where(ls < 0, -1.0, 1.0)
    omega = sign_l * radius
    return omega, ks, ls, radius


def _weights(cfg: ReconConfig, ks, ls, radius, n):
    if cfg.weight_convention == "axis":
        numer = 2.0 * np.abs(ls)
    else:
        numer = 2.0 * np.broadcast_to(ks, np.broadcast_shapes(ks.shape, ls.shape)).astype(float)
        sign_l = np.where(ls < 0, -1.0, 1.0)
        numer = numer * sign_l  # 2k / omega = 2k * sign(l) / radius
    w = np.divide(numer, radius, out=np.zeros(np.broadcast_shapes(ks.shape, ls.shape)), where=radius > 0)
    w = np.where(ls == 0, 0.0, w)
    if cfg.band_limit == "zero":
        w = np.where(radius > n / 2.0, 0.0, w)
    return w


def time_axis_dft(g: RealGrid2D) -> np.ndarray:
    """Exact length-N DFTs along the detector axis, one per time sample."""
    _check_square(g)
    return np.fft.fft(g.values, axis=0)


def _check_square(g: RealGrid2D):
    if g.values.shape[0] != g.values.shape[1]:
        raise ValueError("data grid must be square")
    if g.values.shape[0] % 2 != 0:
        raise ValueError("grid size must be even")


def _assemble(g: RealGrid2D, ghat: np.ndarray, cfg: ReconConfig) -> RealGrid2D:
    n = g.n
    _, ks, ls, radius = node_field(n)
    fhat = _weights(cfg, ks, ls, radius, n) * ghat
    img = np.fft.ifft2(fhat).real
    return RealGrid2D(g.step, img, "image")


def _window_for(cfg: ReconConfig):
    if cfg.method == "trunc_sinc":
        return RectWindow(cfg.c * np.pi)
    return KaiserBesselWindow(alpha=cfg.resolved_alpha(), cutoff=cfg.k_interp)


def reconstruct_nufft(g: RealGrid2D, cfg: ReconConfig | None = None) -> RealGrid2D:
    """Fourier reconstruction with the Kaiser-Bessel nonuniform FFT
    (or truncated sinc when cfg.method == "trunc_sinc")."""
    cfg = cfg or ReconConfig("nufft")
    _check_square(g)
    n = g.n
    window = _window_for(cfg)
    m_float = cfg.c * n
    m = int(round(m_float))
    if abs(m_float - m) > 1e-9 or m % 2 != 0:
        raise ValueError(f"oversampled length c*N = {m_float} must be an even integer")
    bound = np.pi * (2.0 * cfg.c - 1.0)
    if window.support_half_width > bound * (1.0 + 1e-12):
        raise ValueError(
            f"window support {window.support_half_width:.6g} exceeds pi*(2c-1) = {bound:.6g}"
        )
    gt = time_axis_dft(g)
    theta = 2.0 * np.pi * np.arange(n) / n - np.pi
    psi = window.evaluate(theta)
    if np.any(psi <= 0.0):
        raise ValueError("window must be strictly positive on [-pi, pi]")
    spectrum = np.fft.fft(gt / (2.0 * np.pi * cfg.c * psi)[None, :], n=m, axis=1)
    idx, wts = _node_tables(n, cfg.c, cfg.k_interp, window, m)
    row_map = np.minimum(np.arange(n), n - np.arange(n))
    idx = np.ascontiguousarray(idx[row_map].transpose(2, 0, 1))
    wts = np.ascontiguousarray(wts[row_map].transpose(2, 0, 1))
    ghat = np.zeros((n, n), dtype=complex)
    rows = np.arange(n)[:, None]
    for tap in range(idx.shape[0]):
        ghat += wts[tap] * spectrum[rows, idx[tap]]
    return _assemble(g, ghat, cfg)


def _node_tables(n, c, k_interp, window, m):
    """Interpolation tables for the full node field, built on one quadrant.

    omega(k, l) depends on k only through k^2, so rows k and -k coincide
    (callers mirror rows); columns l and -l carry opposite nodes, whose
    weights are the reversed complex conjugates with negated indices.
    """
    half = n // 2
    quarter = nufft.interp_table(
        np.hypot(np.arange(half + 1)[:, None], np.arange(half + 1)[None, :]),
        c, k_interp, window, m,
    )
    idx_q, wts_q = quarter
    j = idx_q.shape[-1]
    idx = np.empty((half + 1, n, j), dtype=idx_q.dtype)
    wts = np.empty((half + 1, n, j), dtype=wts_q.dtype)
    idx[:, : half + 1] = idx_q[:, : half + 1]
    wts[:, : half + 1] = wts_q[:, : half + 1]
    # column l_fft = n/2 holds the node -sqrt(k^2 + (n/2)^2)
    idx[:, half] = (-idx_q[:, half, ::-1]) % m
    wts[:, half] = np.conj(wts_q[:, half, ::-1])
    # columns l_fft > n/2 mirror columns n - l_fft
    idx[:, half + 1 :] = (-idx_q[:, half - 1 : 0 : -1, ::-1]) % m
    wts[:, half + 1 :] = np.conj(wts_q[:, half - 1 : 0 : -1, ::-1])
    return idx, wts


def reconstruct_trunc_sinc(g: RealGrid2D, cfg: ReconConfig | None = None) -> RealGrid2D:
    cfg = cfg or ReconConfig("trunc_sinc")
    if cfg.method != "trunc_sinc":
        cfg = replace(cfg, method="trunc_sinc")
    return reconstruct_nufft(g, cfg)


def reconstruct_direct(g: RealGrid2D, cfg: ReconConfig | None = None, block: int = 16) -> RealGrid2D:
    """Exact O(N^3) evaluation of the time-axis transform at every node;
    the ground-truth reference for the fast Fourier methods."""
    cfg = cfg or ReconConfig("direct")
    _check_square(g)
    n = g.n
    gt = time_axis_dft(g)
    omega, _, _, _ = node_field(n)
    samples = np.arange(n)
    ghat = np.empty((n, n), dtype=complex)
    for start in range(0, n, block):
        stop = min(start + block, n)
        phase = np.exp(
            (-2j * np.pi / n) * omega[start:stop, :, None] * samples[None, None, :]
        )
        ghat[start:stop] = np.einsum("klt,kt->kl", phase, gt[start:stop])
    return _assemble(g, ghat, cfg)


def reconstruct_interp(g: RealGrid2D, cfg: ReconConfig) -> RealGrid2D:
    """Zero-padded FFT along the time axis followed by nearest-neighbor or
    linear interpolation at the nonuniform nodes."""
    if cfg.method not in ("nearest", "linear"):
        raise ValueError("interpolation method must be 'nearest' or 'linear'")
    _check_square(g)
    n = g.n
    m_float = cfg.c * n
    m = int(round(m_float))
    if abs(m_float - m) > 1e-9:
        raise ValueError("oversampling factor must give an integer grid length")
    gt = time_axis_dft(g)
    spectrum = np.fft.fft(gt, n=m, axis=1)  # values at omega = j/c
    omega, _, _, _ = node_field(n)
    pos = cfg.c * omega
    rows = np.arange(n)[:, None]
    if cfg.method == "nearest":
        idx = np.round(pos).astype(np.int64) % m
        ghat = spectrum[rows, idx]
    else:
        i0 = np.floor(pos).astype(np.int64)
        frac = pos - i0
        ghat = (1.0 - frac) * spectrum[rows, i0 % m] + frac * spectrum[rows, (i0 + 1) % m]
    return _assemble(g, ghat, cfg)


def reconstruct_backprojection(g: RealGrid2D) -> RealGrid2D:
    """Discretized universal back-projection (O(N^3)).

    The filtered data d/dt(g/t) is integrated over t along each detector
    with the substitution t = sqrt(r^2 + u^2) (singularity-free), tabulated
    over (detector, r), then summed over detectors per image point.
    """
    _check_square(g)
    n = g.n
    step = g.step
    t = np.arange(n) * step
    q = np.zeros_like(g.values)
    q[:, 1:] = g.values[:, 1:] / t[1:]
    h = np.empty_like(q)
    h[:, 1:-1] = (q[:, 2:] - q[:, :-2]) / (2.0 * step)
    h[:, 0] = (-3.0 * q[:, 0] + 4.0 * q[:, 1] - q[:, 2]) / (2.0 * step)
    h[:, -1] = (3.0 * q[:, -1] - 4.0 * q[:, -2] + q[:, -3]) / (2.0 * step)
    ht = np.zeros_like(h)
    ht[:, 1:] = h[:, 1:] / t[1:]  # integrand h(t)/t on the t grid

    # inner integral I(x', r) = int_0^{T} h(sqrt(r^2+u^2)) / sqrt(r^2+u^2) du
    u = np.arange(n) * step
    trap_u = np.full(n, step)
    trap_u[0] = trap_u[-1] = step / 2.0
    inner = np.empty((n, n))  # [detector, radius index]
    for i in range(n):
        tq = np.hypot(t[i], u)
        fidx = tq / step
        i0 = np.clip(np.floor(fidx).astype(np.int64), 0, n - 2)
        frac = fidx - i0
        valid = fidx <= n - 1
        hq = ht[:, i0] * (1.0 - frac) + ht[:, i0 + 1] * frac
        inner[:, i] = (hq * (trap_u * valid)[None, :]).sum(axis=1)

    # outer integral over detector positions
    xs = np.arange(n) * step
    dx2 = (xs[:, None] - xs[None, :]) ** 2  # [image x, detector]
    trap_x = np.full(n, step)
    trap_x[0] = trap_x[-1] = step / 2.0
    img = np.zeros((n, n))
    det = np.arange(n)[None, :]
    for jy in range(1, n):
        y = t[jy]
        r = np.sqrt(dx2 + y * y)
        fidx = r / step
        i0 = np.clip(np.floor(fidx).astype(np.int64), 0, n - 2)
        frac = fidx - i0
        valid = fidx <= n - 1
        iq = inner[det, i0] * (1.0 - frac) + inner[det, i0 + 1] * frac
        img[:, jy] = (-2.0 * y / np.pi) * (iq * valid * trap_x[None, :]).sum(axis=1)
    return RealGrid2D(step, img, "image")


def reconstruct(g: RealGrid2D, cfg: ReconConfig) -> RealGrid2D:
    """Dispatch to the configured method."""
    if cfg.method == "nufft":
        return reconstruct_nufft(g, cfg)
    if cfg.method == "trunc_sinc":
        return reconstruct_trunc_sinc(g, cfg)
    if cfg.method == "direct":
        return reconstruct_direct(g, cfg)
    if cfg.method in ("nearest", "linear"):
        return reconstruct_interp(g, cfg)
    if cfg.method == "backprojection":
        return reconstruct_backprojection(g)
    raise ValueError(f"unknown method {cfg.method!r}")
