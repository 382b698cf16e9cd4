"""Phantoms and forward-data simulation for the planar sensor geometry.

Data grids hold the acoustic pressure on the detector line over time,
``g[m, n] = p(m*step, t=n*step)`` with unit sound speed (time is measured in
length units).  Circle-phantom data has a closed form; arbitrary images go
through spherical means plus the d'Alembert-type time integral.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import RealGrid2D

__all__ = [
    "CirclePhantom",
    "Ellipse",
    "shepp_logan_ellipses",
    "sample_circle",
    "circle_forward_analytic",
    "circle_data_grid",
    "sample_ellipses",
    "spherical_mean",
    "dalembert_forward",
    "CutoffSpec",
    "build_cutoff",
    "apply_cutoff",
    "add_gaussian_noise",
]


# ---------------------------------------------------------------------------
# phantoms

@dataclass(frozen=True)
class CirclePhantom:
    """Circular object with a hemispherical profile, supported in y > 0."""

    x0: float
    y0: float
    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("radius must be positive")
        if self.y0 - self.a <= 0:
            raise ValueError("circle must lie strictly inside the half-space y > 0")

    def validate_domain(self, extent: float) -> None:
        for lo, hi in ((self.x0 - self.a, self.x0 + self.a), (self.y0 - self.a, self.y0 + self.a)):
            if lo <= 0 or hi >= extent:
                raise ValueError("circle not contained in the computational square")


@dataclass(frozen=True)
class Ellipse:
    x0: float
    y0: float
    semi_x: float
    semi_y: float
    angle_deg: float
    amplitude: float


# Standard 10-ellipse head phantom table in [-1, 1]^2 coordinates
# (amplitude, semi-x, semi-y, center-x, center-y, rotation in degrees).
_SHEPP_LOGAN_TABLE = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
)


def shepp_logan_ellipses(extent: float = 1.0) -> list[Ellipse]:
    """Head phantom mapped so its bounding box sits in the upper part of the
    square: [-1,1]^2 -> [0.15 X, 0.85 X] x [0.2 X, 0.9 X]."""
    out = []
    for amp, sa, sb, cx, cy, ang in _SHEPP_LOGAN_TABLE:
        x = 0.15 * extent + (cx + 1.0) / 2.0 * 0.7 * extent
        y = 0.2 * extent + (cy + 1.0) / 2.0 * 0.7 * extent
        out.append(Ellipse(x, y, sa * 0.35 * extent, sb * 0.35 * extent, ang, amp))
    return out


def _image_grid_points(n: int, step: float):
    x = np.arange(n) * step
    return x[:, None], x[None, :]


def sample_circle(p: CirclePhantom, n: int, step: float) -> RealGrid2D:
    """Pointwise samples of (2/a) * sqrt(a^2 - |x - x0|^2)."""
    p.validate_domain(n * step)
    gx, gy = _image_grid_points(n, step)
    d2 = (gx - p.x0) ** 2 + (gy - p.y0) ** 2
    vals = (2.0 / p.a) * np.sqrt(np.maximum(p.a * p.a - d2, 0.0))
    return RealGrid2D(step, vals, "image")


def sample_ellipses(ellipses, n: int, step: float) -> RealGrid2D:
    """Sum of ellipse amplitudes at each grid point."""
    extent = n * step
    gx, gy = _image_grid_points(n, step)
    vals = np.zeros((n, n))
    for e in ellipses:
        if not (0 < e.x0 < extent and 0 < e.y0 < extent):
            raise ValueError("ellipse center outside the computational square")
        phi = np.deg2rad(e.angle_deg)
        dx, dy = gx - e.x0, gy - e.y0
        u = dx * np.cos(phi) + dy * np.sin(phi)
        v = -dx * np.sin(phi) + dy * np.cos(phi)
        vals += e.amplitude * ((u / e.semi_x) ** 2 + (v / e.semi_y) ** 2 <= 1.0)
    return RealGrid2D(step, vals, "image")


# ---------------------------------------------------------------------------
# analytic circle data

def circle_forward_analytic(p: CirclePhantom, x, t):
    """Pressure on the detector line for the circle phantom.

    Closed form obtained from the 3D uniform-ball solution by the method of
    descent: the phantom profile is the chord length of a ball of radius
    ``a`` divided by ``a``.  With d the detector-to-center distance and the
    principal branches of complex sqrt/log, all arrival-time cases collapse
    into one expression whose real part is the pressure.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    a = p.a
    d2 = (x - p.x0) ** 2 + p.y0 ** 2
    sp = np.sqrt(((t + a) ** 2 - d2).astype(complex))
    sm = np.sqrt(((t - a) ** 2 - d2).astype(complex))
    val = ((sp - sm) - t * np.log((sp + (t + a)) / (sm + (t - a)))).real / a
    out = np.where(t > 0, val, 0.0)
    return out if out.ndim else float(out)


def circle_data_grid(p: CirclePhantom, n: int, step: float) -> RealGrid2D:
    x = np.arange(n) * step
    t = np.arange(n) * step
    vals = circle_forward_analytic(p, x[:, None], t[None, :])
    return RealGrid2D(step, vals, "data")


# ---------------------------------------------------------------------------
# spherical means and the time integral

def _bilinear(values: np.ndarray, step: float, px, py):
    """Bilinear interpolation with zero extension outside the grid."""
    n0, n1 = values.shape
    fx = px / step
    fy = py / step
    i0 = np.floor(fx).astype(np.int64)
    j0 = np.floor(fy).astype(np.int64)
    tx = fx - i0
    ty = fy - j0
    out = np.zeros(np.broadcast(fx, fy).shape)
    for di, wx in ((0, 1.0 - tx), (1, tx)):
        for dj, wy in ((0, 1.0 - ty), (1, ty)):
            ii = i0 + di
            jj = j0 + dj
            ok = (ii >= 0) & (ii < n0) & (jj >= 0) & (jj < n1)
            w = wx * wy
            vals = np.where(ok, values[np.clip(ii, 0, n0 - 1), np.clip(jj, 0, n1 - 1)], 0.0)
            out = out + w * vals
    return out


def spherical_mean(f: RealGrid2D, x: float, r: float) -> float:
    """Average of the image over the full circle of radius r centered at
    (x, 0); the image is extended by zero outside its grid."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0:
        return float(_bilinear(f.values, f.step, np.asarray(x), np.asarray(0.0)))
    n_ang = max(8, 2 * int(np.ceil(np.pi * r / f.step)))
    phi = 2.0 * np.pi * np.arange(n_ang) / n_ang
    px = x + r * np.cos(phi)
    py = r * np.sin(phi)
    return float(np.mean(_bilinear(f.values, f.step, px, py)))


def _spherical_mean_table(f: RealGrid2D, radii: np.ndarray) -> np.ndarray:
    """Means over circles centered at every detector sample, one row per
    detector position, one column per radius."""
    n = f.n
    xs = np.arange(n) * f.step
    table = np.empty((n, radii.size))
    for j, r in enumerate(radii):
        if r == 0:
            table[:, j] = _bilinear(f.values, f.step, xs, np.zeros(n))
            continue
        n_ang = max(8, 2 * int(np.ceil(np.pi * r / f.step)))
        phi = 2.0 * np.pi * np.arange(n_ang) / n_ang
        px = xs[:, None] + r * np.cos(phi)[None, :]
        py = np.broadcast_to(r * np.sin(phi)[None, :], (n, n_ang))
        table[:, j] = np.mean(_bilinear(f.values, f.step, px, py), axis=1)
    return table


def dalembert_forward(f: RealGrid2D, refine: int = 4) -> RealGrid2D:
    """Simulate detector-line data from an image grid.

    Spherical means are tabulated on a radius grid ``refine`` times finer
    than the data grid, the Abel-type integral
    ``A(t) = int_0^t r M(r) / sqrt(t^2 - r^2) dr`` is evaluated in closed
    form for the piecewise-linear interpolant of the table (the integrable
    endpoint singularity and the wavefront kinks in M are then harmless),
    and the time derivative is a finite difference on the fine grid.
    """
    n = f.n
    step = f.step
    fine = step / refine
    n_fine = refine * (n - 1) + 2
    radii = np.arange(n_fine + 1) * fine
    table = _spherical_mean_table(f, radii)

    accum = np.zeros((n, n_fine))  # accum[:, j] = A(j * fine)
    for j in range(1, n_fine):
        t = j * fine
        r = radii[: j + 1]
        sq = np.sqrt(np.maximum(t * t - r * r, 0.0))
        # antiderivatives of r/sqrt(t^2-r^2) and r^2/sqrt(t^2-r^2)
        i1 = -sq
        i2 = 0.5 * (t * t * np.arcsin(np.clip(r / t, -1.0, 1.0)) - r * sq)
        d1 = np.diff(i1)
        d2 = np.diff(i2)
        rk = r[:-1]
        wk = np.zeros(j + 1)
        wk[:-1] += d1 + (rk * d1 - d2) / fine  # weight on the left cell node
        wk[1:] += (d2 - rk * d1) / fine  # weight on the right cell node
        accum[:, j] = table[:, : j + 1] @ wk

    deriv = np.empty((n, n_fine))
    deriv[:, 1:-1] = (accum[:, 2:] - accum[:, :-2]) / (2.0 * fine)
    deriv[:, -1] = (3.0 * accum[:, -1] - 4.0 * accum[:, -2] + accum[:, -3]) / (2.0 * fine)
    deriv[:, 0] = 0.0
    data = deriv[:, :: refine][:, :n].copy()
    data[:, 0] = 0.0  # pressure trace starts at zero by definition
    return RealGrid2D(step, data, "data")


# ---------------------------------------------------------------------------
# cutoff window and noise

@dataclass(frozen=True)
class CutoffSpec:
    """Mollifier parameter (squared-length units) and aperture size."""

    epsilon: float
    extent: float = 1.0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if np.sqrt(self.epsilon) >= self.extent / 2.0:
            raise ValueError("mollifier support must be small compared to the aperture")


def _mollifier_rings(epsilon: float, n_rings: int = 48):
    """Radial decomposition of the normalized bump
    exp(-1/(epsilon - rho^2)^4) into ring radii and masses.

    The radial mass concentrates on rho^2 = O(epsilon^5), so the integral is
    taken in the variable y = rho^2 * 4/epsilon^5 with Gauss-Laguerre nodes;
    exponents are taken relative to the peak so nothing overflows.
    """
    y, v = np.polynomial.laguerre.laggauss(n_rings)
    s = epsilon ** 5 / 4.0
    w = s * y  # rho^2
    w = np.minimum(w, epsilon * (1.0 - 1e-12))
    log_rel = 1.0 / epsilon ** 4 - 1.0 / (epsilon - w) ** 4  # <= 0
    mass = v * np.exp(np.maximum(log_rel + y, -700.0))
    mass = mass / mass.sum()
    return np.sqrt(w), mass


def build_cutoff(spec: CutoffSpec, n: int, step: float, n_ang: int = 512) -> RealGrid2D:
    """Convolution of the normalized bump with the indicator of the
    computational square [0, X]^2, sampled on the data grid."""
    extent = spec.extent
    rad = np.sqrt(spec.epsilon)
    radii, masses = _mollifier_rings(spec.epsilon)
    gx, gy = _image_grid_points(n, step)
    gx = np.broadcast_to(gx, (n, n))
    gy = np.broadcast_to(gy, (n, n))
    inner = np.minimum(np.minimum(gx, extent - gx), np.minimum(gy, extent - gy))
    vals = np.where(inner >= rad, 1.0, 0.0)
    band = (inner < rad) & (inner > -rad)
    if np.any(band):
        phi = 2.0 * np.pi * np.arange(n_ang) / n_ang
        cs, sn = np.cos(phi), np.sin(phi)
        px = gx[band]
        py = gy[band]
        acc = np.zeros(px.size)
        for rho, m in zip(radii, masses):
            qx = px[:, None] - rho * cs[None, :]
            qy = py[:, None] - rho * sn[None, :]
            ok = (qx >= 0) & (qx <= extent) & (qy >= 0) & (qy <= extent)
            acc += m * ok.mean(axis=1)
        vals[band] = acc
    return RealGrid2D(step, vals, "data")


def apply_cutoff(g: RealGrid2D, w: RealGrid2D) -> RealGrid2D:
    if g.values.shape != w.values.shape:
        raise ValueError("cutoff window shape does not match the data grid")
    return g.like(g.values * w.values)


def add_gaussian_noise(g: RealGrid2D, level: float, seed: int) -> RealGrid2D:
    """Add i.i.d. zero-mean Gaussian noise with standard deviation
    level * max|g|; deterministic for a fixed seed."""
    if level < 0:
        raise ValueError("noise level must be nonnegative")
    if level == 0:
        return g.like(g.values.copy())
    sigma = level * np.max(np.abs(g.values))
    rng = np.random.default_rng(seed)
    return g.like(g.values + rng.normal(0.0, sigma, g.values.shape))
