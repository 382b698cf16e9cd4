"""Acceptance suite: one test per contract criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s``; the
``pytest -v`` status line carries the same verdict) and pins the agreed
tolerance.  The heavy N = 512 benchmark is shared by the criteria that need
it.
"""

import time

import numpy as np
import pytest

from parec import forward, harness, nufft, recon
from parec.grids import RealGrid2D
from parec.harness import rel_l2_error, run_benchmark
from parec.recon import ReconConfig
from parec.windows import KaiserBesselWindow

PHANTOM = forward.CirclePhantom(0.5, 0.5, 0.1)


def _verdict(num, name, ok, detail):
    print(f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} {name}: {detail}"


@pytest.fixture(scope="module")
def benchmark512():
    configs = [
        ReconConfig("nearest", c=1.0),
        ReconConfig("linear", c=1.0),
        ReconConfig("nearest", c=2.0),
        ReconConfig("linear", c=2.0),
        ReconConfig("trunc_sinc", c=2.0, k_interp=2.0),
        ReconConfig("nufft", c=2.0),
        ReconConfig("direct"),
        ReconConfig("backprojection"),
    ]
    records = run_benchmark(configs, PHANTOM, n=512, runs=3)
    return {(r.method, r.c): r for r in records}


def test_criterion_01_nufft_accuracy():
    n, trials = 512, 100
    rng = np.random.default_rng(42)
    nodes = rng.uniform(-n / 2, n / 2, n)
    window = KaiserBesselWindow(alpha=3 * np.pi, cutoff=3.0)
    p = nufft.plan(n, nodes, c=2.0, k_interp=3.0, window=window)
    signals = rng.standard_normal((trials, n)) + 1j * rng.standard_normal((trials, n))
    phase = np.exp(-2j * np.pi * np.outer(nodes, np.arange(n)) / n)
    reference = signals @ phase.T
    t0 = time.perf_counter()
    results = np.array([nufft.execute(p, s) for s in signals])
    elapsed = time.perf_counter() - t0
    err = np.abs(results - reference).max() / np.abs(reference).max()
    _verdict(1, "nufft accuracy", err <= 1e-6 and elapsed < 1.0,
             f"max rel err {err:.3e} <= 1e-6, {trials} transforms in {elapsed:.3f}s < 1s")


def test_criterion_02_window_decay():
    w = KaiserBesselWindow(alpha=3 * np.pi, cutoff=3.0)
    ratio = abs(w.spectrum(3.0) / w.spectrum(0.0))
    closed = 9 * np.pi / np.sinh(9 * np.pi)
    ok = abs(ratio - 3e-11) <= 0.1 * 3e-11 and ratio == pytest.approx(closed, rel=1e-8)
    _verdict(2, "window decay", ok, f"spectrum ratio {ratio:.4e} within 10% of 3e-11")


def test_criterion_03_error_table(benchmark512):
    b = benchmark512
    cells = {
        ("nearest", 1.0): (0.60, 0.90),
        ("nearest", 2.0): (0.30, 0.50),
        ("linear", 1.0): (0.50, 0.80),
        ("linear", 2.0): (0.15, 0.28),
        ("trunc_sinc", 2.0): (0.02, 0.07),
    }
    ok = all(lo <= b[key].error <= hi for key, (lo, hi) in cells.items())
    ok = ok and b[("nufft", 2.0)].error <= 0.012
    ordering = [
        b[("nearest", 1.0)].error,
        b[("linear", 1.0)].error,
        b[("nearest", 2.0)].error,
        b[("linear", 2.0)].error,
        b[("trunc_sinc", 2.0)].error,
        b[("nufft", 2.0)].error,
    ]
    ok = ok and all(a > c for a, c in zip(ordering, ordering[1:]))
    detail = ", ".join(f"{e:.3g}" for e in ordering)
    _verdict(3, "error table", ok, f"errors in range and strictly ordered: {detail}")


def test_criterion_04_runtime_ratios(benchmark512):
    b = benchmark512
    t_nufft = b[("nufft", 2.0)].seconds
    r_direct = b[("direct", 2.0)].seconds / t_nufft
    r_bp = b[("backprojection", 2.0)].seconds / t_nufft
    ok = r_direct >= 10.0 and r_bp >= 10.0
    _verdict(4, "runtime ratios", ok,
             f"direct/nufft {r_direct:.1f} >= 10, backprojection/nufft {r_bp:.1f} >= 10")


def test_criterion_05_complexity_scaling():
    cfg = ReconConfig("nufft")
    grids = {n: harness.benchmark_data(PHANTOM, n) for n in (256, 512)}
    runs = {256: [], 512: []}
    for n in (256, 512):
        recon.reconstruct(grids[n], cfg)  # warmup
    for _ in range(7):  # interleave sizes so load drift cancels
        for n in (256, 512):
            t0 = time.perf_counter()
            recon.reconstruct(grids[n], cfg)
            runs[n].append(time.perf_counter() - t0)
    ratio = float(np.median(runs[512]) / np.median(runs[256]))
    _verdict(5, "complexity scaling", ratio <= 5.0,
             f"time(512)/time(256) = {ratio:.2f} <= 5")


def test_criterion_06_small_n_equivalence():
    rng = np.random.default_rng(11)
    worst_nufft, worst_sinc = 0.0, 0.0
    for n in (8, 16, 32):
        for _ in range(20):
            g = RealGrid2D(1.0 / n, rng.standard_normal((n, n)), "data")
            ref = recon.reconstruct(g, ReconConfig("direct"))
            e1 = rel_l2_error(recon.reconstruct(g, ReconConfig("nufft")), ref)
            e2 = rel_l2_error(
                recon.reconstruct(g, ReconConfig("trunc_sinc", c=1.0, k_interp=n / 2.0)), ref
            )
            worst_nufft, worst_sinc = max(worst_nufft, e1), max(worst_sinc, e2)
    ok = worst_nufft <= 1e-5 and worst_sinc <= 1e-9
    _verdict(6, "small-N equivalence", ok,
             f"nufft {worst_nufft:.2e} <= 1e-5, full-period sinc {worst_sinc:.2e} <= 1e-9")


def test_criterion_07_forward_cross_validation():
    n, step = 256, 1.0 / 256
    t0 = time.perf_counter()
    analytic = forward.circle_data_grid(PHANTOM, n, step)
    simulated = forward.dalembert_forward(forward.sample_circle(PHANTOM, n, step))
    elapsed = time.perf_counter() - t0
    err = rel_l2_error(simulated, analytic)
    _verdict(7, "forward cross-validation", err <= 0.02 and elapsed < 120.0,
             f"rel err {err:.4f} <= 0.02 in {elapsed:.0f}s < 120s")


def test_criterion_08_noise_robustness():
    n = 256
    clean_data = harness.benchmark_data(PHANTOM, n)
    noisy_data = harness.benchmark_data(PHANTOM, n, noise=0.2, seed=7)
    again = harness.benchmark_data(PHANTOM, n, noise=0.2, seed=7)
    bitwise = np.array_equal(noisy_data.values, again.values)
    nsr = rel_l2_error(noisy_data, clean_data)
    finite = all(
        np.all(np.isfinite(recon.reconstruct(noisy_data, ReconConfig(m)).values))
        for m in recon.METHODS
    )
    clean = recon.reconstruct(clean_data, ReconConfig("nufft"))
    noisy = recon.reconstruct(noisy_data, ReconConfig("nufft"))
    amplification = rel_l2_error(noisy, clean) / nsr
    repro = np.array_equal(
        noisy.values, recon.reconstruct(again, ReconConfig("nufft")).values
    )
    ok = finite and bitwise and repro and amplification <= 3.0
    _verdict(8, "noise robustness", ok,
             f"all finite, bitwise reproducible, error/NSR {amplification:.2f} <= 3")


def test_criterion_09_error_runtime_shape():
    c_values = (1.0, 2.0, 4.0, 8.0)
    configs = [ReconConfig("linear", c=c) for c in c_values]
    configs += [ReconConfig("nufft", c=c) for c in c_values]
    records = run_benchmark(configs, PHANTOM, n=256, runs=9)
    by = {(r.method, r.c): r for r in records}
    ok = True
    for method in ("linear", "nufft"):
        errs = [by[(method, c)].error for c in c_values]
        times = [by[(method, c)].seconds for c in c_values]
        # allow double-precision floor noise in the error comparison
        ok = ok and all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))
        ok = ok and all(b >= a for a, b in zip(times, times[1:]))
    separated = by[("nufft", 2.0)].error < by[("linear", 8.0)].error
    ok = ok and separated
    _verdict(9, "error/runtime shape", ok,
             f"monotone over c={c_values}, nufft(c=2) err {by[('nufft', 2.0)].error:.2e} "
             f"< linear(c=8) err {by[('linear', 8.0)].error:.2e}")


def test_criterion_10_nyquist_check():
    n = 512
    phantom_img = forward.sample_circle(PHANTOM, n, 1.0 / n)
    rep_phantom = harness.sampling_check(phantom_img, energy_fraction=0.999)
    rng = np.random.default_rng(3)
    rep_noise = harness.sampling_check(
        RealGrid2D(1.0 / n, rng.standard_normal((n, n))), energy_fraction=0.999
    )
    ok = rep_phantom.nyquist_ok and not rep_noise.nyquist_ok
    _verdict(10, "Nyquist check", ok,
             f"phantom bandwidth index {rep_phantom.omega_index:.0f} ok, "
             f"white noise {rep_noise.omega_index:.0f} not ok")
