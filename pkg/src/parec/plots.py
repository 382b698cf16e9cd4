"""Benchmark figure: reconstruction time versus relative error."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["save_error_runtime_figure"]

_MARKERS = {
    "nufft": "o",
    "direct": "s",
    "nearest": "^",
    "linear": "v",
    "trunc_sinc": "D",
    "backprojection": "P",
}


def save_error_runtime_figure(records, path) -> None:
    """Scatter/line plot of wall time against relative error, one curve per
    method, points ordered by oversampling factor."""
    by_method: dict[str, list] = {}
    for r in records:
        by_method.setdefault(r.method, []).append(r)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for method, rows in by_method.items():
        rows = sorted(rows, key=lambda r: r.c)
        errors = [max(r.error, 1e-16) for r in rows]
        times = [r.seconds for r in rows]
        ax.plot(
            errors,
            times,
            marker=_MARKERS.get(method, "x"),
            label=method,
            linestyle="-" if len(rows) > 1 else "none",
        )
        for r, e, t in zip(rows, errors, times):
            ax.annotate(f"c={r.c:g}", (e, t), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("relative $\\ell^2$ error vs direct reconstruction")
    ax.set_ylabel("wall time [s]")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
