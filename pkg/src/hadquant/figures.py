"""Matplotlib renderings written to image files (Agg backend, no display)."""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import bounds as bd  # noqa: E402
from .pipeline import PipelineTrace  # noqa: E402
from .quantization import QuantizerBank, staircase  # noqa: E402


def staircase_points(bank: QuantizerBank, i: int, lo: int, hi: int, per_unit: int = 4):
    """Sample ``IQ(DQ(y))`` on a uniform rational grid over ``[lo, hi]``."""
    ys = [Fraction(k, per_unit) for k in range(lo * per_unit, hi * per_unit + 1)]
    return ys, [staircase(bank, i, y) for y in ys]


def plot_staircase(ax, bank: QuantizerBank, i: int = 0, span: int | None = None):
    if span is None:
        span = 4 * (bank.Delta[i] + abs(bank.delta[i]))
    ys, vals = staircase_points(bank, i, -span, span)
    ax.step([float(y) for y in ys], vals, where="post", lw=1.2)
    ax.plot([-span, span], [-span, span], ls=":", color="grey", lw=0.8)
    ax.axhline(0, color="black", lw=0.5)
    ax.axvline(0, color="black", lw=0.5)
    ax.set_xlabel("y")
    ax.set_ylabel("IQ(DQ(y))")
    ax.set_title(
        f"channel {i}: Delta={bank.Delta[i]} delta={bank.delta[i]} "
        f"Gamma={bank.Gamma[i]} gamma={bank.gamma[i]}",
        fontsize=9,
    )


def plot_trace(ax, trace: PipelineTrace):
    idx = range(len(trace.x))
    ax.plot(idx, trace.x, "o-", label="x", lw=1)
    ax.plot(idx, trace.x_prime, "s--", label="x'", lw=1)
    ax.bar(idx, [a - b for a, b in zip(trace.x_prime, trace.x)], alpha=0.3, label="x' - x")
    ax.set_xlabel("component")
    ax.set_title(f"reconstruction, errInf = {trace.err_inf}", fontsize=9)
    ax.legend(fontsize=8)


def save_pipeline_figure(path: str, trace: PipelineTrace, bank: QuantizerBank) -> None:
    fig, (a, b) = plt.subplots(1, 2, figsize=(11, 4))
    plot_trace(a, trace)
    plot_staircase(b, bank, 0)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def bound_sweep(n: int, bank: QuantizerBank, xmax: int, points: int = 200):
    xs = sorted({xmax * k // points for k in range(points + 1)})
    rows = []
    for x in xs:
        rep = bd.full_report(n, bank, x)
        rows.append((x, rep.err_bound_general, rep.mag_via_error, rep.mag_theorem2))
    return rows


def save_bounds_figure(path: str, n: int, bank: QuantizerBank, xmax: int) -> None:
    rows = bound_sweep(n, bank, xmax)
    xs = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, [r[1] for r in rows], label="error bound")
    ax.plot(xs, [r[2] for r in rows], label="magnitude via error")
    if all(r[3] is not None for r in rows):
        ax.step(xs, [r[3] for r in rows], where="post", label="magnitude via nonzero count")
    ax.set_xlabel("xmax")
    ax.set_ylabel("bound")
    ax.set_title(f"bounds for n = {n}", fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
