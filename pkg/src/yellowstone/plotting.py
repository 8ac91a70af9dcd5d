"""Figure rendering for the report-style CLI outputs.

Each renderer takes already-computed data and writes one figure to a
file next to the delimited output; nothing here recomputes anything.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["plot_residuals", "plot_orbit", "plot_sigma", "plot_frontiers", "plot_terms"]


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_terms(ns, values, path, title="terms"):
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.scatter(ns, values, s=1, linewidths=0)
    ax.set_xlabel("n")
    ax.set_ylabel("a(n)")
    ax.set_title(title)
    _save(fig, path)


def plot_residuals(series, path):
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.scatter(series.n, series.residual, s=1, linewidths=0)
    ax.axhline(0.0, color="red", linewidth=0.7)
    ax.set_xlabel("n")
    ax.set_ylabel(f"a(n) - {series.curve} curve")
    ax.set_title(f"{series.term_filter} residuals")
    _save(fig, path)


def plot_orbit(offsets, path, start=None):
    xs = [t for t, _ in offsets]
    ys = [v for _, v in offsets]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(xs, ys, linewidth=0.8, marker=".", markersize=2)
    ax.set_yscale("log")
    ax.set_xlabel("steps from orbit minimum (backward negative)")
    ax.set_ylabel("value")
    title = "orbit" if start is None else f"orbit of {start}"
    ax.set_title(title)
    _save(fig, path)


def plot_sigma(sigma, path):
    ks = sorted(sigma)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(k) for k in ks], [sigma[k] for k in ks])
    ax.set_xlabel("kappa")
    ax.set_ylabel("frequency")
    ax.set_title("geyser multiplier distribution")
    _save(fig, path)


def plot_frontiers(snapshots, path):
    ns = [s.n for s in snapshots]
    fig, ax = plt.subplots(figsize=(8, 5))
    if snapshots and snapshots[0].even_lo is not None:
        ax.plot(ns, [s.even_lo for s in snapshots], label="even low", marker="o")
        ax.plot(ns, [s.even_hi for s in snapshots], label="even high", marker="o")
    ax.plot(ns, [s.comp_lo for s in snapshots], label="odd composite low", marker="s")
    ax.plot(ns, [s.comp_hi for s in snapshots], label="odd composite high", marker="s")
    ax.set_xlabel("n")
    ax.set_ylabel("frontier bound")
    ax.legend()
    ax.set_title("frontiers")
    _save(fig, path)
