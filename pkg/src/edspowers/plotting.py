"""Figures for case reports (matplotlib, Agg backend)."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_growth(entries, path, title: str = "") -> Path:
    """log B_m against m^2: the slope approaches the canonical height."""
    m = np.array([e.m for e in entries], dtype=float)
    logB = np.array([math.log(e.B) if e.B > 1 else 0.0 for e in entries])
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(m ** 2, logB, "o-", ms=4)
    ax.set_xlabel("m^2")
    ax.set_ylabel("log B_m")
    ax.set_title(title or "denominator growth")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_survivors(report, path, title: str = "") -> Path:
    """Number of newforms that survive at each exponent l."""
    counts = {}
    for r in report.forms:
        for l in r.survivors:
            counts[l] = counts.get(l, 0) + 1
    fig, ax = plt.subplots(figsize=(6, 3.5))
    if counts:
        ls = sorted(counts)
        ax.bar([str(l) for l in ls[:40]], [counts[l] for l in ls[:40]])
        ax.tick_params(axis="x", labelrotation=90, labelsize=7)
    else:
        ax.text(0.5, 0.5, "no survivors", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("l")
    ax.set_ylabel("surviving newforms")
    ax.set_title(title or f"{report.family}: {len(report.forms)} newforms")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def plot_bp(report, path, title: str = "") -> Path:
    """log10 B_p(f) per newform and auxiliary prime; grey cells are B_p = 0."""
    primes = report.primes
    rows = report.forms[:80]
    data = np.full((len(rows), len(primes)), np.nan)
    for i, r in enumerate(rows):
        for j, p in enumerate(primes):
            v = r.bp.get(p, 0)
            if v:
                data[i, j] = math.log10(v) if v < 10 ** 300 else 300.0
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.12 * len(rows) + 1.5)))
    cmap = matplotlib.colormaps["viridis"].copy()
    cmap.set_bad("lightgrey")
    im = ax.imshow(np.ma.masked_invalid(data), aspect="auto", cmap=cmap, interpolation="nearest")
    ax.set_xticks(range(len(primes)), [str(p) for p in primes], fontsize=7)
    ax.set_yticks(range(len(rows)), [r.label for r in rows], fontsize=5)
    ax.set_xlabel("auxiliary prime p")
    fig.colorbar(im, ax=ax, label="log10 B_p(f)")
    ax.set_title(title or "B_p values")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
