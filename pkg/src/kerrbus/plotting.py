"""Figure rendering for the CLI report paths.

Every renderer writes a PNG next to the delimited output and returns the
path. Uses the Agg backend so headless runs work.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_heatmap(path, r_values, theta_values, values, label, title=None):
    """Map of a sweep quantity over the (theta, r) plane."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(theta_values, r_values, values, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=label)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$r$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_marginal(path, xs, density, title=None):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, density, lw=1.5)
    ax.set_xlabel(r"$x_\lambda$")
    ax.set_ylabel("probability density")
    ax.grid(alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_wigner(path, qs, ps, values, title=None):
    """Contour map of Wigner values; negative regions get their own shade."""
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    vmax = float(np.max(np.abs(values))) or 1.0
    mesh = ax.pcolormesh(qs, ps, values.T, shading="nearest", cmap="RdBu_r",
                         vmin=-vmax, vmax=vmax)
    fig.colorbar(mesh, ax=ax, label=r"$W(q, p)$")
    ax.set_xlabel(r"$q$")
    ax.set_ylabel(r"$p$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_gate_report(path, report, title=None):
    """Branch means with one-standard-deviation bands; visualises resolvability."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    labels = ["even (0)", "odd", "even (2theta)"]
    means = [report.mean_e, report.mean_o, report.mean_e]
    sds = [report.sd_0, report.sd_theta, report.sd_2theta]
    ax.errorbar(range(3), means, yerr=sds, fmt="o", capsize=6)
    ax.set_xticks(range(3), labels)
    ax.set_ylabel(r"$\langle x_\lambda \rangle \pm \sigma$")
    ax.grid(alpha=0.3)
    caption = f"S = {report.S_caption:.4g} ({'resolvable' if report.resolvable else 'not resolvable'})"
    ax.set_title(title or caption)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
