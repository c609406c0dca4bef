"""Rendering helpers for the CLI report path: delimited samples and
matplotlib figures written next to the JSON output."""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

from .family import WitnessFamily
from .signature import SignatureFunction


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_signature_csv(fn: SignatureFunction, path, samples: int = 512) -> Path:
    """Uniform (theta, sigma) samples; points inside jump enclosures are
    skipped so the file only contains certified values."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["theta", "sigma"])
        for theta, sigma in fn.samples(samples):
            if sigma is not None:
                writer.writerow([f"{theta:.10f}", sigma])
    return path


def write_signature_plot(fn: SignatureFunction, path, title: str | None = None) -> Path:
    """Step plot of the signature function over one turn of the circle."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    cuts = [Fraction(0), *(j.midpoint for j in fn.jumps), Fraction(1)]
    for k, value in enumerate(fn.values):
        ax.hlines(value, float(cuts[k]), float(cuts[k + 1]), colors="C0", lw=2.0)
    for j in fn.jumps:
        label = str(j.midpoint) if j.exact else f"~{float(j.midpoint):.6f}"
        ax.axvline(float(j.midpoint), color="C3", ls=":", lw=0.9)
        ax.annotate(label, (float(j.midpoint), 0), textcoords="offset points",
                    xytext=(2, -12), fontsize=8, color="C3", rotation=90)
    rho = fn.integral()
    ax.set_xlabel(r"$\theta$  (circle parameter, $\omega = e^{2\pi i \theta}$)")
    ax.set_ylabel("Levine-Tristram signature")
    ax.set_xlim(0.0, 1.0)
    lo = min(0, *fn.values) - 1
    hi = max(0, *fn.values) + 1
    ax.set_ylim(lo, hi)
    ax.grid(True, alpha=0.3)
    head = title or "signature function"
    ax.set_title(f"{head}   (integral = {rho.value})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def write_family_csv(fam: WitnessFamily, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["i", "multiplicity", "rho", "threshold"])
        threshold = fam.c
        for i, (m, rho) in enumerate(zip(fam.multiplicities, fam.rho_values), start=1):
            writer.writerow([i, m, str(rho), str(threshold)])
            threshold = fam.c + 2 * fam.genus * rho
    return path


def write_family_plot(fam: WitnessFamily, path) -> Path:
    """Growth of the companion signature integrals against the recursion
    thresholds they must exceed."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    idx = list(range(1, fam.size + 1))
    rhos = [float(r) for r in fam.rho_values]
    thresholds = [float(fam.c)]
    for rho in fam.rho_values[:-1]:
        thresholds.append(float(fam.c + 2 * fam.genus * rho))
    ax.plot(idx, rhos, "o-", label=r"$\rho(J_i) = 4 m_i / 3$")
    ax.plot(idx, thresholds, "s--", color="C3", label="threshold to beat")
    ax.set_yscale("log")
    ax.set_xticks(idx)
    ax.set_xlabel("family index i")
    ax.set_ylabel("signature integral")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    ax.set_title(f"witness family, c = {fam.c}, genus {fam.genus}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)
