"""Delimited and JSON report writers, plus the figures rendered next to them.

Numbers go through a fixed %.12g format so that reruns with the same
configuration produce byte-identical CSV and JSON; figures are rendered with
the Agg backend straight to files and carry no determinism promise.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = [
    "fmt",
    "write_csv",
    "write_json",
    "figure_construction",
    "figure_sweep",
    "figure_bounds",
    "figure_search",
    "figure_entropy",
    "figure_appendix",
    "figure_phase",
]


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def write_json(path: Path, doc: dict) -> None:
    with open(path, "w") as fh:
        json.dump(_jsonable(doc), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_construction(path: Path, out, sigma, delta_cert: float) -> None:
    plt = _pyplot()
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    ax1.semilogy(out.thetas, 2.0 * np.pi * sigma.density, lw=0.7)
    ax1.axhline(delta_cert, color="tab:red", ls="--", label=f"certified floor {delta_cert:.3g}")
    ax1.set_ylabel(r"$2\pi\,\sigma'$")
    ax1.legend(loc="upper right", fontsize=8)
    ax2.semilogy(out.thetas, np.abs(out.phi_star_grid), lw=0.7)
    ax2.set_ylabel(r"$|\varphi_n^*|$")
    ax2.set_xlabel(r"$\theta$")
    fig.suptitle(f"construction at n = {out.n}")
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_sweep(path: Path, ns, values, band) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    ratios = np.asarray(values) / np.sqrt(np.asarray(ns, dtype=float))
    ax.semilogx(ns, ratios, "o-", base=2)
    ax.axhspan(band[0], band[1], alpha=0.15, color="tab:green")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$|\varphi_n(1)| / \sqrt{n}$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_bounds(path: Path, masses, values, bound) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(masses, values, "o-", label="equidistant-atom family")
    ax.axhline(bound, color="tab:red", ls="--", label="upper bound")
    ax.set_xlabel("atom mass")
    ax.set_ylabel(r"$|\varphi_n(1)|$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_search(path: Path, result) -> None:
    plt = _pyplot()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.plot(result.trace, "o-")
    ax1.axhline(result.bound, color="tab:red", ls="--")
    ax1.set_xlabel("sweep")
    ax1.set_ylabel(r"$|\varphi_n(1)|$")
    thetas = [t for t, _ in result.measure.atoms]
    masses = [m for _, m in result.measure.atoms]
    ax2.stem(thetas, masses)
    ax2.set_xlabel(r"$\theta$")
    ax2.set_ylabel("atom mass")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_entropy(path: Path, report) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(report.ns, report.entropies, "o", base=2, label="entropy")
    xs = np.linspace(np.log(report.ns.min()), np.log(report.ns.max()), 50)
    ax.plot(np.exp(xs), report.intercept + report.slope * xs, "-", label=f"slope {report.slope:.3f}")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$\Omega_n$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_appendix(path: Path, report) -> None:
    plt = _pyplot()
    lemmas = sorted({r.lemma for r in report.rows})
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for i, lemma in enumerate(lemmas):
        rows = report.by_lemma(lemma)
        ax.plot([i] * len(rows), [r.ratio_min for r in rows], "v", color="tab:blue")
        ax.plot([i] * len(rows), [r.ratio_max for r in rows], "^", color="tab:orange")
    ax.set_xticks(range(len(lemmas)))
    ax.set_xticklabels(lemmas, rotation=45, ha="right", fontsize=7)
    ax.set_yscale("log")
    ax.set_ylabel("ratio to asserted envelope")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_phase(path: Path, ms, ratios) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(ms, ratios, "o-", base=2)
    ax.set_xlabel("m")
    ax.set_ylabel(r"$\max |\phi'| / m$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
