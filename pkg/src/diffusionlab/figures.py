"""Render experiment results to figure files next to the delimited output.

Figures are built from the already-emitted tables so a plot never shows
anything the CSVs do not contain.  Rendering is byte-deterministic: Agg
backend, fixed dpi, and pinned PNG metadata.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from . import __version__  # noqa: E402
from .experiments import ExperimentResult, Table  # noqa: E402

__all__ = ["render"]

plt.rcParams.update({
    "figure.figsize": (7.0, 4.5),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
})


def _save_kwargs(result: ExperimentResult) -> dict:
    # deterministic PNG metadata carrying the same provenance as the CSVs
    import json

    return {"dpi": 150, "metadata": {
        "Software": f"diffusionlab {__version__}",
        "Description": json.dumps(result.config, sort_keys=True,
                                  separators=(",", ":")),
    }}


def _table(result: ExperimentResult, name: str) -> Table:
    for t in result.tables:
        if t.name == name:
            return t
    raise KeyError(f"result has no table named '{name}'")


def _columns(table: Table) -> dict[str, np.ndarray]:
    data = np.array([[float(v) if not isinstance(v, str) else np.nan for v in row]
                     for row in table.rows])
    return {c: data[:, i] for i, c in enumerate(table.columns)}


def _save(fig, path: Path, result: ExperimentResult) -> None:
    fig.savefig(path, **_save_kwargs(result))
    plt.close(fig)


def _density_step(ax, table: Table, label: str, **kwargs):
    cols = _columns(table)
    edges = np.append(cols["bin_left"], cols["bin_right"][-1])
    ax.stairs(cols["density"], edges, label=label, **kwargs)


def _fig_clt(result: ExperimentResult, out: Path) -> list[Path]:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    dens = _table(result, "density")
    _density_step(ax1, dens, "ensemble", fill=True, alpha=0.5)
    cols = _columns(dens)
    n = result.config["n"]
    xs = np.linspace(cols["bin_left"][0], cols["bin_right"][-1], 400)
    ax1.plot(xs, np.exp(-xs ** 2 / (2 * n)) / np.sqrt(2 * np.pi * n),
             "k--", label="normal limit")
    ax1.set_xlabel("X(n)")
    ax1.set_ylabel("density")
    ax1.legend()

    curve = _columns(_table(result, "curve"))
    ax2.plot(curve["n"], curve["variance"], "o-", label="sample variance")
    ax2.plot(curve["n"], curve["n"], "k--", label="n * sigma^2")
    ax2.set_xlabel("n")
    ax2.set_ylabel("variance")
    ax2.legend()
    fig.tight_layout()
    path = out / "clt_convergence.png"
    _save(fig, path, result)
    return [path]


def _fig_rayleigh(result: ExperimentResult, out: Path) -> list[Path]:
    fig, ax = plt.subplots()
    for dim, style in ((1, "o-"), (2, "s-"), (3, "^-")):
        cols = _columns(_table(result, f"curve_{dim}d"))
        ax.plot(cols["n"], cols["msd"], style, label=f"{dim}D total MSD")
    ns = _columns(_table(result, "curve_1d"))["n"]
    ax.plot(ns, ns, "k--", alpha=0.6, label="slope 1")
    ax.set_xlabel("n")
    ax.set_ylabel("mean squared displacement")
    ax.legend()
    fig.tight_layout()
    path = out / "rayleigh_coefficients.png"
    _save(fig, path, result)
    return [path]


def _fig_pearson(result: ExperimentResult, out: Path) -> list[Path]:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    _density_step(ax1, _table(result, "radial_density"), "distance from start",
                  fill=True, alpha=0.6)
    ax1.set_xlabel("r")
    ax1.set_ylabel("density")
    ax1.legend()
    curve = _columns(_table(result, "curve"))
    ell = result.config["ell"]
    ax2.plot(curve["n"], curve["msd"], "o-", label="mean r^2")
    ax2.plot(curve["n"], curve["n"] * ell ** 2, "k--", label="n * ell^2")
    ax2.set_xlabel("n")
    ax2.set_ylabel("mean squared distance")
    ax2.legend()
    fig.tight_layout()
    path = out / "pearson_msd.png"
    _save(fig, path, result)
    return [path]


def _fig_brownian(result: ExperimentResult, out: Path) -> list[Path]:
    fig, ax = plt.subplots()
    _density_step(ax, _table(result, "walk_density"), "interval-sampled walk",
                  fill=True, alpha=0.5)
    _density_step(ax, _table(result, "ensemble_density"), "summed-variable ensemble",
                  linewidth=1.8)
    ax.set_xlabel("displacement")
    ax.set_ylabel("density")
    ax.legend()
    fig.tight_layout()
    path = out / "brownian_bridge.png"
    _save(fig, path, result)
    return [path]


def _fig_pde_vs_mc(result: ExperimentResult, out: Path) -> list[Path]:
    fig, axes = plt.subplots(1, 3, figsize=(13, 4.0))
    _density_step(axes[0], _table(result, "mc_density"), "ensemble", fill=True,
                  alpha=0.5)
    cols = _columns(_table(result, "mc_density"))
    n = result.config["n"]
    xs = np.linspace(cols["bin_left"][0], cols["bin_right"][-1], 400)
    axes[0].plot(xs, np.exp(-xs ** 2 / (2 * n)) / np.sqrt(2 * np.pi * n), "k--",
                 label="kernel")
    axes[0].set_title("ensemble vs kernel")
    axes[0].legend()
    for ax, name, title in ((axes[1], "ftcs_vs_green", "FTCS vs kernel"),
                            (axes[2], "ftcs_vs_series", "FTCS vs sine series")):
        prof = _columns(_table(result, name))
        ax.plot(prof["x"], prof["numeric"], label="numeric")
        ax.plot(prof["x"], prof["analytic"], "k--", label="analytic")
        ax.set_title(title)
        ax.legend()
    fig.tight_layout()
    path = out / "pde_vs_mc.png"
    _save(fig, path, result)
    return [path]


def _fig_bounded(result: ExperimentResult, out: Path) -> list[Path]:
    fig, ax = plt.subplots()
    for label in ("reflect", "reject", "clamp"):
        _density_step(ax, _table(result, f"density_{label}"), label)
    prof = _columns(_table(result, "reflecting_pde"))
    ax.plot(prof["x"], prof["numeric"], "k--", label="reflecting PDE")
    ax.set_xlabel("X")
    ax.set_ylabel("density")
    ax.legend()
    fig.tight_layout()
    path = out / "bounded_bias.png"
    _save(fig, path, result)
    return [path]


def _fig_einstein(result: ExperimentResult, out: Path) -> list[Path]:
    fig, ax = plt.subplots()
    cols = _columns(_table(result, "msd_curve"))
    tau = result.config["tau"]
    times = cols["n"] * tau
    ax.plot(times, cols["msd"], "o", label="simulated MSD")
    d_m = result.metrics["d_macroscopic"]
    ax.plot(times, 2 * d_m * times, "k--", label="2 D t (Stokes-Einstein)")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("MSD (m^2)")
    ax.legend()
    fig.tight_layout()
    path = out / "einstein_avogadro.png"
    _save(fig, path, result)
    return [path]


def _fig_inject(result: ExperimentResult, out: Path) -> list[Path]:
    table = _table(result, "renormalization")
    bins = [int(r[0]) for r in table.rows]
    before = [float(eval_fraction(r[2])) for r in table.rows]
    after = [float(r[4]) for r in table.rows]
    fig, ax = plt.subplots()
    width = 0.4
    ax.bar([b - width / 2 for b in bins], before, width, label="before")
    ax.bar([b + width / 2 for b in bins], after, width, label="after injection")
    ax.set_xlabel("interval")
    ax.set_ylabel("effective probability")
    ax.set_xticks(bins)
    ax.legend()
    fig.tight_layout()
    path = out / "inject_renormalize.png"
    _save(fig, path, result)
    return [path]


def eval_fraction(text: str) -> float:
    num, _, den = text.partition("/")
    return float(num) / float(den) if den else float(num)


_RENDERERS = {
    "clt-convergence": _fig_clt,
    "rayleigh-coefficients": _fig_rayleigh,
    "pearson-msd": _fig_pearson,
    "brownian-bridge": _fig_brownian,
    "pde-vs-mc": _fig_pde_vs_mc,
    "bounded-bias": _fig_bounded,
    "einstein-avogadro": _fig_einstein,
    "inject-renormalize": _fig_inject,
}


def render(result: ExperimentResult, out_dir: Path) -> list[Path]:
    """Render the experiment's figures into ``out_dir``; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    renderer = _RENDERERS.get(result.name)
    if renderer is None:
        return []
    return renderer(result, out_dir)
