"""Named experiments: resolved parameters in, verdicts and tables out.

Each experiment is a pure function of its resolved parameter dict (seed
included), returning metrics, pass/fail verdicts against the thresholds
frozen in its defaults, and the tables the reporting layer serializes.
Unknown parameter names are rejected so a config typo cannot silently run
a different experiment than intended.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np
from scipy.stats import norm

from . import boundary_lab, einstein, pde, walks
from .ensembles import (
    EmpiricalDensity,
    advance,
    gaussian,
    histogram,
    init_ensemble,
    inject_realizations,
    rademacher,
    sample_moments,
)
from .stats import ks_statistic, ks_statistic_mid, ks_two_sample, l1_linf_distance

__all__ = [
    "ConfigError",
    "Table",
    "ExperimentResult",
    "EXPERIMENTS",
    "experiment_names",
    "resolve_params",
    "run_experiment",
]

DENSITY_COLUMNS = ("bin_left", "bin_right", "count", "density")
CURVE_COLUMNS = ("n", "mean", "variance", "msd")
PROFILE_COLUMNS = ("x", "numeric", "analytic")


class ConfigError(ValueError):
    """Invalid experiment name or parameters; maps to a usage error."""


@dataclass(frozen=True)
class Table:
    """One delimited output: a density, a curve, a profile, or generic rows."""

    name: str
    kind: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass
class ExperimentResult:
    name: str
    config: dict
    metrics: dict
    verdicts: dict[str, bool]
    tables: tuple[Table, ...] = ()

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


def _density_table(name: str, dens: EmpiricalDensity) -> Table:
    rows = tuple(
        (float(left), float(right), int(c), float(d))
        for left, right, c, d in zip(dens.bin_edges[:-1], dens.bin_edges[1:],
                                     dens.counts, dens.density)
    )
    return Table(name=name, kind="density", columns=DENSITY_COLUMNS, rows=rows)


def _density_table_from_arrays(name: str, edges: np.ndarray, counts: np.ndarray,
                               n_total: int) -> Table:
    density = counts / (n_total * np.diff(edges))
    rows = tuple(
        (float(left), float(right), int(c), float(d))
        for left, right, c, d in zip(edges[:-1], edges[1:], counts, density)
    )
    return Table(name=name, kind="density", columns=DENSITY_COLUMNS, rows=rows)


def _curve_table(name: str, rows) -> Table:
    return Table(name=name, kind="curve", columns=CURVE_COLUMNS,
                 rows=tuple(tuple(r) for r in rows))


def _profile_table(name: str, xs, numeric, analytic) -> Table:
    rows = tuple((float(x), float(u), float(a))
                 for x, u, a in zip(xs, numeric, analytic))
    return Table(name=name, kind="profile", columns=PROFILE_COLUMNS, rows=rows)


def _checkpoints(n: int, k: int) -> list[int]:
    marks = sorted({int(round(v)) for v in np.linspace(n / k, n, k)})
    return [m for m in marks if m >= 1]


# ------------------------------------------------------------------ experiments

def _clt_convergence(p: dict) -> ExperimentResult:
    n, n_total, seed = p["n"], p["particles"], p["seed"]
    ens = init_ensemble(n_total, rademacher(), seed)
    curve_rows = []
    reached = 0
    for mark in _checkpoints(n, p["checkpoints"]):
        ens = advance(ens, mark - reached)
        reached = mark
        mean, var = sample_moments(ens)
        curve_rows.append((mark, mean, var, var + mean ** 2))

    mean, variance = sample_moments(ens)
    standardized = ens.values / np.sqrt(n)
    ks_mid = ks_statistic_mid(standardized, norm.cdf)
    ks_classic = ks_statistic(standardized, norm.cdf)
    var_rel_err = abs(variance - n) / n

    # sign sums live on a lattice of spacing 2 and parity n; width-2 bins
    # with edges of the opposite parity hold exactly one atom each
    half = int(np.ceil(4.5 * np.sqrt(n)))
    start = -(half + 1) if (half % 2) == (n % 2) else -(half + 2)
    edges = np.arange(start, -start + 1, 2.0)

    metrics = {
        "ks_mid": ks_mid,
        "ks_classic": ks_classic,
        "sample_mean": mean,
        "sample_variance": variance,
        "expected_variance": float(n),
        "variance_rel_error": var_rel_err,
    }
    verdicts = {
        "ks_mid_below_threshold": ks_mid < p["ks_threshold"],
        "variance_within_tolerance": var_rel_err < p["variance_tolerance"],
    }
    tables = (
        _density_table("density", histogram(ens, edges)),
        _curve_table("curve", curve_rows),
    )
    return ExperimentResult("clt-convergence", p, metrics, verdicts, tables)


_RAYLEIGH_RULES = {
    1: (walks.RademacherPhase(), 0.5),
    2: (walks.UniformPhase2D(), 0.25),
    3: (walks.UnitVector3D(), 1.0 / 6.0),
}


def _rayleigh_coefficients(p: dict) -> ExperimentResult:
    n, n_total, seed, tol = p["n"], p["particles"], p["seed"], p["tolerance"]
    marks = _checkpoints(n, p["snapshots"])
    metrics: dict = {}
    verdicts: dict = {}
    tables = []
    var_se = np.sqrt(2.0 / (n_total - 1))
    for dim, (rule, target) in _RAYLEIGH_RULES.items():
        cfg = walks.WalkConfig(dimension=dim, rule=rule, n_particles=n_total,
                               seed=seed, n_steps=n)
        res = walks.rayleigh_walk(cfg, snapshot_steps=marks)
        fit = walks.msd_fit(res.snapshot_steps, res.snapshots)
        metrics[f"d_eff_{dim}d_per_axis"] = list(fit.d_per_axis)
        metrics[f"d_eff_{dim}d"] = fit.d_total
        metrics[f"d_target_{dim}d"] = target
        ok = all(abs(d - target) / target < tol for d in fit.d_per_axis)
        verdicts[f"coefficient_{dim}d_within_tolerance"] = ok
        if dim > 1:
            variances = res.final_positions.var(axis=0, ddof=1)
            spread = (variances.max() - variances.min()) / variances.mean()
            metrics[f"isotropy_spread_{dim}d"] = float(spread)
            verdicts[f"isotropy_{dim}d_within_5se"] = spread < 5.0 * var_se
        rows = []
        for step, snap in zip(res.snapshot_steps, res.snapshots):
            rows.append((step, float(snap[:, 0].mean()),
                         float(snap.var(axis=0, ddof=1).mean()),
                         float((snap ** 2).sum(axis=1).mean())))
        tables.append(_curve_table(f"curve_{dim}d", rows))
    return ExperimentResult("rayleigh-coefficients", p, metrics, verdicts,
                            tuple(tables))


def _pearson_msd(p: dict) -> ExperimentResult:
    n, ell, n_total, seed = p["n"], p["ell"], p["particles"], p["seed"]
    cfg = walks.WalkConfig(dimension=2, rule=walks.PearsonFixedStep(ell),
                           n_particles=n_total, seed=seed, n_steps=n)
    marks = _checkpoints(n, p["snapshots"])
    res = walks.pearson_walk(cfg, snapshot_steps=marks)
    r = res.radial_distances
    ratio = float(np.mean(r ** 2) / (n * ell * ell))

    counts, edges = np.histogram(r, bins="fd")
    curve_rows = [(step, float(snap[:, 0].mean()),
                   float(snap.var(axis=0, ddof=1).mean()),
                   float((snap ** 2).sum(axis=1).mean()))
                  for step, snap in zip(res.snapshot_steps, res.snapshots)]
    metrics = {"mean_r_squared_ratio": ratio, "expected_r_squared": n * ell * ell}
    verdicts = {"r_squared_within_tolerance":
                abs(ratio - 1.0) < p["tolerance"]}
    tables = (
        _density_table_from_arrays("radial_density", edges, counts, n_total),
        _curve_table("curve", curve_rows),
    )
    return ExperimentResult("pearson-msd", p, metrics, verdicts, tables)


def _brownian_bridge(p: dict) -> ExperimentResult:
    sigma, tau, n, n_total, seed = (p["sigma"], p["tau"], p["n"],
                                    p["particles"], p["seed"])
    scales = einstein.BrownianScales(sigma_sq=sigma * sigma, tau=tau)
    d_st = einstein.d_stochastic(scales)
    d_reduced = einstein.reduce_to_laplace(d_st, tau)

    cfg = walks.WalkConfig(dimension=1, rule=walks.BrownianGaussian(sigma, tau),
                           n_particles=n_total, seed=seed)
    walk = walks.brownian_walk(cfg, total_time=n * tau)
    ens = advance(init_ensemble(n_total, gaussian(0.0, sigma), seed + 1), n)

    walk_x = walk.final_positions[:, 0]
    ks = ks_two_sample(walk_x, ens.values)
    threshold = p["ks_factor"] * np.sqrt(2.0 / n_total)
    identity_err = abs(d_reduced - sigma * sigma / 2.0) / (sigma * sigma / 2.0)

    span = 4.5 * sigma * np.sqrt(n)
    edges = np.linspace(-span, span, p["bins"] + 1)
    walk_counts, _ = np.histogram(walk_x, bins=edges)
    ens_counts, _ = np.histogram(ens.values, bins=edges)

    metrics = {
        "d_stochastic": d_st,
        "d_reduced": d_reduced,
        "half_sigma_squared": sigma * sigma / 2.0,
        "two_sample_ks": ks,
        "two_sample_threshold": float(threshold),
    }
    verdicts = {
        "walk_matches_summed_ensemble": ks < threshold,
        "reduction_identity_exact": identity_err <= 1e-15,
    }
    tables = (
        _density_table_from_arrays("walk_density", edges, walk_counts, n_total),
        _density_table_from_arrays("ensemble_density", edges, ens_counts, n_total),
    )
    return ExperimentResult("brownian-bridge", p, metrics, verdicts, tables)


def _pde_vs_mc(p: dict) -> ExperimentResult:
    n, n_total, seed = p["n"], p["particles"], p["seed"]
    lam = p["lambda"]

    # (a) summed-Gaussian ensemble against the instantaneous-source kernel
    ens = advance(init_ensemble(n_total, gaussian(0.0, 1.0), seed), n)
    d_coeff = 0.5  # sigma^2 / 2
    sigma_x = np.sqrt(2.0 * d_coeff * n)
    edges = np.linspace(-p["span_sigmas"] * sigma_x, p["span_sigmas"] * sigma_x,
                        p["bins"] + 1)
    h = histogram(ens, edges)
    analytic = np.diff(pde.green_function_cdf(edges, float(n), d_coeff)) / h.widths
    l1_mc, _ = l1_linf_distance(h.density, analytic, edges)

    # (b) FTCS from a discrete delta against the kernel
    t_pde = p["pde_time"]
    d_pde = p["pde_diffusivity"]
    dx = 0.01 * np.sqrt(4.0 * d_pde * t_pde)
    half = 8.0 * np.sqrt(2.0 * d_pde * t_pde)
    cells = 2 * int(np.ceil(half / dx)) + 1
    f = pde.delta_field(cells, dx, diffusivity=d_pde)
    f = pde.solve(f, t_pde, pde.BoundaryCondition.reflecting(), lam=lam)
    kernel = pde.green_function(f.cell_centers, t_pde, d_pde)
    linf_rel = float(np.max(np.abs(f.values - kernel)) / kernel.max())

    # (c) FTCS against the sine-series solution on a Dirichlet rod
    rod_cells = p["rod_cells"]
    rod_dx = 1.0 / rod_cells
    xs = rod_dx / 2.0 + rod_dx * np.arange(rod_cells)
    rod = pde.Field1D(x0=rod_dx / 2.0, dx=rod_dx,
                      values=np.sin(np.pi * xs), diffusivity=1.0)
    t_rod = p["rod_time"]
    numeric = pde.solve(rod, t_rod, pde.BoundaryCondition.dirichlet(0.0, 0.0), lam=lam)
    series = pde.trig_series_dirichlet(rod, t_rod, n_terms=p["series_terms"])
    linf_series = float(np.max(np.abs(numeric.values - series.values)))

    metrics = {
        "mc_l1_vs_green": l1_mc,
        "ftcs_linf_rel_vs_green": linf_rel,
        "ftcs_linf_vs_series": linf_series,
    }
    verdicts = {
        "mc_matches_green": l1_mc < p["l1_threshold"],
        "ftcs_matches_green": linf_rel < p["linf_rel_threshold"],
        "ftcs_matches_series": linf_series < p["series_linf_threshold"],
    }
    stride = max(1, cells // 400)
    tables = (
        _density_table("mc_density", h),
        _profile_table("ftcs_vs_green", f.cell_centers[::stride],
                       f.values[::stride], kernel[::stride]),
        _profile_table("ftcs_vs_series", numeric.cell_centers,
                       numeric.values, series.values),
    )
    return ExperimentResult("pde-vs-mc", p, metrics, verdicts, tables)


def _bounded_bias(p: dict) -> ExperimentResult:
    x_a, n, n_total, seed = p["x_bound"], p["n"], p["particles"], p["seed"]
    dist = rademacher()
    d_coeff = dist.variance / 2.0
    runs = {
        "reflect": boundary_lab.bounded_walk(dist, n, n_total,
                                             boundary_lab.reflect_at_bound(x_a), seed),
        "reject": boundary_lab.bounded_walk(dist, n, n_total,
                                            boundary_lab.reject_resample(x_a), seed),
        "clamp": boundary_lab.bounded_walk(dist, n, n_total,
                                           boundary_lab.clamp_to_bound(x_a), seed),
    }
    cells = p["pde_cells"]
    f = pde.delta_field(cells, 2.0 * x_a / cells, diffusivity=d_coeff)
    f = pde.solve(f, float(n), pde.BoundaryCondition.reflecting())

    edges = np.arange(-x_a, x_a + 1e-9, p["bin_width"])
    report = boundary_lab.bias_report(runs, {"reflecting_pde": f}, edges)

    # free-space kernel averaged over the same bins
    free_density = np.diff(pde.green_function_cdf(edges, float(n), d_coeff)) / np.diff(edges)
    free_l1 = {}
    for label, (ens, _) in runs.items():
        counts, _ = np.histogram(ens.values, bins=edges)
        emp = counts / (n_total * np.diff(edges))
        free_l1[label], _ = l1_linf_distance(emp, free_density, edges)

    metrics = {}
    tables = []
    for label, (ens, diag) in runs.items():
        a = report[label]
        metrics[f"{label}_variance"] = a.variance
        metrics[f"{label}_variance_deviation"] = a.variance_deviation
        metrics[f"{label}_l1_vs_reflecting_pde"] = a.distances["reflecting_pde"].l1_distance
        metrics[f"{label}_l1_vs_free_gaussian"] = free_l1[label]
        metrics[f"{label}_events"] = (diag.n_rejections + diag.n_clamps
                                      + diag.n_reflections)
        counts, _ = np.histogram(ens.values, bins=edges)
        tables.append(_density_table_from_arrays(f"density_{label}", edges,
                                                 counts, n_total))
    tables.append(_profile_table("reflecting_pde", f.cell_centers, f.values,
                                 np.full_like(f.values, 1.0 / (2.0 * x_a))))

    verdicts = {
        "reflect_matches_reflecting_pde":
            report["reflect"].distances["reflecting_pde"].l1_distance
            < p["l1_reflect_threshold"],
        "reject_departs_free_gaussian": free_l1["reject"] > p["l1_free_min"],
        "clamp_departs_free_gaussian": free_l1["clamp"] > p["l1_free_min"],
        "reject_variance_biased":
            report["reject"].variance_deviation > p["variance_deviation_min"],
        "clamp_variance_biased":
            report["clamp"].variance_deviation > p["variance_deviation_min"],
        "realizations_conserved":
            all(ens.n_total == n_total for ens, _ in runs.values()),
    }
    return ExperimentResult("bounded-bias", p, metrics, verdicts, tuple(tables))


def _einstein_avogadro(p: dict) -> ExperimentResult:
    constants = einstein.PhysicalConstants(
        temperature=p["temperature"], viscosity=p["viscosity"],
        particle_radius=p["radius"])
    d_m = einstein.d_macroscopic(constants)

    tau = p["tau"]
    sigma = float(np.sqrt(2.0 * d_m * tau))
    scales = einstein.BrownianScales(sigma_sq=sigma * sigma, tau=tau)
    d_st = einstein.d_stochastic(scales)
    identity_err = abs(einstein.reduce_to_laplace(d_st, tau) - sigma * sigma / 2.0) \
        / (sigma * sigma / 2.0)
    round_trip = einstein.estimate_avogadro(d_m, constants)
    round_trip_err = abs(round_trip - constants.avogadro) / constants.avogadro

    n, n_total, seed = p["n"], p["particles"], p["seed"]
    cfg = walks.WalkConfig(dimension=1, rule=walks.BrownianGaussian(sigma, tau),
                           n_particles=n_total, seed=seed)
    marks = _checkpoints(n, p["snapshots"])
    res = walks.brownian_walk(cfg, total_time=n * tau, snapshot_steps=marks)
    times = [k * tau for k in res.snapshot_steps]
    fit = walks.msd_fit(times, res.snapshots)
    d_hat = fit.d_per_axis[0]
    d_err = abs(d_hat - d_m) / d_m
    n_hat = einstein.estimate_avogadro(d_hat, constants)

    curve_rows = [(k, float(snap[:, 0].mean()),
                   float(snap.var(axis=0, ddof=1)[0]),
                   float(np.mean(snap[:, 0] ** 2)))
                  for k, snap in zip(res.snapshot_steps, res.snapshots)]

    metrics = {
        "d_macroscopic": d_m,
        "d_stochastic": d_st,
        "sigma": sigma,
        "d_fitted": d_hat,
        "d_fit_rel_error": d_err,
        "avogadro_true": constants.avogadro,
        "avogadro_estimated": n_hat,
        "gas_constant": constants.gas_constant,
        "temperature": constants.temperature,
        "viscosity": constants.viscosity,
        "particle_radius": constants.particle_radius,
        "stokes_einstein_denominator": "6*pi*N_A*mu*r",
    }
    verdicts = {
        "reduction_identity_exact": identity_err <= 1e-15,
        "avogadro_round_trip_exact": round_trip_err <= 1e-12,
        "msd_fit_recovers_d_m": d_err < p["tolerance"],
    }
    tables = (_curve_table("msd_curve", curve_rows),)
    return ExperimentResult("einstein-avogadro", p, metrics, verdicts, tables)


def _inject_renormalize(p: dict) -> ExperimentResult:
    try:
        counts = [int(v) for v in str(p["counts"]).split(",") if v != ""]
    except ValueError as exc:
        raise ConfigError(f"counts must be comma-separated integers: {exc}") from None
    if not counts or any(c < 0 for c in counts):
        raise ConfigError(f"counts must be nonnegative integers, got {p['counts']}")
    n_total = p["n_total"] if p["n_total"] > 0 else sum(counts)
    if n_total < sum(counts):
        raise ConfigError(f"n_total {n_total} is less than the tallied {sum(counts)}")
    j, extra = p["target_bin"], p["extra"]
    if not 0 <= j < len(counts):
        raise ConfigError(f"target_bin {j} out of range for {len(counts)} bins")
    if extra < 0:
        raise ConfigError(f"extra must be nonnegative, got {extra}")

    edges = np.arange(len(counts) + 1, dtype=float)
    dens = EmpiricalDensity(bin_edges=edges, counts=np.asarray(counts),
                            n_total=n_total,
                            n_overflow=n_total - sum(counts))
    before = inject_realizations(dens, j, 0)
    after = inject_realizations(dens, j, extra)

    expected_sum = Fraction(sum(counts) + extra, n_total + extra)
    factor = Fraction(n_total, n_total + extra)
    scaling_uniform = all(after[i] == before[i] * factor
                          for i in range(len(counts)) if i != j)
    target_ok = after[j] == Fraction(counts[j] + extra, n_total + extra)

    metrics = {
        "probability_sum": f"{sum(after)}",
        "expected_sum": f"{expected_sum}",
        "scaling_factor": f"{factor}",
    }
    verdicts = {
        "target_bin_formula_exact": target_ok,
        "other_bins_scaled_uniformly": scaling_uniform,
        "probabilities_sum_exact": sum(after) == expected_sum,
    }
    rows = tuple((i, counts[i], f"{before[i]}", f"{after[i]}", float(after[i]))
                 for i in range(len(counts)))
    tables = (Table(name="renormalization", kind="generic",
                    columns=("bin", "count", "probability_before",
                             "probability_after", "probability_after_float"),
                    rows=rows),)
    return ExperimentResult("inject-renormalize", p, metrics, verdicts, tables)


# ------------------------------------------------------------------ registry

@dataclass(frozen=True)
class ExperimentSpec:
    runner: Callable[[dict], ExperimentResult]
    defaults: Mapping[str, object]
    description: str


EXPERIMENTS: dict[str, ExperimentSpec] = {
    "clt-convergence": ExperimentSpec(
        _clt_convergence,
        {"n": 400, "particles": 100_000, "seed": 42, "checkpoints": 8,
         "ks_threshold": 0.01, "variance_tolerance": 0.03},
        "Sign-step ensemble against the normal law: KS and variance growth."),
    "rayleigh-coefficients": ExperimentSpec(
        _rayleigh_coefficients,
        {"n": 1000, "particles": 100_000, "seed": 42, "snapshots": 5,
         "tolerance": 0.03},
        "Per-axis diffusion coefficients 1/2, 1/4, 1/6 in 1, 2, 3 dimensions."),
    "pearson-msd": ExperimentSpec(
        _pearson_msd,
        {"n": 100, "ell": 1.0, "particles": 100_000, "seed": 42,
         "snapshots": 5, "tolerance": 0.03},
        "Fixed-stretch planar walk: mean square distance n*ell^2 and the "
        "empirical radial density."),
    "brownian-bridge": ExperimentSpec(
        _brownian_bridge,
        {"sigma": 1.0, "tau": 0.5, "n": 100, "particles": 100_000, "seed": 42,
         "bins": 25, "ks_factor": 1.36},
        "Brownian displacements against the summed-Gaussian ensemble at "
        "equal step count."),
    "pde-vs-mc": ExperimentSpec(
        _pde_vs_mc,
        {"n": 100, "particles": 100_000, "seed": 42, "bins": 25,
         "span_sigmas": 4.5, "l1_threshold": 0.02, "lambda": 0.25,
         "pde_time": 1.0, "pde_diffusivity": 0.5, "linf_rel_threshold": 1e-3,
         "rod_cells": 201, "rod_time": 0.05, "series_terms": 64,
         "series_linf_threshold": 1e-3},
        "Unification checks: ensemble vs kernel, finite differences vs "
        "kernel, finite differences vs sine series."),
    "bounded-bias": ExperimentSpec(
        _bounded_bias,
        {"x_bound": 5.0, "n": 200, "particles": 100_000, "seed": 42,
         "pde_cells": 125, "bin_width": 2.0, "l1_reflect_threshold": 0.02,
         "l1_free_min": 0.05, "variance_deviation_min": 0.05},
        "Reject/clamp/reflect policies on a bounded interval against the "
        "reflecting PDE and the free-space kernel."),
    "einstein-avogadro": ExperimentSpec(
        _einstein_avogadro,
        {"temperature": 290.15, "viscosity": 1.08e-3, "radius": 0.5e-6,
         "tau": 0.01, "n": 100, "particles": 100_000, "seed": 42,
         "snapshots": 5, "tolerance": 0.03},
        "Stokes-Einstein coefficient, simulated Brownian recovery, and the "
        "Avogadro-number inversion."),
    "inject-renormalize": ExperimentSpec(
        _inject_renormalize,
        {"counts": "2,3,5", "n_total": 10, "target_bin": 0, "extra": 5,
         "seed": 42},
        "Exact effective-probability renormalization when realizations are "
        "added to one interval."),
}


def experiment_names() -> list[str]:
    return list(EXPERIMENTS)


def _coerce(name: str, value, default):
    if isinstance(value, str) and not isinstance(default, str):
        text = value.strip()
        if text == "":
            raise ConfigError(f"parameter '{name}' has an empty value")
        try:
            if isinstance(default, bool):
                if text.lower() in ("true", "1", "yes"):
                    return True
                if text.lower() in ("false", "0", "no"):
                    return False
                raise ValueError(text)
            if isinstance(default, int):
                return int(text) if "e" not in text.lower() and "." not in text \
                    else int(float(text))
            if isinstance(default, float):
                return float(text)
        except ValueError:
            raise ConfigError(f"parameter '{name}'={value!r} cannot be read as "
                              f"{type(default).__name__}") from None
        return text
    if isinstance(default, bool) and not isinstance(value, bool):
        raise ConfigError(f"parameter '{name}' must be boolean, got {value!r}")
    if isinstance(default, int) and not isinstance(default, bool):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"parameter '{name}' must be numeric, got {value!r}")
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"parameter '{name}' must be an integer, got {value!r}")
        return int(value)
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"parameter '{name}' must be numeric, got {value!r}")
        return float(value)
    return value


def resolve_params(name: str, overrides: Mapping[str, object] | None = None) -> dict:
    """Merge overrides into the experiment defaults with strict key checking."""
    try:
        spec = EXPERIMENTS[name]
    except KeyError:
        raise ConfigError(f"unknown experiment '{name}'; expected one of "
                          f"{', '.join(EXPERIMENTS)}") from None
    params = dict(spec.defaults)
    for key, value in (overrides or {}).items():
        if key not in params:
            raise ConfigError(f"unknown parameter '{key}' for experiment '{name}'; "
                              f"valid parameters: {', '.join(sorted(params))}")
        params[key] = _coerce(key, value, spec.defaults[key])
    return params


def _plain(value):
    """Convert numpy scalars and containers to plain Python types."""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def run_experiment(name: str, overrides: Mapping[str, object] | None = None) -> ExperimentResult:
    """Resolve parameters and run the named experiment."""
    params = resolve_params(name, overrides)
    result = EXPERIMENTS[name].runner(params)
    result.metrics = _plain(result.metrics)
    result.verdicts = _plain(result.verdicts)
    return result
