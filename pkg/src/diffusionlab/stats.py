"""Distances, goodness-of-fit statistics, and least-squares fits.

Raw statistics are compared against thresholds frozen in the experiment
configs; no p-value machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ComparisonReport",
    "LinearFit",
    "l1_linf_distance",
    "ks_statistic",
    "ks_statistic_mid",
    "ks_two_sample",
    "chi_square",
    "fit_linear",
]


@dataclass
class ComparisonReport:
    """Distances, fit results, and pass/fail verdicts for one comparison.

    Only the fields relevant to a given comparison are populated.  Verdicts
    are reproducible from the stored thresholds.
    """

    l1_distance: float | None = None
    linf_distance: float | None = None
    ks_statistic: float | None = None
    chi_square: float | None = None
    chi_square_dof: int | None = None
    fitted_slope: float | None = None
    fitted_intercept: float | None = None
    slope_stderr: float | None = None
    thresholds: dict[str, float] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    slope_stderr: float


def l1_linf_distance(density_a: Sequence[float], density_b: Sequence[float],
                     bin_edges: Sequence[float]) -> tuple[float, float]:
    """L1 and L-infinity distances between two densities on shared bins.

    ``l1 = sum |a_i - b_i| * width_i`` and ``linf = max |a_i - b_i|``.
    Both densities must be sampled on the same ``bin_edges``.
    """
    fa = np.asarray(density_a, dtype=float)
    fb = np.asarray(density_b, dtype=float)
    edges = np.asarray(bin_edges, dtype=float)
    if fa.shape != fb.shape or fa.size != edges.size - 1:
        raise ValueError(f"densities of {fa.size} and {fb.size} bins do not share "
                         f"the {edges.size - 1}-bin edge grid")
    diff = np.abs(fa - fb)
    widths = np.diff(edges)
    return float(np.sum(diff * widths)), float(diff.max(initial=0.0))


def ks_statistic(samples: Sequence[float], cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """Classic two-sided Kolmogorov-Smirnov distance to an analytic cdf.

    ``sup_x max(F_emp(x) - F(x), F(x) - F_emp(x^-))`` evaluated over the
    sorted samples.  For samples from a lattice distribution this statistic
    has a floor of half the largest atom mass; use
    :func:`ks_statistic_mid` when comparing lattice data against a
    continuous reference.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("ks_statistic needs at least one sample")
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    d_plus = np.max(np.arange(1, n + 1) / n - f)
    d_minus = np.max(f - np.arange(0, n) / n)
    return float(max(d_plus, d_minus))


def ks_statistic_mid(samples: Sequence[float], cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """Kolmogorov-Smirnov distance using the mid-distribution empirical cdf.

    At each distinct sample value the empirical cdf is taken halfway up its
    jump, ``(rank_below + count/2)/N``.  For tied or lattice-valued samples
    this removes the half-atom-mass floor of the classic statistic and
    measures genuine convergence of the underlying law to the reference.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("ks_statistic_mid needs at least one sample")
    values, counts = np.unique(x, return_counts=True)
    f_mid = (np.cumsum(counts) - counts / 2.0) / x.size
    f = np.asarray(cdf(values), dtype=float)
    return float(np.max(np.abs(f_mid - f)))


def ks_two_sample(samples_a: Sequence[float], samples_b: Sequence[float]) -> float:
    """Two-sample Kolmogorov-Smirnov distance ``sup_x |F_a(x) - F_b(x)|``."""
    a = np.sort(np.asarray(samples_a, dtype=float))
    b = np.sort(np.asarray(samples_b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def chi_square(observed: Sequence[float], expected: Sequence[float],
               fitted_params: int = 0, min_expected: float = 5.0) -> tuple[float, int]:
    """Pearson chi-square statistic with deterministic center-ward pooling.

    Bins whose expected count falls below ``min_expected`` are merged into
    their neighbor toward the center of the bin range (outermost deficient
    bin first), so tail bins pool inward.  Returns ``(statistic, dof)``
    with ``dof = retained bins - 1 - fitted_params``.
    """
    obs = [float(v) for v in observed]
    exp = [float(v) for v in expected]
    if len(obs) != len(exp):
        raise ValueError("observed and expected must have equal length")
    if not any(e > 0 for e in exp):
        raise ValueError("expected counts are all zero")

    def deficient_index() -> int | None:
        center = (len(exp) - 1) / 2.0
        # outermost deficient bin first; ties broken toward the left
        worst = None
        for i, e in enumerate(exp):
            if e < min_expected:
                if worst is None or abs(i - center) > abs(worst - center):
                    worst = i
        return worst

    while len(exp) > 1:
        i = deficient_index()
        if i is None:
            break
        center = (len(exp) - 1) / 2.0
        j = i + 1 if i < center else i - 1
        exp[j] += exp[i]
        obs[j] += obs[i]
        del exp[i], obs[i]

    if len(exp) == 1 and exp[0] < min_expected:
        raise ValueError("expected counts too small to form a single valid bin")
    stat = sum((o - e) ** 2 / e for o, e in zip(obs, exp))
    dof = len(exp) - 1 - fitted_params
    return float(stat), dof


def fit_linear(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Ordinary least squares line through (xs, ys).

    Needs at least 3 points and non-constant xs.  On exactly linear data
    the line is recovered to roundoff and the slope stderr is ~0.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 3 or x.shape != y.shape:
        raise ValueError("fit_linear needs at least 3 matching points")
    x_mean = x.mean()
    sxx = float(np.sum((x - x_mean) ** 2))
    if sxx == 0.0:
        raise ValueError("xs are all equal; slope is undefined")
    y_mean = y.mean()
    slope = float(np.sum((x - x_mean) * (y - y_mean)) / sxx)
    intercept = float(y_mean - slope * x_mean)
    residuals = y - (intercept + slope * x)
    rss = float(np.sum(residuals ** 2))
    stderr = float(np.sqrt(max(rss, 0.0) / ((x.size - 2) * sxx)))
    return LinearFit(slope=slope, intercept=intercept, slope_stderr=stderr)
