"""Ensembles of summed i.i.d. random variables and their relative-frequency densities.

An :class:`Ensemble` holds one value of the running sum per realization.
Advancing it adds fresh independent draws to every realization, so the
empirical density of the values spreads the way a diffusing profile does,
with diffusion coefficient equal to half the per-step variance.  The number
of realizations is conserved exactly: histograms tally out-of-range values
in explicit underflow/overflow counters instead of dropping them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .rng import ENSEMBLE_STEPS, step_stream

__all__ = [
    "StepDistribution",
    "Ensemble",
    "EmpiricalDensity",
    "make_distribution",
    "rademacher",
    "uniform_symmetric",
    "gaussian",
    "discrete_table",
    "init_ensemble",
    "advance",
    "histogram",
    "sample_moments",
    "inject_realizations",
    "exact_pmf_rademacher",
]

_ENUMERATION_CAP = 24  # exact pmf support grows as 2^n sign sequences


@dataclass(frozen=True)
class StepDistribution:
    """I.i.d. increment law with analytic mean and variance.

    ``kind`` is one of ``rademacher``, ``uniform_symmetric``, ``gaussian``
    or ``discrete_table``; ``params`` carries the kind-specific parameters.
    Point masses (zero variance) are rejected at construction.
    """

    kind: str
    mean: float
    variance: float
    params: tuple = ()

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` independent increments using ``rng``."""
        if self.kind == "rademacher":
            return 2.0 * rng.integers(0, 2, size=size) - 1.0
        if self.kind == "uniform_symmetric":
            (a,) = self.params
            return rng.uniform(-a, a, size=size)
        if self.kind == "gaussian":
            mu, sigma = self.params
            return rng.normal(mu, sigma, size=size)
        if self.kind == "discrete_table":
            values, weights = self.params
            return rng.choice(np.asarray(values, dtype=float), size=size, p=np.asarray(weights))
        raise ValueError(f"unknown distribution kind '{self.kind}'")


def rademacher() -> StepDistribution:
    """Steps of +1 or -1 with equal probability (mean 0, variance 1)."""
    return StepDistribution("rademacher", mean=0.0, variance=1.0)


def uniform_symmetric(a: float) -> StepDistribution:
    """Steps uniform on [-a, a] (mean 0, variance a^2/3)."""
    if not a > 0:
        raise ValueError(f"half-width a must be positive, got {a}")
    return StepDistribution("uniform_symmetric", mean=0.0, variance=a * a / 3.0, params=(float(a),))


def gaussian(mu: float, sigma: float) -> StepDistribution:
    """Gaussian steps with mean mu and standard deviation sigma."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return StepDistribution("gaussian", mean=float(mu), variance=float(sigma) ** 2,
                            params=(float(mu), float(sigma)))


def discrete_table(values: Sequence[float], weights: Sequence[float]) -> StepDistribution:
    """Steps drawn from an explicit value/weight table.

    Weights must be nonnegative and normalizable; they are renormalized to
    sum to one.  A table whose variance is zero (a point mass) is rejected.
    """
    vals = np.asarray(values, dtype=float)
    wts = np.asarray(weights, dtype=float)
    if vals.shape != wts.shape or vals.ndim != 1 or vals.size == 0:
        raise ValueError("values and weights must be equal-length 1-d sequences")
    if np.any(wts < 0):
        raise ValueError("weights must be nonnegative")
    total = wts.sum()
    if not total > 0:
        raise ValueError("weights must have a positive sum")
    wts = wts / total
    mean = float(np.dot(wts, vals))
    variance = float(np.dot(wts, (vals - mean) ** 2))
    if not variance > 0:
        raise ValueError("discrete table is a point mass (zero variance)")
    return StepDistribution("discrete_table", mean=mean, variance=variance,
                            params=(tuple(vals.tolist()), tuple(wts.tolist())))


_FACTORIES = {
    "rademacher": rademacher,
    "uniform_symmetric": uniform_symmetric,
    "gaussian": gaussian,
    "discrete_table": discrete_table,
}


def make_distribution(kind: str, **params) -> StepDistribution:
    """Construct a step distribution by kind name.

    Examples: ``make_distribution("rademacher")``,
    ``make_distribution("uniform_symmetric", a=1.0)``,
    ``make_distribution("gaussian", mu=0.0, sigma=1.0)``,
    ``make_distribution("discrete_table", values=[-1, 1], weights=[0.5, 0.5])``.
    """
    try:
        factory = _FACTORIES[kind]
    except KeyError:
        raise ValueError(f"unknown distribution kind '{kind}'; "
                         f"expected one of {sorted(_FACTORIES)}") from None
    return factory(**params)


@dataclass(frozen=True)
class Ensemble:
    """All realizations of the running sum after ``n`` summed variables.

    ``values[i]`` is realization i's sum of n increments.  The array length
    never changes; at n = 0 every value is 0 (instantaneous source at the
    origin).
    """

    values: np.ndarray
    n: int
    dist: StepDistribution
    seed: int

    @property
    def n_total(self) -> int:
        return self.values.size


def init_ensemble(n_total: int, dist: StepDistribution, seed: int) -> Ensemble:
    """Ensemble of ``n_total`` realizations, all at the origin, n = 0."""
    if n_total < 1:
        raise ValueError(f"n_total must be at least 1, got {n_total}")
    return Ensemble(values=np.zeros(n_total), n=0, dist=dist, seed=int(seed))


def advance(ensemble: Ensemble, delta_n: int) -> Ensemble:
    """Add ``delta_n`` independent increments to every realization.

    Each absolute step index draws its own substream of ``(seed, step)``,
    so advancing by 100 twice equals advancing by 200 once, bit for bit,
    and the result does not depend on how realizations are partitioned.
    """
    if delta_n < 1:
        raise ValueError(f"delta_n must be at least 1, got {delta_n}")
    values = ensemble.values.copy()
    size = values.size
    for k in range(ensemble.n, ensemble.n + delta_n):
        rng = step_stream(ensemble.seed, ENSEMBLE_STEPS, k)
        values += ensemble.dist.sample(rng, size)
    return Ensemble(values=values, n=ensemble.n + delta_n, dist=ensemble.dist,
                    seed=ensemble.seed)


@dataclass(frozen=True)
class EmpiricalDensity:
    """Binned relative-frequency density with explicit out-of-range tallies.

    Bins are half-open ``[edge_i, edge_{i+1})``.  Values below the first or
    at/above the last edge land in ``n_underflow``/``n_overflow`` so that
    ``counts.sum() + n_underflow + n_overflow == n_total`` always holds.
    """

    bin_edges: np.ndarray
    counts: np.ndarray
    n_total: int
    n_underflow: int = 0
    n_overflow: int = 0

    def __post_init__(self):
        tallied = int(self.counts.sum()) + self.n_underflow + self.n_overflow
        if tallied != self.n_total:
            raise ValueError(f"tallies {tallied} do not account for all "
                             f"{self.n_total} realizations")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def density(self) -> np.ndarray:
        return self.counts / (self.n_total * self.widths)

    @property
    def probabilities(self) -> np.ndarray:
        return self.counts / self.n_total


def histogram(ensemble: Ensemble, bin_edges: Sequence[float] | None = None) -> EmpiricalDensity:
    """Tally ensemble values into half-open bins.

    When ``bin_edges`` is omitted, Freedman-Diaconis edges are fit to the
    current values (scale-adaptive; refit per snapshot as spreading
    proceeds).  Edges must be strictly increasing with at least 2 entries.
    """
    values = ensemble.values
    if bin_edges is None:
        edges = np.histogram_bin_edges(values, bins="fd")
        if edges.size < 2:
            edges = np.array([values.min() - 0.5, values.max() + 0.5])
        # widen the last edge so the maximum lands inside rather than overflowing
        edges = edges.copy()
        edges[-1] = np.nextafter(edges[-1], np.inf)
    else:
        edges = np.asarray(bin_edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("bin_edges must hold at least 2 values")
    if not np.all(np.diff(edges) > 0):
        raise ValueError("bin_edges must be strictly increasing")

    idx = np.searchsorted(edges, values, side="right") - 1
    n_under = int(np.count_nonzero(idx < 0))
    n_over = int(np.count_nonzero(idx >= edges.size - 1))
    in_range = idx[(idx >= 0) & (idx < edges.size - 1)]
    counts = np.bincount(in_range, minlength=edges.size - 1)
    return EmpiricalDensity(bin_edges=edges, counts=counts, n_total=values.size,
                            n_underflow=n_under, n_overflow=n_over)


def sample_moments(ensemble: Ensemble) -> tuple[float, float]:
    """Sample mean and unbiased (n-1) sample variance of the values.

    Two-pass, pairwise-summed accumulation keeps the estimates accurate at
    large ensemble sizes.  Variance requires at least 2 realizations.
    """
    values = ensemble.values
    if values.size < 2:
        raise ValueError("variance needs at least 2 realizations")
    mean = float(np.mean(values))
    centered = values - mean
    variance = float(np.dot(centered, centered) / (values.size - 1))
    return mean, variance


def inject_realizations(density: EmpiricalDensity, bin_index: int,
                        n_extra: int) -> tuple[Fraction, ...]:
    """Effective per-bin probabilities after adding realizations to one bin.

    Adding ``n_extra`` realizations to bin ``bin_index`` (0-based) changes
    that bin's effective probability to ``(N_j + n_extra)/(N_total + n_extra)``
    and every other bin's to ``N_i/(N_total + n_extra)``: the whole
    distribution shifts although no random variable was added.  Exact
    rational arithmetic, so the probabilities sum to
    ``(counts.sum() + n_extra)/(N_total + n_extra)`` with no rounding.
    """
    n_bins = density.counts.size
    if not 0 <= bin_index < n_bins:
        raise ValueError(f"bin_index {bin_index} out of range [0, {n_bins})")
    if n_extra < 0:
        raise ValueError(f"n_extra must be nonnegative, got {n_extra}")
    denom = density.n_total + n_extra
    probs = []
    for i, c in enumerate(density.counts.tolist()):
        num = c + n_extra if i == bin_index else c
        probs.append(Fraction(int(num), denom))
    return tuple(probs)


def exact_pmf_rademacher(n: int) -> dict[int, Fraction]:
    """Exact pmf of the sum of ``n`` independent +/-1 steps.

    Support is ``{-n, -n+2, ..., n}``; probabilities are exact rationals
    C(n, k)/2^n that sum to 1 with no rounding.  Capped at n <= 24, the
    point beyond which the brute-force sign-sequence cross-check becomes
    impractical.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > _ENUMERATION_CAP:
        raise ValueError(f"n={n} exceeds the exact-enumeration cap {_ENUMERATION_CAP}")
    denom = 2 ** n
    return {2 * k - n: Fraction(comb(n, k), denom) for k in range(n + 1)}
