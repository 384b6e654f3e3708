"""Bounded random walks: how enforcing |X| < X_A distorts the density.

Three concrete policies for a step that would leave the allowed interval:
redraw the offending step until the result is strictly inside (reject),
set the value onto the bound (clamp), or fold the excess back inside
(reflect).  Reflection is the control case whose density converges to the
reflecting-boundary PDE solution; the other two demonstrate bias.  All
policies keep the number of realizations exactly constant.

Bound conventions: the violation test is strict (|candidate| >= X_A
triggers the policy).  Rejection redraws until strictly inside; clamping
by definition parks values exactly on +/-X_A, and folding can land exactly
on the bound when the walk is lattice-valued, so those two policies
guarantee only |X| <= X_A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensembles import Ensemble, StepDistribution, sample_moments
from .pde import Field1D, bin_average, field_cdf
from .rng import BOUNDARY_REDRAWS, ENSEMBLE_STEPS, step_stream
from .stats import ComparisonReport, ks_statistic, l1_linf_distance

__all__ = [
    "BoundaryPolicy",
    "BoundedRunDiagnostics",
    "PolicyAssessment",
    "IterationCapError",
    "reject_resample",
    "clamp_to_bound",
    "reflect_at_bound",
    "bounded_walk",
    "bias_report",
]

REDRAW_CAP = 10_000  # redraws per particle-step before declaring nontermination

POLICY_KINDS = ("reject", "clamp", "reflect")


class IterationCapError(RuntimeError):
    """Raised when rejection resampling fails to terminate."""


@dataclass(frozen=True)
class BoundaryPolicy:
    """How to keep a realization inside (-x_bound, x_bound)."""

    kind: str
    x_bound: float

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind '{self.kind}'")
        if not self.x_bound > 0:
            raise ValueError(f"x_bound must be positive, got {self.x_bound}")


def reject_resample(x_bound: float) -> BoundaryPolicy:
    """Discard a violating step and draw a fresh one until in bounds."""
    return BoundaryPolicy("reject", float(x_bound))


def clamp_to_bound(x_bound: float) -> BoundaryPolicy:
    """Set a violating value onto +/-x_bound."""
    return BoundaryPolicy("clamp", float(x_bound))


def reflect_at_bound(x_bound: float) -> BoundaryPolicy:
    """Fold the excess beyond the bound back inside."""
    return BoundaryPolicy("reflect", float(x_bound))


@dataclass
class BoundedRunDiagnostics:
    """Event counters for one bounded run; n_total never changes."""

    n_total: int
    n_rejections: int = 0
    n_clamps: int = 0
    n_reflections: int = 0


def _fold(values: np.ndarray, x_bound: float) -> int:
    """Reflect out-of-bound values in place; returns the violation count."""
    first = int(np.count_nonzero(np.abs(values) >= x_bound))
    # repeated folding handles steps larger than the interval
    while True:
        over = values > x_bound
        under = values < -x_bound
        if not (over.any() or under.any()):
            return first
        values[over] = 2.0 * x_bound - values[over]
        values[under] = -2.0 * x_bound - values[under]


def bounded_walk(dist: StepDistribution, n: int, n_total: int,
                 policy: BoundaryPolicy, seed: int,
                 redraw_cap: int = REDRAW_CAP) -> tuple[Ensemble, BoundedRunDiagnostics]:
    """Evolve an ensemble of sums while enforcing the bound every step.

    The driving noise uses the same per-step substreams as
    :func:`~diffusionlab.ensembles.advance`, so a run whose bounds are
    never reached is bit-identical to the unbounded ensemble under the
    same seed.  Rejection redraws come from a separate substream and are
    capped at ``redraw_cap`` per step.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n_total < 1:
        raise ValueError(f"n_total must be at least 1, got {n_total}")
    x_bound = policy.x_bound
    values = np.zeros(n_total)
    diag = BoundedRunDiagnostics(n_total=n_total)

    for k in range(n):
        rng = step_stream(seed, ENSEMBLE_STEPS, k)
        candidate = values + dist.sample(rng, n_total)
        if policy.kind == "reject":
            bad = np.abs(candidate) >= x_bound
            if bad.any():
                redraw_rng = step_stream(seed, BOUNDARY_REDRAWS, k)
                rounds = 0
                while bad.any():
                    diag.n_rejections += int(bad.sum())
                    rounds += 1
                    if rounds > redraw_cap:
                        raise IterationCapError(
                            f"step {k}: {int(bad.sum())} realizations still out of "
                            f"bounds after {redraw_cap} redraw rounds; the step "
                            f"distribution cannot reach inside (-{x_bound}, {x_bound})")
                    candidate[bad] = values[bad] + dist.sample(redraw_rng, int(bad.sum()))
                    bad = np.abs(candidate) >= x_bound
        elif policy.kind == "clamp":
            diag.n_clamps += int(np.count_nonzero(np.abs(candidate) >= x_bound))
            np.clip(candidate, -x_bound, x_bound, out=candidate)
        else:  # reflect
            diag.n_reflections += _fold(candidate, x_bound)
        values = candidate

    ens = Ensemble(values=values, n=n, dist=dist, seed=int(seed))
    return ens, diag


@dataclass
class PolicyAssessment:
    """Distances and variance diagnostics for one bounded run."""

    policy: str
    variance: float
    free_variance: float          # 2Dn = n * sigma^2 of the unbounded law
    variance_deviation: float     # |variance - free_variance| / free_variance
    distances: dict[str, ComparisonReport]
    diagnostics: BoundedRunDiagnostics


def bias_report(runs: dict[str, tuple[Ensemble, BoundedRunDiagnostics]],
                references: dict[str, Field1D],
                bin_edges: np.ndarray) -> dict[str, PolicyAssessment]:
    """Compare each bounded run against candidate PDE solutions.

    ``runs`` maps a policy label to its (ensemble, diagnostics) pair; all
    runs must share the step distribution, step count, and realization
    count.  ``references`` maps a label (e.g. ``reflecting-pde``,
    ``free-gaussian``) to a solved field.  Returns per-policy L1/L-inf/KS
    distances to every reference plus the variance deviation from the
    unbounded law ``2Dn``.
    """
    if not runs:
        raise ValueError("no bounded runs supplied")
    ensembles = [e for e, _ in runs.values()]
    first = ensembles[0]
    for e in ensembles[1:]:
        if (e.n, e.n_total, e.dist) != (first.n, first.n_total, first.dist):
            raise ValueError("bounded runs disagree on (dist, n, n_total); "
                             "bias comparison requires matched configurations")
    edges = np.asarray(bin_edges, dtype=float)
    free_variance = first.n * first.dist.variance

    out: dict[str, PolicyAssessment] = {}
    for label, (ens, diag) in runs.items():
        counts, _ = np.histogram(ens.values, bins=edges)
        emp_density = counts / (ens.n_total * np.diff(edges))
        _, variance = sample_moments(ens)
        reports: dict[str, ComparisonReport] = {}
        for ref_label, fld in references.items():
            ref_density = bin_average(fld, edges)
            l1, linf = l1_linf_distance(emp_density, ref_density, edges)
            ks = ks_statistic(ens.values, lambda x, fld=fld: field_cdf(fld, x))
            reports[ref_label] = ComparisonReport(l1_distance=l1, linf_distance=linf,
                                                  ks_statistic=ks)
        out[label] = PolicyAssessment(
            policy=label,
            variance=variance,
            free_variance=free_variance,
            variance_deviation=abs(variance - free_variance) / free_variance,
            distances=reports,
            diagnostics=diag,
        )
    return out
