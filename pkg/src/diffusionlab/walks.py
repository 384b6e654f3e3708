"""Random compositions of unit steps and Brownian displacement trajectories.

Three families: sign compositions on a line, uniformly-phased unit vectors
in the plane and in space (per-axis variance n, n/2, n/3, so the effective
per-axis diffusion coefficients are 1/2, 1/4, 1/6), fixed-length planar
stretches with arbitrary turning angle, and Gaussian displacements at a
fixed observation interval.  Walks stream final positions by default and
keep full paths only on request, so particle counts of 10^6 stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rng import WALK_STEPS, step_stream
from .stats import fit_linear

__all__ = [
    "RademacherPhase",
    "UniformPhase2D",
    "UnitVector3D",
    "PearsonFixedStep",
    "BrownianGaussian",
    "WalkConfig",
    "WalkResult",
    "Trajectory",
    "MsdFit",
    "rayleigh_walk",
    "pearson_walk",
    "brownian_walk",
    "msd_fit",
]


@dataclass(frozen=True)
class RademacherPhase:
    """Unit steps of random sign on a line."""

    dimension = 1


@dataclass(frozen=True)
class UniformPhase2D:
    """Unit vectors (cos theta, sin theta), theta uniform on [0, 2pi)."""

    dimension = 2


@dataclass(frozen=True)
class UnitVector3D:
    """Uniformly distributed unit 3-vectors.

    Sampled rejection-free: z uniform on [-1, 1], azimuth uniform on
    [0, 2pi).
    """

    dimension = 3


@dataclass(frozen=True)
class PearsonFixedStep:
    """Planar stretches of fixed length with arbitrary turning angle."""

    step_length: float
    dimension = 2

    def __post_init__(self):
        if not self.step_length > 0:
            raise ValueError(f"step_length must be positive, got {self.step_length}")


@dataclass(frozen=True)
class BrownianGaussian:
    """Gaussian displacements with per-interval std ``sigma`` every ``tau``.

    Works in any dimension; each axis gets independent variance sigma^2
    per interval.
    """

    sigma: float
    tau: float
    dimension = None  # set by the walk config

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")


StepRule = RademacherPhase | UniformPhase2D | UnitVector3D | PearsonFixedStep | BrownianGaussian

_UNIT_RULES = (RademacherPhase, UniformPhase2D, UnitVector3D)


@dataclass(frozen=True)
class WalkConfig:
    """Dimension, step rule, particle count, and seed for one walk.

    ``n_steps`` may be omitted for Brownian walks, where the step count
    follows from the total time and the interval.
    """

    dimension: int
    rule: StepRule
    n_particles: int
    seed: int
    n_steps: int | None = None

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2, or 3, got {self.dimension}")
        rule_dim = self.rule.dimension
        if rule_dim is not None and rule_dim != self.dimension:
            raise ValueError(f"rule {type(self.rule).__name__} is {rule_dim}-dimensional "
                             f"but the config says {self.dimension}")
        if self.n_particles < 1:
            raise ValueError(f"n_particles must be at least 1, got {self.n_particles}")
        if self.n_steps is not None and self.n_steps < 1:
            raise ValueError(f"n_steps must be at least 1, got {self.n_steps}")


@dataclass(frozen=True)
class Trajectory:
    """Full path of one particle; position at step 0 is the origin."""

    positions: np.ndarray
    particle_id: int


@dataclass(frozen=True)
class WalkResult:
    """Final positions plus optional snapshots and full paths.

    ``snapshot_steps[k]`` pairs with ``snapshots[k]``, an (n_particles, d)
    array of positions after that many steps.  ``paths`` has shape
    (n_particles, n_steps + 1, d) and is populated only when requested.
    """

    config: WalkConfig
    final_positions: np.ndarray
    snapshot_steps: tuple[int, ...] = ()
    snapshots: tuple[np.ndarray, ...] = ()
    paths: np.ndarray | None = None

    @property
    def radial_distances(self) -> np.ndarray:
        return np.linalg.norm(self.final_positions, axis=1)

    def trajectories(self) -> list[Trajectory]:
        if self.paths is None:
            raise ValueError("full paths were not retained; rerun with keep_paths=True")
        return [Trajectory(positions=self.paths[i], particle_id=i)
                for i in range(self.paths.shape[0])]


def _increments(rule: StepRule, dimension: int, rng: np.random.Generator,
                n: int) -> np.ndarray:
    if isinstance(rule, RademacherPhase):
        return (2.0 * rng.integers(0, 2, size=n) - 1.0)[:, None]
    if isinstance(rule, UniformPhase2D):
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        return np.column_stack((np.cos(theta), np.sin(theta)))
    if isinstance(rule, UnitVector3D):
        z = rng.uniform(-1.0, 1.0, size=n)
        phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
        s = np.sqrt(1.0 - z * z)
        return np.column_stack((s * np.cos(phi), s * np.sin(phi), z))
    if isinstance(rule, PearsonFixedStep):
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        return rule.step_length * np.column_stack((np.cos(theta), np.sin(theta)))
    if isinstance(rule, BrownianGaussian):
        return rng.normal(0.0, rule.sigma, size=(n, dimension))
    raise ValueError(f"unknown step rule {type(rule).__name__}")


def _run_walk(config: WalkConfig, n_steps: int, snapshot_steps: Sequence[int],
              keep_paths: bool) -> WalkResult:
    wanted = sorted(set(int(s) for s in snapshot_steps))
    if wanted and (wanted[0] < 1 or wanted[-1] > n_steps):
        raise ValueError(f"snapshot steps {wanted} must lie in [1, {n_steps}]")
    n = config.n_particles
    d = config.dimension
    positions = np.zeros((n, d))
    paths = None
    if keep_paths:
        paths = np.zeros((n, n_steps + 1, d))
    snaps: list[np.ndarray] = []
    for k in range(n_steps):
        rng = step_stream(config.seed, WALK_STEPS, k)
        positions += _increments(config.rule, d, rng, n)
        if keep_paths:
            paths[:, k + 1, :] = positions
        if len(snaps) < len(wanted) and k + 1 == wanted[len(snaps)]:
            snaps.append(positions.copy())
    return WalkResult(config=config, final_positions=positions,
                      snapshot_steps=tuple(wanted), snapshots=tuple(snaps),
                      paths=paths)


def rayleigh_walk(config: WalkConfig, snapshot_steps: Sequence[int] = (),
                  keep_paths: bool = False) -> WalkResult:
    """Compose n unit-magnitude random elements per particle.

    Signs in 1D, uniformly phased unit vectors in 2D, uniformly directed
    unit vectors in 3D.  Requires a unit-step rule matching the configured
    dimension and an explicit ``n_steps``.
    """
    if not isinstance(config.rule, _UNIT_RULES):
        raise ValueError(f"rayleigh_walk needs a unit-step rule, got "
                         f"{type(config.rule).__name__}")
    if config.n_steps is None:
        raise ValueError("config.n_steps is required for rayleigh_walk")
    return _run_walk(config, config.n_steps, snapshot_steps, keep_paths)


def pearson_walk(config: WalkConfig, snapshot_steps: Sequence[int] = (),
                 keep_paths: bool = False) -> WalkResult:
    """Walk n fixed-length stretches, turning through any angle whatever.

    The radial distance from the start is ``result.radial_distances``;
    its mean square is n * step_length^2.
    """
    if not isinstance(config.rule, PearsonFixedStep):
        raise ValueError(f"pearson_walk needs PearsonFixedStep, got "
                         f"{type(config.rule).__name__}")
    if config.n_steps is None:
        raise ValueError("config.n_steps is required for pearson_walk")
    return _run_walk(config, config.n_steps, snapshot_steps, keep_paths)


def brownian_walk(config: WalkConfig, total_time: float,
                  snapshot_steps: Sequence[int] = (),
                  keep_paths: bool = False) -> WalkResult:
    """Gaussian displacements observed every ``tau`` up to ``total_time``.

    The number of observation intervals is ``floor(total_time / tau)``;
    positions correspond to times ``k * tau``.  The per-axis mean squared
    displacement grows as ``2 * D_st * t`` with ``D_st = sigma^2 / (2 tau)``.
    """
    rule = config.rule
    if not isinstance(rule, BrownianGaussian):
        raise ValueError(f"brownian_walk needs BrownianGaussian, got "
                         f"{type(rule).__name__}")
    if total_time < rule.tau:
        raise ValueError(f"total_time {total_time} is shorter than one interval "
                         f"tau = {rule.tau}")
    n_steps = int(np.floor(total_time / rule.tau + 1e-12))
    return _run_walk(config, n_steps, snapshot_steps, keep_paths)


@dataclass(frozen=True)
class MsdFit:
    """Least-squares diffusion coefficients from mean squared displacement.

    ``d_per_axis[a]`` is half the slope of axis a's MSD against the step
    count (or time); ``d_total`` is the total-MSD slope divided by 2d.
    """

    d_per_axis: tuple[float, ...]
    d_total: float
    slopes: tuple[float, ...]
    slope_stderrs: tuple[float, ...]
    total_slope: float


def msd_fit(steps: Sequence[float], positions_by_step: Sequence[np.ndarray]) -> MsdFit:
    """Fit MSD growth over snapshots of particle positions.

    ``positions_by_step[k]`` holds all particle positions after
    ``steps[k]`` steps (or at time ``steps[k]``).  Points at step 0 are
    excluded from the fit.  Needs at least 3 remaining points and
    non-constant MSD values.
    """
    ns = np.asarray(steps, dtype=float)
    if ns.size != len(positions_by_step):
        raise ValueError("steps and positions_by_step must align")
    keep = ns > 0
    ns = ns[keep]
    snaps = [np.atleast_2d(np.asarray(p, dtype=float))
             for p, k in zip(positions_by_step, keep) if k]
    if ns.size < 3:
        raise ValueError("msd_fit needs at least 3 nonzero step counts")
    d = snaps[0].shape[1]
    msd = np.array([[float(np.mean(p[:, a] ** 2)) for a in range(d)] for p in snaps])
    if np.allclose(msd, msd[0], rtol=0.0, atol=0.0):
        raise ValueError("mean squared displacement is constant; nothing to fit")

    slopes, stderrs, ds = [], [], []
    for a in range(d):
        fit = fit_linear(ns, msd[:, a])
        slopes.append(fit.slope)
        stderrs.append(fit.slope_stderr)
        ds.append(fit.slope / 2.0)
    total_fit = fit_linear(ns, msd.sum(axis=1))
    return MsdFit(d_per_axis=tuple(ds), d_total=total_fit.slope / (2.0 * d),
                  slopes=tuple(slopes), slope_stderrs=tuple(stderrs),
                  total_slope=total_fit.slope)
