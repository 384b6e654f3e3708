"""One-dimensional heat/diffusion equation: closed form, series, and FTCS.

The grid is cell-centered: ``values[i]`` is the average over the cell with
center ``x0 + i*dx``, and boundary conditions act on the outer cell faces.
This makes the explicit step a flux exchange between neighbors, so content
is conserved exactly (to roundoff) with reflecting ends, and a field can be
read either as temperature (thermal mode, with a medium supplying rho*c)
or as probability density (rho*c = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy.special import ndtr

__all__ = [
    "ThermalMedium",
    "Field1D",
    "EndCondition",
    "BoundaryCondition",
    "StabilityError",
    "dirichlet",
    "reflecting",
    "absorbing",
    "green_function",
    "green_function_cdf",
    "heat_content",
    "ftcs_step",
    "trig_series_dirichlet",
    "solve",
    "delta_field",
    "bin_average",
    "field_cdf",
]

STABILITY_LIMIT = 0.5  # explicit scheme requires eta*dt/dx^2 <= 1/2
DEFAULT_LAMBDA = 0.25  # half the bound; margin against roundoff accumulation


class StabilityError(ValueError):
    """Raised when a step would violate the explicit stability bound."""


@dataclass(frozen=True)
class ThermalMedium:
    """Conductivity, density, and specific heat of a conducting medium.

    Diffusivity is derived as ``conductivity / (density * specific_heat)``.
    Units: conductivity W/(m*K), density kg/m^3, specific heat J/(kg*K),
    diffusivity m^2/s.
    """

    conductivity: float
    density: float
    specific_heat: float

    def __post_init__(self):
        for name in ("conductivity", "density", "specific_heat"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def diffusivity(self) -> float:
        return self.conductivity / (self.density * self.specific_heat)

    @property
    def volumetric_heat_capacity(self) -> float:
        return self.density * self.specific_heat


@dataclass(frozen=True)
class Field1D:
    """Discretized profile on a uniform cell-centered grid.

    ``values[i]`` lives at ``x0 + i*dx``; the domain spans the faces
    ``[x0 - dx/2, x0 + (len-1/2)*dx]``.  ``lost_content`` accumulates
    content removed through absorbing boundaries so conservation audits
    remain possible.
    """

    x0: float
    dx: float
    values: np.ndarray
    diffusivity: float
    time: float = 0.0
    lost_content: float = 0.0

    def __post_init__(self):
        if not self.dx > 0:
            raise ValueError(f"dx must be positive, got {self.dx}")
        if not self.diffusivity > 0:
            raise ValueError(f"diffusivity must be positive, got {self.diffusivity}")
        if self.time < 0:
            raise ValueError(f"time must be nonnegative, got {self.time}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must all be finite")

    @property
    def cell_centers(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.values.size)

    @property
    def left_face(self) -> float:
        return self.x0 - 0.5 * self.dx

    @property
    def right_face(self) -> float:
        return self.x0 + (self.values.size - 0.5) * self.dx

    @property
    def length(self) -> float:
        return self.values.size * self.dx


@dataclass(frozen=True)
class EndCondition:
    """Condition on one boundary face: dirichlet(value), reflecting, absorbing."""

    kind: str
    value: float = 0.0

    def __post_init__(self):
        if self.kind not in ("dirichlet", "reflecting", "absorbing"):
            raise ValueError(f"unknown boundary kind '{self.kind}'")


def dirichlet(value: float) -> EndCondition:
    return EndCondition("dirichlet", float(value))


def reflecting() -> EndCondition:
    return EndCondition("reflecting")


def absorbing() -> EndCondition:
    return EndCondition("absorbing")


@dataclass(frozen=True)
class BoundaryCondition:
    """Independently settable condition per end."""

    left: EndCondition
    right: EndCondition

    @classmethod
    def reflecting(cls) -> "BoundaryCondition":
        return cls(reflecting(), reflecting())

    @classmethod
    def dirichlet(cls, left_value: float = 0.0, right_value: float = 0.0) -> "BoundaryCondition":
        return cls(dirichlet(left_value), dirichlet(right_value))

    @classmethod
    def absorbing(cls) -> "BoundaryCondition":
        return cls(absorbing(), absorbing())


def green_function(x, t: float, diffusion: float, content: float = 1.0):
    """Free-space solution for an instantaneous plane source at the origin.

    ``content / sqrt(4 pi D t) * exp(-x^2 / (4 D t))``; integrates to
    ``content`` over the real line.  The t = 0 delta limit is not
    representable numerically, so t must be positive.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not diffusion > 0:
        raise ValueError(f"diffusion coefficient must be positive, got {diffusion}")
    x = np.asarray(x, dtype=float)
    spread = 4.0 * diffusion * t
    return content / np.sqrt(np.pi * spread) * np.exp(-x * x / spread)


def green_function_cdf(x, t: float, diffusion: float):
    """Cumulative form of :func:`green_function` with unit content."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not diffusion > 0:
        raise ValueError(f"diffusion coefficient must be positive, got {diffusion}")
    x = np.asarray(x, dtype=float)
    return ndtr(x / np.sqrt(2.0 * diffusion * t))


def heat_content(field: Field1D, medium: ThermalMedium | None = None) -> float:
    """Conserved extensive content of the field, per unit cross-section.

    Thermal mode: ``sum(rho*c*T_i*dx)``.  Probability mode (no medium):
    ``rho*c = 1``, so this is the integral of the density.
    """
    rho_c = medium.volumetric_heat_capacity if medium is not None else 1.0
    return float(rho_c * np.sum(field.values) * field.dx)


def delta_field(n_cells: int, dx: float, diffusivity: float, content: float = 1.0,
                center: float = 0.0) -> Field1D:
    """Field approximating an instantaneous plane source at ``center``.

    The whole content is placed in the cell containing ``center`` (value
    ``content/dx``), on a grid arranged symmetrically around it.
    """
    if n_cells < 3:
        raise ValueError("need at least 3 cells")
    values = np.zeros(n_cells)
    mid = (n_cells - 1) // 2
    values[mid] = content / dx
    x0 = center - mid * dx
    return Field1D(x0=x0, dx=dx, values=values, diffusivity=diffusivity)


def _ghost(end: EndCondition, edge_value: float) -> float:
    # Ghost cell making the face see the requested condition:
    # mirror (zero flux), or 2*v - u so the face value is exactly v.
    if end.kind == "reflecting":
        return edge_value
    if end.kind == "dirichlet":
        return 2.0 * end.value - edge_value
    return -edge_value  # absorbing: zero value at the face


def ftcs_step(field: Field1D, dt: float, bc: BoundaryCondition) -> Field1D:
    """One forward-time centered-space step.

    ``u_i += lambda * (u_{i+1} - 2 u_i + u_{i-1})`` with ghost cells chosen
    per boundary condition.  Raises :class:`StabilityError` when
    ``lambda = eta*dt/dx^2`` exceeds 1/2; callers must not silence it.
    Content leaving through absorbing faces is added to ``lost_content``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    u = field.values
    lam = field.diffusivity * dt / (field.dx * field.dx)
    if lam > STABILITY_LIMIT + 1e-12:
        raise StabilityError(f"lambda = {lam:.6g} exceeds the stability bound 1/2; "
                             f"reduce dt below {STABILITY_LIMIT * field.dx**2 / field.diffusivity:.6g}")
    ghost_l = _ghost(bc.left, u[0])
    ghost_r = _ghost(bc.right, u[-1])
    padded = np.concatenate(([ghost_l], u, [ghost_r]))
    new = u + lam * (padded[2:] - 2.0 * u + padded[:-2])

    lost = field.lost_content
    if bc.left.kind == "absorbing":
        lost += lam * field.dx * (u[0] - ghost_l)
    if bc.right.kind == "absorbing":
        lost += lam * field.dx * (u[-1] - ghost_r)
    return replace(field, values=new, time=field.time + dt, lost_content=lost)


def solve(field: Field1D, t_end: float, bc: BoundaryCondition,
          medium_or_d: ThermalMedium | float | None = None,
          lam: float = DEFAULT_LAMBDA) -> Field1D:
    """March the field to ``t_end`` with stable explicit steps.

    ``medium_or_d`` optionally overrides the field's diffusivity (a
    :class:`ThermalMedium` contributes its derived diffusivity).  The step
    is sized from ``lam`` and the final partial step lands exactly on
    ``t_end``.
    """
    if isinstance(medium_or_d, ThermalMedium):
        field = replace(field, diffusivity=medium_or_d.diffusivity)
    elif medium_or_d is not None:
        field = replace(field, diffusivity=float(medium_or_d))
    if t_end < field.time:
        raise ValueError(f"t_end {t_end} is before current time {field.time}")
    if not 0 < lam <= STABILITY_LIMIT:
        raise StabilityError(f"lam must be in (0, 1/2], got {lam}")
    if t_end == field.time:
        return replace(field, values=field.values.copy())

    dt = lam * field.dx * field.dx / field.diffusivity
    remaining = t_end - field.time
    n_full = int(np.floor(remaining / dt + 1e-12))
    for _ in range(n_full):
        field = ftcs_step(field, dt, bc)
    tail = t_end - field.time
    if tail > 1e-12 * max(dt, 1.0):
        field = ftcs_step(field, tail, bc)
    return replace(field, time=t_end)


def trig_series_dirichlet(initial: Field1D, t: float, n_terms: int = 128) -> Field1D:
    """Series solution on a rod with zero-Dirichlet ends.

    The rod spans the grid faces, length ``L = n_cells * dx``.  Sine
    coefficients come from midpoint quadrature on the cell grid (the
    consistent rule for cell-averaged data; it is exactly orthogonal for
    the first ``n_cells`` modes, so an eigenfunction profile yields exactly
    one term), and each mode decays as ``exp(-eta (k pi / L)^2 t)``.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if n_terms < 1:
        raise ValueError(f"n_terms must be at least 1, got {n_terms}")
    length = initial.length
    xi = initial.cell_centers - initial.left_face
    k = np.arange(1, n_terms + 1)
    # modes[k-1, i] = sin(k pi xi_i / L)
    modes = np.sin(np.outer(k, xi) * (np.pi / length))
    coeffs = (2.0 / length) * modes @ initial.values * initial.dx
    decay = np.exp(-initial.diffusivity * (k * np.pi / length) ** 2 * t)
    values = (coeffs * decay) @ modes
    return replace(initial, values=values, time=t)


def bin_average(field: Field1D, bin_edges: Sequence[float]) -> np.ndarray:
    """Average the field's density over each requested bin.

    Integrates the piecewise-constant cell values over ``[edge_i,
    edge_{i+1})`` and divides by the bin width.  Bins must lie within the
    field's face-to-face domain.
    """
    edges = np.asarray(bin_edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or not np.all(np.diff(edges) > 0):
        raise ValueError("bin_edges must be strictly increasing with at least 2 entries")
    lo, hi = field.left_face, field.right_face
    if edges[0] < lo - 1e-9 * field.dx or edges[-1] > hi + 1e-9 * field.dx:
        raise ValueError(f"bins [{edges[0]}, {edges[-1]}] extend beyond the field "
                         f"domain [{lo}, {hi}]")
    cum = np.concatenate(([0.0], np.cumsum(field.values) * field.dx))

    def integral_to(x: np.ndarray) -> np.ndarray:
        pos = np.clip((x - lo) / field.dx, 0.0, field.values.size)
        i = np.minimum(pos.astype(int), field.values.size - 1)
        frac = pos - i
        return cum[i] + frac * field.values[i] * field.dx

    integrals = integral_to(edges)
    return np.diff(integrals) / np.diff(edges)


def field_cdf(field: Field1D, x) -> np.ndarray:
    """Cumulative integral of the field's values, normalized to its content.

    Treats the field as a probability density; useful for KS comparisons
    between sampled ensembles and PDE solutions.
    """
    total = float(np.sum(field.values) * field.dx)
    if not total > 0:
        raise ValueError("field has no positive content to normalize by")
    x = np.asarray(x, dtype=float)
    lo = field.left_face
    cum = np.concatenate(([0.0], np.cumsum(field.values) * field.dx))
    pos = np.clip((x - lo) / field.dx, 0.0, field.values.size)
    i = np.minimum(pos.astype(int), field.values.size - 1)
    frac = pos - i
    return (cum[i] + frac * field.values[i] * field.dx) / total
