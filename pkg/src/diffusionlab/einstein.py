"""Stochastic, reduced, and macroscopic diffusion coefficients for Brownian motion.

Connects the displacement-statistics coefficient ``D_st = sigma^2 / (2 tau)``
with its per-step reduction ``D = tau * D_st = sigma^2 / 2`` and with the
hydrodynamic Stokes-Einstein coefficient
``D_M = R T / (6 pi N_A mu r)``, whose inversion estimates Avogadro's
number from an observed diffusion coefficient.

Note on the Stokes-Einstein denominator: some statements of the relation
print a time interval where the geometric factor pi belongs.  Dimensional
analysis rules the time interval out (the left side is length^2/time with
no free time scale), so this module uses ``6 pi N_A mu r`` throughout and
the reports flag the convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "PhysicalConstants",
    "BrownianScales",
    "d_stochastic",
    "reduce_to_laplace",
    "d_macroscopic",
    "estimate_avogadro",
]

# CODATA defaults; every one caller-overridable.
GAS_CONSTANT = 8.31446261815324        # J/(mol K)
AVOGADRO = 6.02214076e23               # 1/mol
WATER_VISCOSITY_17C = 1.08e-3          # Pa s, water at 17 C
ROOM_TEMPERATURE_17C = 290.15          # K
MICRON_SPHERE_RADIUS = 0.5e-6          # m, micron-diameter particle


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants entering the Stokes-Einstein relation, SI units."""

    gas_constant: float = field(default=GAS_CONSTANT, metadata={"unit": "J/(mol*K)"})
    avogadro: float = field(default=AVOGADRO, metadata={"unit": "1/mol"})
    viscosity: float = field(default=WATER_VISCOSITY_17C, metadata={"unit": "Pa*s"})
    temperature: float = field(default=ROOM_TEMPERATURE_17C, metadata={"unit": "K"})
    particle_radius: float = field(default=MICRON_SPHERE_RADIUS, metadata={"unit": "m"})

    def __post_init__(self):
        for name in ("gas_constant", "avogadro", "viscosity", "temperature",
                     "particle_radius"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class BrownianScales:
    """Displacement variance per observation interval and the interval itself.

    ``tau`` must be small against the total observation time yet long
    enough that successive movements are independent; for micron particles
    in water that is of order 1e-8 s.
    """

    sigma_sq: float = field(metadata={"unit": "m^2"})
    tau: float = field(metadata={"unit": "s"})

    def __post_init__(self):
        if not self.sigma_sq > 0:
            raise ValueError(f"sigma_sq must be positive, got {self.sigma_sq}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")


def d_stochastic(scales: BrownianScales) -> float:
    """Diffusion coefficient of the displacement statistics, sigma^2/(2 tau)."""
    return scales.sigma_sq / (2.0 * scales.tau)


def reduce_to_laplace(d_st: float, tau: float) -> float:
    """Per-step diffusion coefficient ``D = tau * D_st``.

    Composed with :func:`d_stochastic` this is exactly ``sigma_sq / 2``:
    half the per-step displacement variance, the coefficient of the
    step-indexed diffusion equation.
    """
    if not d_st > 0:
        raise ValueError(f"d_st must be positive, got {d_st}")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    return tau * d_st


def d_macroscopic(constants: PhysicalConstants) -> float:
    """Stokes-Einstein coefficient ``R T / (6 pi N_A mu r)`` in m^2/s."""
    c = constants
    return c.gas_constant * c.temperature / (
        6.0 * math.pi * c.avogadro * c.viscosity * c.particle_radius)


def estimate_avogadro(d_observed: float, constants: PhysicalConstants) -> float:
    """Invert the Stokes-Einstein relation for Avogadro's number.

    ``N_A = R T / (6 pi D mu r)``; the ``avogadro`` field of ``constants``
    is ignored.  Halving the observed coefficient doubles the estimate.
    """
    if not d_observed > 0:
        raise ValueError(f"d_observed must be positive, got {d_observed}")
    c = constants
    return c.gas_constant * c.temperature / (
        6.0 * math.pi * d_observed * c.viscosity * c.particle_radius)
