import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffusionlab.einstein import (
    BrownianScales,
    PhysicalConstants,
    d_macroscopic,
    d_stochastic,
    estimate_avogadro,
    reduce_to_laplace,
)

positive = st.floats(1e-12, 1e12, allow_nan=False, allow_infinity=False)


def test_d_stochastic_direct_substitution():
    assert d_stochastic(BrownianScales(sigma_sq=1.0, tau=0.5)) == 1.0


def test_d_stochastic_homogeneity_in_tau():
    base = d_stochastic(BrownianScales(sigma_sq=2.0, tau=1.0))
    assert d_stochastic(BrownianScales(sigma_sq=2.0, tau=2.0)) == base / 2.0


def test_d_stochastic_physical_magnitudes():
    # micron-scale particle, interval of order 1e-8 s
    assert d_stochastic(BrownianScales(sigma_sq=4e-13, tau=1e-8)) == pytest.approx(2e-5)


def test_reduction_identity():
    scales = BrownianScales(sigma_sq=1.0, tau=0.5)
    d = reduce_to_laplace(d_stochastic(scales), scales.tau)
    assert d == pytest.approx(0.5, rel=1e-15)


def test_step_time_bookkeeping():
    # t = n * tau
    n, tau = 100, 1e-8
    assert n * tau == pytest.approx(1e-6, rel=1e-15)


@settings(max_examples=300, deadline=None)
@given(sigma_sq=positive, tau=positive)
def test_identity_chain_is_exact(sigma_sq, tau):
    scales = BrownianScales(sigma_sq=sigma_sq, tau=tau)
    d = reduce_to_laplace(d_stochastic(scales), scales.tau)
    assert abs(d - sigma_sq / 2.0) <= 1e-15 * (sigma_sq / 2.0)


def test_d_macroscopic_reference_value():
    # independent arithmetic oracle for water at 17 C, micron-diameter sphere
    c = PhysicalConstants(gas_constant=8.314, temperature=290.15,
                          avogadro=6.02214e23, viscosity=1.08e-3,
                          particle_radius=0.5e-6)
    oracle = 8.314 * 290.15 / (6 * math.pi * 6.02214e23 * 1.08e-3 * 0.5e-6)
    value = d_macroscopic(c)
    assert value == pytest.approx(oracle, rel=1e-15)
    assert value == pytest.approx(3.9e-13, rel=0.02)


def test_d_macroscopic_radius_homogeneity():
    c1 = PhysicalConstants()
    c2 = PhysicalConstants(particle_radius=2 * c1.particle_radius)
    assert d_macroscopic(c2) == pytest.approx(d_macroscopic(c1) / 2.0, rel=1e-15)


def test_round_trip_through_denominator():
    c = PhysicalConstants()
    d = d_macroscopic(c)
    product = d * (6 * math.pi * c.avogadro * c.viscosity * c.particle_radius)
    assert product / (c.gas_constant * c.temperature) == pytest.approx(1.0, rel=1e-15)


def test_avogadro_round_trip():
    c = PhysicalConstants(gas_constant=8.314, temperature=290.15,
                          avogadro=6.02214e23, viscosity=1.08e-3,
                          particle_radius=0.5e-6)
    estimate = estimate_avogadro(d_macroscopic(c), c)
    assert abs(estimate - c.avogadro) / c.avogadro < 1e-12


def test_avogadro_inverse_proportionality():
    c = PhysicalConstants()
    d = d_macroscopic(c)
    assert estimate_avogadro(2.0 * d, c) == pytest.approx(c.avogadro / 2.0, rel=1e-12)


@pytest.mark.parametrize("kwargs", [
    {"gas_constant": 0.0},
    {"temperature": -1.0},
    {"viscosity": 0.0},
    {"particle_radius": 0.0},
    {"avogadro": -5.0},
])
def test_constants_validation(kwargs):
    with pytest.raises(ValueError):
        PhysicalConstants(**kwargs)


def test_scales_validation_and_units():
    with pytest.raises(ValueError):
        BrownianScales(sigma_sq=0.0, tau=1.0)
    with pytest.raises(ValueError):
        BrownianScales(sigma_sq=1.0, tau=0.0)
    import dataclasses
    units = {f.name: f.metadata.get("unit") for f in dataclasses.fields(BrownianScales)}
    assert units == {"sigma_sq": "m^2", "tau": "s"}
    const_units = {f.name: f.metadata.get("unit")
                   for f in dataclasses.fields(PhysicalConstants)}
    assert const_units["gas_constant"] == "J/(mol*K)"


def test_estimate_rejects_nonpositive_observation():
    with pytest.raises(ValueError):
        estimate_avogadro(0.0, PhysicalConstants())
