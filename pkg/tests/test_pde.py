import numpy as np
import pytest
from scipy.integrate import quad

from diffusionlab.pde import (
    BoundaryCondition,
    Field1D,
    StabilityError,
    ThermalMedium,
    bin_average,
    delta_field,
    dirichlet,
    field_cdf,
    ftcs_step,
    green_function,
    green_function_cdf,
    heat_content,
    reflecting,
    solve,
    trig_series_dirichlet,
)


def uniform_field(n, dx, value=1.0, diffusivity=1.0, x0=0.0):
    return Field1D(x0=x0, dx=dx, values=np.full(n, float(value)),
                   diffusivity=diffusivity)


# ---------------------------------------------------------------- medium

def test_medium_diffusivity_is_consistent():
    m = ThermalMedium(conductivity=2.0, density=4.0, specific_heat=0.5)
    assert m.diffusivity == pytest.approx(1.0, rel=1e-15)
    assert m.volumetric_heat_capacity == 2.0


def test_medium_rejects_nonpositive():
    with pytest.raises(ValueError):
        ThermalMedium(conductivity=0.0, density=1.0, specific_heat=1.0)


# ---------------------------------------------------------------- green function

def test_green_peak_is_standard_normal_height():
    assert green_function(0.0, t=1.0, diffusion=0.5) == pytest.approx(
        1.0 / np.sqrt(2.0 * np.pi))


def test_green_symmetry():
    x = np.linspace(0.1, 5.0, 40)
    np.testing.assert_allclose(green_function(x, 2.0, 0.7),
                               green_function(-x, 2.0, 0.7), rtol=1e-15)


def test_green_integrates_to_content():
    # quadrature oracle over +/- 10 standard deviations
    d, t, q = 0.8, 3.0, 2.5
    sigma = np.sqrt(2.0 * d * t)
    integral, _ = quad(lambda x: green_function(x, t, d, q), -10 * sigma, 10 * sigma)
    assert abs(integral - q) < 1e-9


def test_green_rejects_delta_limit():
    with pytest.raises(ValueError):
        green_function(0.0, t=0.0, diffusion=1.0)


def test_green_cdf_matches_density_quadrature():
    d, t = 0.4, 2.0
    for x in (-1.0, 0.0, 0.7):
        num, _ = quad(lambda y: green_function(y, t, d), -40.0, x)
        assert green_function_cdf(x, t, d) == pytest.approx(num, abs=1e-9)


# ---------------------------------------------------------------- heat content

def test_uniform_content():
    f = uniform_field(10, 0.1)
    assert heat_content(f) == pytest.approx(1.0, rel=1e-12)


def test_delta_cell_content():
    f = delta_field(101, 0.01, diffusivity=1.0, content=3.5)
    assert heat_content(f) == pytest.approx(3.5, rel=1e-12)


def test_gaussian_profile_content_quadrature():
    d, t = 0.5, 1.0
    dx = 0.002
    n = 20001
    f = delta_field(n, dx, diffusivity=d)
    xs = f.cell_centers
    profile = Field1D(x0=f.x0, dx=dx, values=green_function(xs, t, d),
                      diffusivity=d, time=t)
    assert abs(heat_content(profile) - 1.0) < 1e-6


def test_thermal_mode_scales_by_capacity():
    m = ThermalMedium(conductivity=1.0, density=2.0, specific_heat=3.0)
    f = uniform_field(10, 0.1)
    assert heat_content(f, m) == pytest.approx(6.0, rel=1e-12)


# ---------------------------------------------------------------- ftcs step

def test_uniform_field_is_stationary():
    f = uniform_field(20, 0.1, value=2.0)
    g = ftcs_step(f, 0.001, BoundaryCondition.reflecting())
    np.testing.assert_allclose(g.values, f.values, rtol=1e-15)


def test_stability_error_is_raised():
    f = uniform_field(20, 0.1)
    with pytest.raises(StabilityError):
        ftcs_step(f, dt=0.0051, bc=BoundaryCondition.reflecting())  # lambda = 0.51


def test_reflecting_step_conserves_content():
    rng = np.random.default_rng(0)
    f = Field1D(x0=0.0, dx=0.05, values=rng.uniform(0, 2, 40), diffusivity=1.0)
    before = heat_content(f)
    bc = BoundaryCondition.reflecting()
    for _ in range(200):
        f = ftcs_step(f, 0.0005, bc)
    assert abs(heat_content(f) - before) / before < 1e-12


def test_delta_source_matches_green_function():
    # grid-refinement oracle: L-inf relative error at the spec's resolution
    d, t = 0.5, 1.0
    dx = 0.01 * np.sqrt(4 * d * t)
    half = 8.0 * np.sqrt(2 * d * t)
    n = 2 * int(np.ceil(half / dx)) + 1
    f = delta_field(n, dx, diffusivity=d)
    f = solve(f, t, BoundaryCondition.reflecting(), lam=0.25)
    ana = green_function(f.cell_centers, t, d)
    rel = np.max(np.abs(f.values - ana)) / ana.max()
    assert rel < 1e-3


def test_second_order_convergence_in_space():
    # halving dx cuts the L-inf error by about 4x
    d, t = 0.5, 0.5
    errors = []
    for dx in (0.08, 0.04):
        half = 8.0 * np.sqrt(2 * d * t)
        n = 2 * int(np.ceil(half / dx)) + 1
        f = delta_field(n, dx, diffusivity=d)
        f = solve(f, t, BoundaryCondition.reflecting(), lam=0.25)
        ana = green_function(f.cell_centers, t, d)
        errors.append(np.max(np.abs(f.values - ana)) / ana.max())
    ratio = errors[0] / errors[1]
    assert 3.0 < ratio < 5.0


def test_maximum_principle():
    rng = np.random.default_rng(5)
    f = Field1D(x0=0.05, dx=0.1, values=rng.uniform(0, 3, 30), diffusivity=1.0)
    bc = BoundaryCondition.dirichlet(0.0, 0.0)
    prev_max = f.values.max()
    for _ in range(100):
        f = ftcs_step(f, 0.0025, bc)   # lambda = 0.25
        cur = f.values.max()
        assert cur <= prev_max + 1e-14
        prev_max = cur


def test_absorbing_loss_accounting():
    f = delta_field(51, 0.1, diffusivity=1.0)
    before = heat_content(f)
    bc = BoundaryCondition.absorbing()
    for _ in range(2000):
        f = ftcs_step(f, 0.0025, bc)
    after = heat_content(f)
    assert after < before
    assert (after + f.lost_content) == pytest.approx(before, rel=1e-10)


# ---------------------------------------------------------------- trig series

def sine_rod(n_cells=201, length=1.0, diffusivity=1.0):
    dx = length / n_cells
    x0 = dx / 2.0
    xs = x0 + dx * np.arange(n_cells)
    values = np.sin(np.pi * xs / length)
    return Field1D(x0=x0, dx=dx, values=values, diffusivity=diffusivity)


def test_eigenfunction_is_single_mode():
    f = sine_rod()
    t = 0.3
    out = trig_series_dirichlet(f, t, n_terms=64)
    decay = np.exp(-f.diffusivity * (np.pi / f.length) ** 2 * t)
    np.testing.assert_allclose(out.values, f.values * decay, atol=1e-12)
    mid = f.values.size // 2  # odd cell count puts a center exactly at L/2
    assert out.values[mid] == pytest.approx(decay, rel=1e-10)


def test_series_reconstructs_smooth_profile_at_t0():
    n = 201
    dx = 1.0 / n
    xs = dx / 2.0 + dx * np.arange(n)
    values = xs * (1.0 - xs) * np.exp(xs)          # smooth, zero at both ends
    f = Field1D(x0=dx / 2.0, dx=dx, values=values, diffusivity=1.0)
    out = trig_series_dirichlet(f, 0.0, n_terms=128)
    l2 = np.sqrt(np.sum((out.values - values) ** 2) * dx)
    assert l2 < 1e-3


def test_series_decays_monotonically():
    f = sine_rod()
    peaks = [np.abs(trig_series_dirichlet(f, t, 64).values).max()
             for t in (0.0, 0.1, 0.5, 1.0, 3.0)]
    assert all(a > b for a, b in zip(peaks, peaks[1:]))
    assert peaks[-1] < 1e-10


def test_series_rejects_negative_time():
    with pytest.raises(ValueError):
        trig_series_dirichlet(sine_rod(), -0.1)


# ---------------------------------------------------------------- solve

def test_solve_identity_at_current_time():
    f = uniform_field(10, 0.1, value=2.0)
    g = solve(f, 0.0, BoundaryCondition.reflecting())
    np.testing.assert_array_equal(g.values, f.values)
    with pytest.raises(ValueError):
        solve(f, -1.0, BoundaryCondition.reflecting())


def test_solve_lands_exactly_on_t_end():
    f = delta_field(51, 0.1, diffusivity=1.0)
    g = solve(f, 0.0421, BoundaryCondition.reflecting())
    assert g.time == 0.0421


def test_solve_matches_trig_series_on_dirichlet_rod():
    f = sine_rod(n_cells=201)
    t = 0.05
    numeric = solve(f, t, BoundaryCondition.dirichlet(0.0, 0.0), lam=0.25)
    series = trig_series_dirichlet(f, t, n_terms=64)
    linf = np.max(np.abs(numeric.values - series.values))
    assert linf < 1e-3


def test_reflecting_box_reaches_uniform_equilibrium():
    f = delta_field(51, 0.02, diffusivity=1.0)
    content = heat_content(f)
    g = solve(f, 2.0, BoundaryCondition.reflecting())
    expected = content / g.length
    assert np.max(np.abs(g.values - expected)) < 1e-6
    assert abs(heat_content(g) - content) / content < 1e-12


def test_dirichlet_steady_state_is_linear():
    n = 40
    f = Field1D(x0=0.5 / n, dx=1.0 / n, values=np.zeros(n), diffusivity=1.0)
    bc = BoundaryCondition.dirichlet(1.0, 3.0)
    g = solve(f, 6.0, bc)
    # harmonic in 1D: straight line through the face values
    xs = g.cell_centers
    line = 1.0 + (3.0 - 1.0) * (xs - g.left_face) / g.length
    assert np.max(np.abs(g.values - line)) < 1e-8


# ---------------------------------------------------------------- helpers

def test_bin_average_of_uniform_field():
    f = uniform_field(100, 0.01, value=2.0)
    edges = np.array([0.1, 0.3, 0.6, 0.9]) - 0.005
    avg = bin_average(f, edges)
    np.testing.assert_allclose(avg, 2.0, rtol=1e-12)


def test_bin_average_conserves_integral():
    d, t = 0.5, 1.0
    f = delta_field(801, 0.05, diffusivity=d)
    f = solve(f, t, BoundaryCondition.reflecting())
    edges = np.linspace(-15.0, 15.0, 31)
    avg = bin_average(f, edges)
    assert np.sum(avg * np.diff(edges)) == pytest.approx(1.0, abs=1e-9)


def test_bin_average_rejects_out_of_domain_bins():
    f = uniform_field(10, 0.1)
    with pytest.raises(ValueError):
        bin_average(f, np.array([-5.0, 5.0]))


def test_field_cdf_endpoints_and_midpoint():
    f = uniform_field(100, 0.01)  # uniform density on [-0.005, 0.995]
    assert field_cdf(f, f.left_face - 1.0) == pytest.approx(0.0)
    assert field_cdf(f, f.right_face + 1.0) == pytest.approx(1.0)
    mid = 0.5 * (f.left_face + f.right_face)
    assert field_cdf(f, mid) == pytest.approx(0.5, abs=1e-12)
