import math

import numpy as np
import pytest
from scipy.integrate import quad

from driftlab.grid import RadialGrid
from driftlab.oracles import (
    GaussianData,
    heat_solution,
    liftoff_limit,
    mass_growth_check,
    ou_solution,
)
from driftlab.profiles import Linear, Zero
from driftlab.solver import SolverConfig, solve


def _heat_kernel_center_value(g: GaussianData, s: float) -> float:
    """Independent route: convolve the datum with the heat kernel at the origin."""
    n = g.n_dim
    from driftlab.grid import unit_sphere_area

    area = unit_sphere_area(n)
    val, _ = quad(
        lambda y: (4 * math.pi * s) ** (-n / 2) * math.exp(-y * y / (4 * s))
        * math.exp(-y * y / (4 * g.sigma)) * area * y ** (n - 1),
        0.0, 50.0, limit=200,
    )
    return val


def test_heat_solution_identity_at_time_zero():
    g = GaussianData(1.0, 2)
    for r in (0.0, 1.0, 3.5):
        assert heat_solution(g, r, 0.0) == pytest.approx(math.exp(-r * r / 4), rel=1e-15)


def test_heat_solution_center_against_kernel_convolution():
    g = GaussianData(1.0, 2)
    assert heat_solution(g, 0.0, 1.0) == pytest.approx(0.5, rel=1e-14)
    assert _heat_kernel_center_value(g, 1.0) == pytest.approx(0.5, rel=1e-8)
    g3 = GaussianData(0.7, 3)
    assert heat_solution(g3, 0.0, 0.4) == pytest.approx(
        _heat_kernel_center_value(g3, 0.4), rel=1e-8
    )


def test_heat_solution_vanishes_at_spatial_infinity():
    g = GaussianData(1.0, 2)
    assert heat_solution(g, 1e3, 2.0) < 1e-300 or heat_solution(g, 1e3, 2.0) == 0.0


def test_heat_semigroup_property():
    # flowing sigma -> sigma + s1 and then for s2 equals flowing for s1 + s2
    g = GaussianData(1.3, 3)
    s1, s2 = 0.4, 0.9
    g_mid = GaussianData(g.sigma + s1, g.n_dim)
    amp = (g.sigma / (g.sigma + s1)) ** (g.n_dim / 2)
    for r in (0.0, 0.8, 2.7):
        assert heat_solution(g, r, s1 + s2) == pytest.approx(
            amp * heat_solution(g_mid, r, s2), rel=1e-13
        )


def test_drift_solution_starts_at_the_datum():
    g = GaussianData(1.0, 2)
    for r in (0.0, 1.3, 4.0):
        assert ou_solution(g, r, 0.0) == pytest.approx(math.exp(-r * r / 4), rel=1e-14)


def test_drift_solution_equals_rescaled_preflowed_gaussian():
    # the same solution family in the shifted parameterization: for sigma > 1/2,
    # u(r, t) = (sigma/sigma')^{n/2} w_{sigma'}(e^-t r, 1 - e^{-2t}/2), sigma' = sigma - 1/2
    g = GaussianData(1.0, 2)
    g_shift = GaussianData(0.5, 2)
    amp = (g.sigma / g_shift.sigma) ** (g.n_dim / 2)
    for r in (0.0, 1.0, 3.0):
        for t in (0.0, 0.7, 2.5):
            assert ou_solution(g, r, t) == pytest.approx(
                amp * heat_solution(g_shift, math.exp(-t) * r, 1 - 0.5 * math.exp(-2 * t)),
                rel=1e-13,
            )


def test_drift_solution_radially_nonincreasing():
    g = GaussianData(1.0, 2)
    r = np.linspace(0, 10, 300)
    for t in (0.0, 0.5, 2.0, 6.0):
        vals = ou_solution(g, r, t)
        assert np.all(np.diff(vals) <= 1e-15)


def test_drift_solution_plateau_value():
    g = GaussianData(1.0, 2)
    assert liftoff_limit(g) == pytest.approx(2.0 / 3.0, rel=1e-15)
    # exponentially fast convergence: center error below 1e-3 from t = 4 on
    for t in (4.0, 5.0, 8.0):
        assert abs(ou_solution(g, 0.0, t) - 2.0 / 3.0) < 1e-3
    r = np.linspace(0, 5, 100)
    assert np.max(np.abs(ou_solution(g, r, 12.0) - 2.0 / 3.0)) < 1e-6


def test_drift_solution_solves_the_equation():
    # finite-difference residual of u_t - (u_rr + u_r/r - r u_r) on a fine grid
    g = GaussianData(1.0, 2)
    hr, ht = 1e-3, 1e-3
    worst = 0.0
    for r in (0.4, 1.1, 2.6, 5.0):
        for t in (0.3, 1.0, 2.2):
            u_t = (ou_solution(g, r, t + ht) - ou_solution(g, r, t - ht)) / (2 * ht)
            u_r = (ou_solution(g, r + hr, t) - ou_solution(g, r - hr, t)) / (2 * hr)
            u_rr = (
                ou_solution(g, r + hr, t) - 2 * ou_solution(g, r, t) + ou_solution(g, r - hr, t)
            ) / hr**2
            residual = u_t - (u_rr + u_r / r - r * u_r)
            worst = max(worst, abs(residual))
    assert worst < 1e-4  # O(hr^2 + ht^2)


def test_mass_growth_single_snapshot():
    grid = RadialGrid(10.0, 201, 2)
    u0 = GaussianData(1.0, 2).field(grid)
    traj = solve(u0, Linear(), SolverConfig(dt=0.1), 0.0)
    rows = mass_growth_check(traj)
    assert len(rows) == 1
    t, mass, predicted = rows[0]
    assert t == 0.0
    assert mass == pytest.approx(predicted, rel=1e-15)
    assert mass == pytest.approx(4 * math.pi, rel=5e-4)  # int e^{-r^2/4} dx in 2d


def test_mass_growth_zero_field():
    from driftlab.grid import RadialField

    grid = RadialGrid(10.0, 201, 2)
    u0 = RadialField(grid, np.zeros(grid.num_nodes))
    traj = solve(u0, Linear(), SolverConfig(dt=0.01, snapshot_stride=10), 0.1)
    for _, mass, predicted in mass_growth_check(traj):
        assert mass == 0.0 and predicted == 0.0


def test_mass_growth_tracks_exponential():
    grid = RadialGrid(15.0, 1501, 2)
    u0 = GaussianData(1.0, 2).field(grid)
    cfg = SolverConfig(dt=1e-3, theta=0.5, snapshot_stride=200)
    traj = solve(u0, Linear(), cfg, 0.6)
    for t, mass, predicted in mass_growth_check(traj):
        assert mass == pytest.approx(predicted, rel=0.02)


def test_mass_growth_requires_linear_profile():
    grid = RadialGrid(10.0, 201, 2)
    u0 = GaussianData(1.0, 2).field(grid)
    traj = solve(u0, Zero(), SolverConfig(dt=0.1), 0.0)
    with pytest.raises(ValueError):
        mass_growth_check(traj)


def test_gaussian_data_validation():
    with pytest.raises(ValueError):
        GaussianData(0.0, 2)
    with pytest.raises(ValueError):
        GaussianData(1.0, 0)
    grid = RadialGrid(10.0, 201, 3)
    with pytest.raises(ValueError):
        GaussianData(1.0, 2).field(grid)
