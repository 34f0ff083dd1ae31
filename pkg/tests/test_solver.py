import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from driftlab.grid import RadialField, RadialGrid
from driftlab.oracles import GaussianData, heat_solution
from driftlab.profiles import Linear, LogCorrected, PowerLaw, Tabulated, Zero
from driftlab.solver import (
    DivergenceError,
    SolverConfig,
    Trajectory,
    operator_diagonals,
    radial_rhs,
    solve,
    step,
)

PROFILES = [PowerLaw(3.0, -1.0, 1.0), LogCorrected(n_dim=2, alpha=2.0), Linear(), Zero()]


def _grid(n_dim=2, r_max=10.0, nodes=201):
    return RadialGrid(r_max, nodes, n_dim)


# --- radial_rhs -----------------------------------------------------------


def test_rhs_constant_field_is_zero():
    g = _grid()
    c = RadialField(g, np.full(g.num_nodes, 4.2))
    for p in PROFILES:
        out = radial_rhs(c, p)
        assert np.max(np.abs(out.values)) <= 1e-12


def test_rhs_quadratic_in_three_dimensions():
    # Lap(r^2) = 2n = 6; centered differences are exact on quadratics
    g = _grid(n_dim=3)
    u = RadialField.from_function(g, lambda r: r**2)
    out = radial_rhs(u, Zero())
    np.testing.assert_allclose(out.values[1:-1], 6.0, rtol=1e-10)


def test_rhs_origin_symmetry_limit():
    # at r = 0 the operator is n * u_rr(0); for u = r^2, n = 2 this is 4
    g = _grid(n_dim=2)
    u = RadialField.from_function(g, lambda r: r**2)
    assert radial_rhs(u, Zero()).values[0] == pytest.approx(4.0, rel=1e-10)


def test_rhs_frozen_outer_row_is_zero():
    g = _grid()
    u = RadialField.from_function(g, lambda r: np.exp(-r))
    assert radial_rhs(u, Linear(), outer_bc="dirichlet_frozen").values[-1] == 0.0


# --- stepping -------------------------------------------------------------


@pytest.mark.parametrize("theta,advection", [(1.0, "upwind"), (0.5, "centered"), (0.0, "centered")])
@pytest.mark.parametrize("outer_bc", ["dirichlet_frozen", "neumann"])
def test_constants_are_stationary(theta, advection, outer_bc):
    g = _grid()
    c = RadialField(g, np.full(g.num_nodes, 2.5))
    cfg = SolverConfig(dt=1e-3, theta=theta, advection=advection, outer_bc=outer_bc)
    for p in PROFILES:
        out = step(c, p, cfg)
        assert np.max(np.abs(out.values - 2.5)) <= 2.5 * 1e-12


def test_step_matches_heat_oracle():
    g = GaussianData(1.0, 2)
    grid = RadialGrid(12.0, 601, 2)
    cfg = SolverConfig(dt=1e-3, theta=0.5, snapshot_stride=10**9)
    traj = solve(g.field(grid), Zero(), cfg, 0.5)
    r = grid.nodes
    mask = r <= 9.6
    exact = heat_solution(g, r[mask], 0.5)
    err = np.max(np.abs(traj.final.values[mask] - exact))
    assert err < 2e-5  # O(h^2 + dt^2) at h = 0.02


def test_implicit_upwind_matrix_signs():
    # I - dt*L must be an M-matrix with unit row sums for every profile
    dt = 0.05
    for p in PROFILES + [Tabulated([0.0, 2.0, 10.0], [0.0, -1.0, 3.0])]:
        for n in (1, 2, 3, 5):
            g = _grid(n_dim=n, nodes=101)
            lo, d, up = operator_diagonals(g, p, "upwind", "dirichlet_frozen")
            assert np.all(lo[1:] >= 0) and np.all(up[:-1] >= 0)
            diag = 1.0 - dt * d
            assert np.all(diag > 0)
            rows = diag - dt * lo - dt * up  # row sums of I - dt*L
            np.testing.assert_allclose(rows, 1.0, rtol=1e-13)


@settings(max_examples=25, deadline=None)
@given(data=st.lists(st.floats(0.0, 5.0), min_size=51, max_size=51),
       idx=st.integers(0, 3))
def test_maximum_principle_upwind(data, idx):
    g = RadialGrid(5.0, 51, 2)
    u = RadialField(g, np.array(data))
    cfg = SolverConfig(dt=0.02, theta=1.0, advection="upwind")
    out = u
    for _ in range(3):
        out = step(out, PROFILES[idx], cfg)
    lo, hi = np.min(u.values), np.max(u.values)
    tol = 1e-12 * max(1.0, hi)
    assert np.min(out.values) >= lo - tol
    assert np.max(out.values) <= hi + tol


def test_monotonicity_preserved_upwind():
    g = _grid()
    u0 = GaussianData(1.0, 2).field(g)
    cfg = SolverConfig(dt=5e-3, theta=1.0, advection="upwind", snapshot_stride=50)
    for p in PROFILES:
        traj = solve(u0, p, cfg, 1.0)
        for _, f in traj:
            assert np.all(np.diff(f.values) <= 1e-12)


def test_positivity_and_center_positive():
    g = _grid(nodes=101)
    bump = RadialField.from_function(g, lambda r: np.where(r < 2.0, (2.0 - r) ** 2, 0.0))
    cfg = SolverConfig(dt=5e-3, theta=1.0, advection="upwind", snapshot_stride=10)
    traj = solve(bump, PowerLaw(3.0, -1.0, 1.0), cfg, 0.5)
    for t, f in traj:
        assert np.min(f.values) >= -1e-14
        if t > 0:
            assert f.values[0] > 0


def test_sup_decreasing_for_pure_diffusion():
    g = _grid(nodes=401)
    u0 = RadialField.from_function(g, lambda r: np.maximum(1.0 - r, 0.0))
    cfg = SolverConfig(dt=2e-3, theta=1.0, advection="upwind", snapshot_stride=25)
    traj = solve(u0, Zero(), cfg, 0.5)
    sups = [np.max(f.values) for _, f in traj]
    assert np.all(np.diff(sups) <= 1e-13)


def test_linearity_of_solve():
    g = _grid(nodes=151)
    u0 = GaussianData(1.0, 2).field(g)
    v0 = RadialField.from_function(g, lambda r: np.exp(-((r - 2.0) ** 2)))
    mix = RadialField(g, 2.0 * u0.values - 0.5 * v0.values)
    cfg = SolverConfig(dt=5e-3, theta=0.5, snapshot_stride=20)
    p = PowerLaw(3.0, -1.0, 1.0)
    tm, ta, tb = (solve(f, p, cfg, 0.4) for f in (mix, u0, v0))
    for (_, fm), (_, fa), (_, fb) in zip(tm, ta, tb):
        lin = 2.0 * fa.values - 0.5 * fb.values
        assert np.max(np.abs(fm.values - lin)) <= 1e-12 * max(1.0, np.max(np.abs(lin)))


# --- trajectory bookkeeping ------------------------------------------------


def test_zero_horizon_returns_initial_frame():
    g = _grid(nodes=51)
    u0 = GaussianData(1.0, 2).field(g)
    traj = solve(u0, Zero(), SolverConfig(dt=0.1), 0.0)
    assert len(traj) == 1
    t, f = traj.frames[0]
    assert t == 0.0
    np.testing.assert_array_equal(f.values, u0.values)


def test_final_snapshot_exactly_at_t_end():
    g = _grid(nodes=51)
    u0 = GaussianData(1.0, 2).field(g)
    cfg = SolverConfig(dt=1e-3, snapshot_stride=3)
    traj = solve(u0, Linear(), cfg, 0.0105)  # shortened final step
    assert traj.times[-1] == 0.0105
    assert np.all(np.diff(traj.times) > 0)
    assert traj.times[0] == 0.0


def test_snapshot_stride():
    g = _grid(nodes=51)
    u0 = GaussianData(1.0, 2).field(g)
    cfg = SolverConfig(dt=0.01, snapshot_stride=5)
    traj = solve(u0, Zero(), cfg, 0.2)
    np.testing.assert_allclose(traj.times, [0.0, 0.05, 0.10, 0.15, 0.20], atol=1e-12)


def test_divergence_reported_with_step_index():
    # forward Euler far beyond its stability limit must blow up, not return junk
    g = RadialGrid(1.0, 101, 2)
    u0 = GaussianData(1.0, 2).field(g)
    cfg = SolverConfig(dt=1.0, theta=0.0, snapshot_stride=1)
    with np.errstate(all="ignore"):
        with pytest.raises(DivergenceError, match="step"):
            solve(u0, Zero(), cfg, 200.0)


def test_consistency_order_against_heat_oracle():
    # pure diffusion against the closed-form Gaussian: simultaneous halving of
    # h and dt with Crank-Nicolson must shrink the max error at order ~2
    g = GaussianData(1.0, 2)
    errors = []
    for nodes, dt in [(151, 4e-3), (301, 2e-3), (601, 1e-3)]:
        grid = RadialGrid(12.0, nodes, 2)
        cfg = SolverConfig(dt=dt, theta=0.5, snapshot_stride=10**9)
        traj = solve(g.field(grid), Zero(), cfg, 0.5)
        mask = grid.nodes <= 9.6
        exact = heat_solution(g, grid.nodes[mask], 0.5)
        errors.append(float(np.max(np.abs(traj.final.values[mask] - exact))))
    assert errors[0] > errors[1] > errors[2]
    order = 0.5 * np.log2(errors[0] / errors[2])
    assert order >= 1.9


def test_neumann_boundary_conserves_mass_at_second_order():
    # reflecting outer wall: the plain mass is conserved by the continuum
    # equation; the discrete drift must shrink like h^2
    from driftlab.grid import radial_trapezoid, unit_sphere_area

    g = GaussianData(1.0, 2)
    drifts = []
    for nodes, dt in [(201, 4e-3), (401, 2e-3)]:
        grid = RadialGrid(10.0, nodes, 2)
        cfg = SolverConfig(dt=dt, theta=0.5, outer_bc="neumann", snapshot_stride=100)
        traj = solve(g.field(grid), Zero(), cfg, 4.0)
        masses = np.array(
            [unit_sphere_area(2) * radial_trapezoid(grid.nodes, f.values, 2) for _, f in traj]
        )
        drifts.append(float(np.max(np.abs(masses - masses[0])) / masses[0]))
    assert drifts[0] < 5e-4
    assert drifts[0] / drifts[1] > 3.0


def test_trajectory_validation():
    g = _grid(nodes=51)
    f = GaussianData(1.0, 2).field(g)
    cfg = SolverConfig(dt=0.1)
    with pytest.raises(ValueError):
        Trajectory([(0.1, f)], Zero(), cfg)  # must start at 0
    with pytest.raises(ValueError):
        Trajectory([(0.0, f), (0.0, f)], Zero(), cfg)  # strictly increasing
    with pytest.raises(ValueError):
        Trajectory([], Zero(), cfg)


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(dt=0.0)
    with pytest.raises(ValueError):
        SolverConfig(dt=0.1, theta=1.5)
    with pytest.raises(ValueError):
        SolverConfig(dt=0.1, advection="weno")
    with pytest.raises(ValueError):
        SolverConfig(dt=0.1, outer_bc="absorbing")
    with pytest.raises(ValueError):
        SolverConfig(dt=0.1, snapshot_stride=0)
