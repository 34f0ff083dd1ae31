"""Implicit theta-scheme for the radial advection-diffusion equation.

For rotationally symmetric u the equation u_t = Lap(u) - psi(r) u_r reduces to

    u_t = u_rr + ((n-1)/r) u_r - psi(r) u_r      on (0, r_max),

with the symmetry limit Lap(u)(0) = n * u_rr(0) at the origin.  Space is
discretized with second-order differences (optionally upwinded first-order
advection), time with the one-parameter theta scheme

    (I - theta*dt*L) u_new = (I + (1-theta)*dt*L) u_old,

solved exactly by a banded LAPACK factorization each step.  With theta = 1 and
upwind advection the implicit matrix is an M-matrix with unit row sums, so the
update is a convex combination of old node values: new values stay inside
[min u_old, max u_old], non-negativity and radial monotonicity are preserved
exactly (up to roundoff).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import solve_banded

from .grid import RadialField, RadialGrid
from .profiles import DriftProfile

ADVECTION_MODES = ("centered", "upwind")
OUTER_BCS = ("dirichlet_frozen", "neumann")


class SolverError(RuntimeError):
    """The implicit linear system could not be solved."""


class DivergenceError(SolverError):
    """A time step produced non-finite values."""


@dataclass(frozen=True)
class SolverConfig:
    """Time-stepping parameters.

    theta = 0.5 is Crank-Nicolson (second order), theta = 1 backward Euler
    (first order, unconditionally monotone with upwind advection).
    dirichlet_frozen holds the outer node at its initial value; neumann
    enforces u_r(r_max) = 0 by mirror ghost.
    """

    dt: float
    theta: float = 0.5
    outer_bc: str = "dirichlet_frozen"
    advection: str = "centered"
    snapshot_stride: int = 1

    def __post_init__(self):
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")
        if self.outer_bc not in OUTER_BCS:
            raise ValueError(f"outer_bc must be one of {OUTER_BCS}, got {self.outer_bc!r}")
        if self.advection not in ADVECTION_MODES:
            raise ValueError(f"advection must be one of {ADVECTION_MODES}, got {self.advection!r}")
        if self.snapshot_stride < 1:
            raise ValueError(f"snapshot_stride must be >= 1, got {self.snapshot_stride}")


class Trajectory:
    """Time-ordered snapshots of one simulation."""

    __slots__ = ("frames", "profile", "config")

    def __init__(self, frames, profile: DriftProfile, config: SolverConfig):
        frames = list(frames)
        if not frames:
            raise ValueError("trajectory needs at least one frame")
        times = [t for t, _ in frames]
        if times[0] != 0.0:
            raise ValueError("trajectory must start at t = 0")
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        object.__setattr__(self, "frames", frames)
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "config", config)

    def __setattr__(self, name, value):
        raise AttributeError("Trajectory is immutable")

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    @property
    def grid(self) -> RadialGrid:
        return self.frames[0][1].grid

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.frames])

    @property
    def final(self) -> RadialField:
        return self.frames[-1][1]


def operator_diagonals(grid: RadialGrid, profile: DriftProfile, advection: str = "centered",
                       outer_bc: str = "dirichlet_frozen"):
    """Tridiagonal rows (lower, diag, upper) of the spatial operator L.

    lower[i] multiplies u[i-1], upper[i] multiplies u[i+1]; lower[0] and
    upper[-1] are unused.  diag is assembled as -(lower+upper) so row sums
    vanish exactly and constants are stationary to machine precision.
    """
    n = grid.n_dim
    h = grid.spacing
    r = grid.nodes
    N = grid.num_nodes
    lower = np.zeros(N)
    upper = np.zeros(N)

    # origin: u_r(0) = 0, ghost u(-h) = u(h) gives Lap(u)(0) ~ 2n (u1-u0)/h^2
    upper[0] = 2.0 * n / h**2

    ri = r[1:-1]
    c = (n - 1) / ri - np.asarray(profile.psi(ri), dtype=float)
    base = 1.0 / h**2
    if advection == "centered":
        lower[1:-1] = base - c / (2.0 * h)
        upper[1:-1] = base + c / (2.0 * h)
    else:
        lower[1:-1] = base + np.maximum(-c, 0.0) / h
        upper[1:-1] = base + np.maximum(c, 0.0) / h

    if outer_bc == "neumann":
        # mirror ghost u(r_max+h) = u(r_max-h); u_r(r_max)=0 kills advection
        lower[-1] = 2.0 / h**2
    # dirichlet_frozen: outer row stays zero, so du/dt = 0 there

    diag = -(lower + upper)
    return lower, diag, upper


def apply_tridiagonal(lower, diag, upper, v):
    out = diag * v
    out[1:] += lower[1:] * v[:-1]
    out[:-1] += upper[:-1] * v[1:]
    return out


def radial_rhs(u: RadialField, profile: DriftProfile, outer_bc: str = "dirichlet_frozen") -> RadialField:
    """du/dt evaluated with centered second-order differences."""
    lo, d, up = operator_diagonals(u.grid, profile, "centered", outer_bc)
    return RadialField(u.grid, apply_tridiagonal(lo, d, up, u.values))


class _ThetaStepper:
    """Assembled theta-scheme for one fixed dt; advance() performs one step."""

    def __init__(self, grid: RadialGrid, profile: DriftProfile, config: SolverConfig, dt: float):
        lo, d, up = operator_diagonals(grid, profile, config.advection, config.outer_bc)
        theta = config.theta
        N = grid.num_nodes
        ab = np.zeros((3, N))
        ab[0, 1:] = -theta * dt * up[:-1]
        ab[1, :] = 1.0 - theta * dt * d
        ab[2, :-1] = -theta * dt * lo[1:]
        self._ab = ab
        self._explicit = None
        if theta < 1.0:
            w = (1.0 - theta) * dt
            self._explicit = (w * lo, w * d, w * up)

    def advance(self, v: np.ndarray) -> np.ndarray:
        if self._explicit is None:
            rhs = v
        else:
            lo, d, up = self._explicit
            rhs = v + apply_tridiagonal(lo, d, up, v)
        try:
            return solve_banded((1, 1), self._ab, rhs, check_finite=False)
        except LinAlgError as exc:
            raise SolverError(f"singular implicit system: {exc}") from exc


def step(u: RadialField, profile: DriftProfile, config: SolverConfig) -> RadialField:
    """Advance a field by one time step config.dt."""
    stepper = _ThetaStepper(u.grid, profile, config, config.dt)
    out = stepper.advance(u.values)
    if not np.all(np.isfinite(out)):
        raise DivergenceError("time step produced non-finite values")
    return RadialField(u.grid, out)


def solve(u0: RadialField, profile: DriftProfile, config: SolverConfig, t_end: float) -> Trajectory:
    """Repeated stepping with snapshots every snapshot_stride steps.

    The final snapshot lands exactly at t_end; the last step is shortened when
    t_end is not a multiple of dt.  t_end = 0 yields the single frame (0, u0).
    """
    if t_end < 0:
        raise ValueError(f"t_end must be non-negative, got {t_end}")
    if t_end == 0:
        return Trajectory([(0.0, u0)], profile, config)

    dt = config.dt
    ratio = t_end / dt
    n_full = int(np.floor(ratio))
    if ratio - n_full > 1 - 1e-9:  # integer step count up to roundoff
        n_full += 1
    remainder = t_end - n_full * dt
    if remainder <= dt * 1e-9:
        remainder = 0.0

    frames = [(0.0, u0)]
    stepper = _ThetaStepper(u0.grid, profile, config, dt)
    v = u0.values
    for k in range(1, n_full + 1):
        v = stepper.advance(v)
        if not np.all(np.isfinite(v)):
            raise DivergenceError(f"non-finite values at step {k} (t = {k * dt:g})")
        if k % config.snapshot_stride == 0 and not (k == n_full and remainder == 0.0):
            frames.append((k * dt, RadialField(u0.grid, v)))
    if remainder > 0.0:
        v = _ThetaStepper(u0.grid, profile, config, remainder).advance(v)
        if not np.all(np.isfinite(v)):
            raise DivergenceError(f"non-finite values in final shortened step (t = {t_end:g})")
    frames.append((t_end, RadialField(u0.grid, v)))
    return Trajectory(frames, profile, config)
