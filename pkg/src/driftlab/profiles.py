"""Radial drift-speed profiles.

Every profile describes the scalar speed psi(r) of an inward-pointing radial
velocity field b(x) = -(x/|x|) psi(|x|).  All variants satisfy psi(0) = 0 so
that b extends continuously to the origin.  The mollified families (power law
and log-corrected) follow their closed-form expression exactly for r >= r0 and
ramp to zero on [0, r0] with a monotone cubic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class ProfileRangeError(ValueError):
    """Raised when a tabulated profile is queried outside its sample range."""


def _as_array(r):
    rr = np.asarray(r, dtype=float)
    if np.any(rr < 0):
        raise ValueError("radius must be non-negative")
    return rr


def _scalar_or_array(out, r):
    return out if np.ndim(r) else float(out)


def _ramp_value(v: float, slope_ratio: float, r0: float, r):
    # cubic with p(0)=p'(0)=0, p(r0)=v, p'(r0)=slope_ratio*v/r0
    s = r / r0
    return v * s * s * ((3.0 - slope_ratio) + (slope_ratio - 2.0) * s)


def _ramp_integral(v: float, slope_ratio: float, r0: float, r):
    s = r / r0
    return v * r0 * (s**3 * (3.0 - slope_ratio) / 3.0 + s**4 * (slope_ratio - 2.0) / 4.0)


def _clamp_slope_ratio(ratio: float) -> float:
    # Monotonicity of the cubic ramp requires the endpoint slope ratio in
    # [0, 3]; decreasing far fields would need a negative endpoint slope,
    # which no monotone ramp can match, so the slope is limited instead.
    return min(max(ratio, 0.0), 3.0)


class DriftProfile:
    """Base class; concrete variants implement psi and its cumulative integral."""

    def psi(self, r):
        raise NotImplementedError

    def psi_integral(self, r):
        """Cumulative integral int_0^r psi, in closed form."""
        raise NotImplementedError

    @property
    def nonnegative(self) -> bool:
        """True when psi(r) >= 0 is guaranteed for all r."""
        return False

    @property
    def nonpositive(self) -> bool:
        """True when psi(r) <= 0 is guaranteed for all r."""
        return False


@dataclass(frozen=True)
class PowerLaw(DriftProfile):
    """psi(r) = amplitude * r**exponent for r >= r0, cubic ramp to 0 below r0."""

    amplitude: float
    exponent: float
    r0: float = 1.0
    _ramp_v: float = field(init=False, repr=False, compare=False)
    _ramp_t: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.r0 <= 0:
            raise ValueError(f"mollification radius must be positive, got {self.r0}")
        if not (math.isfinite(self.amplitude) and math.isfinite(self.exponent)):
            raise ValueError("amplitude and exponent must be finite")
        v = self.amplitude * self.r0**self.exponent
        t = _clamp_slope_ratio(self.exponent) if v != 0.0 else 0.0
        object.__setattr__(self, "_ramp_v", v)
        object.__setattr__(self, "_ramp_t", t)

    def psi(self, r):
        rr = _as_array(r)
        out = np.empty_like(rr)
        far = rr >= self.r0
        out[far] = self.amplitude * rr[far] ** self.exponent
        out[~far] = _ramp_value(self._ramp_v, self._ramp_t, self.r0, rr[~far])
        return _scalar_or_array(out, r)

    def psi_integral(self, r):
        rr = _as_array(r)
        out = np.empty_like(rr)
        far = rr >= self.r0
        out[~far] = _ramp_integral(self._ramp_v, self._ramp_t, self.r0, rr[~far])
        base = _ramp_integral(self._ramp_v, self._ramp_t, self.r0, self.r0)
        if self.exponent == -1.0:
            out[far] = base + self.amplitude * np.log(rr[far] / self.r0)
        else:
            g = self.exponent + 1.0
            out[far] = base + self.amplitude / g * (rr[far] ** g - self.r0**g)
        return _scalar_or_array(out, r)

    @property
    def nonnegative(self) -> bool:
        return self.amplitude >= 0

    @property
    def nonpositive(self) -> bool:
        return self.amplitude <= 0


@dataclass(frozen=True)
class LogCorrected(DriftProfile):
    """psi(r) = (n_dim + alpha/log r) / r for r >= r0 > 1, cubic ramp below r0.

    The averaged growth (1/log r) int_0^r psi tends to n_dim exactly, so this
    family sits on the classifier's critical line for ambient dimension n_dim.
    """

    n_dim: int
    alpha: float
    r0: float = math.e
    _ramp_v: float = field(init=False, repr=False, compare=False)
    _ramp_t: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.r0 <= 1.0:
            raise ValueError(f"activation radius must exceed 1, got {self.r0}")
        if self.n_dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n_dim}")
        L = math.log(self.r0)
        v = (self.n_dim + self.alpha / L) / self.r0
        if v != 0.0:
            d = -(self.n_dim + self.alpha / L + self.alpha / L**2) / self.r0**2
            t = _clamp_slope_ratio(d * self.r0 / v)
        else:
            t = 0.0
        object.__setattr__(self, "_ramp_v", v)
        object.__setattr__(self, "_ramp_t", t)

    def psi(self, r):
        rr = _as_array(r)
        out = np.empty_like(rr)
        far = rr >= self.r0
        rf = rr[far]
        out[far] = (self.n_dim + self.alpha / np.log(rf)) / rf
        out[~far] = _ramp_value(self._ramp_v, self._ramp_t, self.r0, rr[~far])
        return _scalar_or_array(out, r)

    def psi_integral(self, r):
        rr = _as_array(r)
        out = np.empty_like(rr)
        far = rr >= self.r0
        out[~far] = _ramp_integral(self._ramp_v, self._ramp_t, self.r0, rr[~far])
        base = _ramp_integral(self._ramp_v, self._ramp_t, self.r0, self.r0)
        rf = rr[far]
        L0 = math.log(self.r0)
        out[far] = base + self.n_dim * np.log(rf / self.r0) + self.alpha * np.log(np.log(rf) / L0)
        return _scalar_or_array(out, r)

    @property
    def nonnegative(self) -> bool:
        return self.alpha >= 0


@dataclass(frozen=True)
class Linear(DriftProfile):
    """psi(r) = r.  Unbounded model drift with a fully closed-form solution."""

    def psi(self, r):
        rr = _as_array(r)
        return _scalar_or_array(rr.copy(), r)

    def psi_integral(self, r):
        rr = _as_array(r)
        return _scalar_or_array(0.5 * rr * rr, r)

    @property
    def nonnegative(self) -> bool:
        return True


@dataclass(frozen=True)
class Zero(DriftProfile):
    """psi identically zero: pure heat flow."""

    def psi(self, r):
        rr = _as_array(r)
        return _scalar_or_array(np.zeros_like(rr), r)

    def psi_integral(self, r):
        rr = _as_array(r)
        return _scalar_or_array(np.zeros_like(rr), r)

    @property
    def nonnegative(self) -> bool:
        return True

    @property
    def nonpositive(self) -> bool:
        return True


class Tabulated(DriftProfile):
    """Sampled psi with linear interpolation between strictly increasing radii.

    Samples must start at (0, 0); queries outside the sampled range raise
    ProfileRangeError rather than extrapolating.
    """

    __slots__ = ("radii", "speeds")

    def __init__(self, radii, speeds):
        r = np.array(radii, dtype=float)
        p = np.array(speeds, dtype=float)
        if r.ndim != 1 or r.shape != p.shape or len(r) < 2:
            raise ValueError("need matching 1-d sample arrays with at least 2 points")
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(p))):
            raise ValueError("samples must be finite")
        if np.any(np.diff(r) <= 0):
            raise ValueError("sample radii must be strictly increasing")
        if r[0] != 0.0 or p[0] != 0.0:
            raise ValueError("samples must start at r=0 with psi(0)=0")
        r.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "speeds", p)

    def __setattr__(self, name, value):
        raise AttributeError("Tabulated profile is immutable")

    def __repr__(self):
        return f"Tabulated({len(self.radii)} samples on [0, {self.radii[-1]}])"

    def __eq__(self, other):
        return (
            isinstance(other, Tabulated)
            and np.array_equal(self.radii, other.radii)
            and np.array_equal(self.speeds, other.speeds)
        )

    def _check_range(self, rr):
        if np.any(rr > self.radii[-1] * (1 + 1e-12) + 1e-300):
            raise ProfileRangeError(
                f"query radius beyond sampled range [0, {self.radii[-1]}]"
            )

    def psi(self, r):
        rr = _as_array(r)
        self._check_range(rr)
        return _scalar_or_array(np.interp(rr, self.radii, self.speeds), r)

    def psi_integral(self, r):
        rr = _as_array(r)
        self._check_range(rr)
        seg = 0.5 * (self.speeds[1:] + self.speeds[:-1]) * np.diff(self.radii)
        cum = np.concatenate(([0.0], np.cumsum(seg)))
        k = np.clip(np.searchsorted(self.radii, rr, side="right") - 1, 0, len(self.radii) - 2)
        pr = np.interp(rr, self.radii, self.speeds)
        out = cum[k] + 0.5 * (self.speeds[k] + pr) * (rr - self.radii[k])
        return _scalar_or_array(out, r)

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self.speeds >= 0))

    @property
    def nonpositive(self) -> bool:
        return bool(np.all(self.speeds <= 0))

    def positive_part(self) -> "Tabulated":
        """Piecewise-linear max(psi, 0), with zero crossings made explicit."""
        r, p = list(self.radii), list(self.speeds)
        out_r, out_p = [r[0]], [max(p[0], 0.0)]
        for k in range(len(r) - 1):
            if p[k] * p[k + 1] < 0:
                cross = r[k] + (0.0 - p[k]) * (r[k + 1] - r[k]) / (p[k + 1] - p[k])
                out_r.append(cross)
                out_p.append(0.0)
            out_r.append(r[k + 1])
            out_p.append(max(p[k + 1], 0.0))
        return Tabulated(out_r, out_p)


def eval_psi(profile: DriftProfile, r):
    """Drift speed psi(r) of the given profile; scalar in, scalar out."""
    return profile.psi(r)
