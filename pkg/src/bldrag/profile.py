"""
Boundary-layer velocity profiles in dimensional and wall units.

A measured profile is a set of (y, u) pairs together with the kinematic
viscosity ``nu``, the free-stream velocity ``U_inf`` and the friction
velocity ``u_tau``.  Wall units are

    eta = u_tau * y / nu        phi = u / u_tau

The synthetic generator follows the wall-layer scaling law

    phi = (ln(Re)/sqrt(3) + 5/2) * eta**(3 / (2 ln(Re)))
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ProfileError",
    "DomainError",
    "VelocityProfile",
    "WallScaledProfile",
    "wall_scale",
    "drag_coefficient",
    "momentum_thickness",
    "scaling_law_coefficient",
    "scaling_law_exponent",
    "synth_profile",
    "synth_wall_profile",
    "MIN_POINTS",
]

MIN_POINTS = 10
U_SLACK = 1.2


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined."""


class ProfileError(ValueError):
    """Profile data violates a structural invariant."""

    def __init__(self, message, index=None):
        if index is not None:
            message = f"{message} (point index {index})"
        super().__init__(message)
        self.index = index


def _frozen(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def _first_bad(mask):
    return int(np.flatnonzero(mask)[0])


@dataclass(frozen=True, eq=False)
class VelocityProfile:
    """Measured mean-velocity profile in SI units."""

    name: str
    nu: float
    U_inf: float
    u_tau: float
    y: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "y", _frozen(self.y))
        object.__setattr__(self, "u", _frozen(self.u))
        for key in ("nu", "U_inf", "u_tau"):
            val = getattr(self, key)
            if not (math.isfinite(val) and val > 0):
                raise ProfileError(f"{key} must be finite and positive, got {val!r}")
        y, u = self.y, self.u
        if y.ndim != 1 or y.shape != u.shape:
            raise ProfileError("y and u must be 1-d arrays of equal length")
        if y.size < MIN_POINTS:
            raise ProfileError(f"need at least {MIN_POINTS} points, got {y.size}")
        bad = ~(np.isfinite(y) & np.isfinite(u))
        if bad.any():
            raise ProfileError("non-finite value", _first_bad(bad))
        if y[0] <= 0:
            raise ProfileError(f"y must be positive, got {y[0]!r}", 0)
        dy = np.diff(y)
        if (dy <= 0).any():
            raise ProfileError("y must be strictly increasing", _first_bad(dy <= 0) + 1)
        bad = (u < 0) | (u > U_SLACK * self.U_inf)
        if bad.any():
            i = _first_bad(bad)
            raise ProfileError(f"u = {u[i]!r} outside [0, {U_SLACK} U_inf]", i)

    def __len__(self):
        return self.y.size

    def __eq__(self, other):
        if not isinstance(other, VelocityProfile):
            return NotImplemented
        return (
            self.name == other.name
            and self.nu == other.nu
            and self.U_inf == other.U_inf
            and self.u_tau == other.u_tau
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.u, other.u)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class WallScaledProfile:
    """Profile in wall units (eta, phi)."""

    eta: np.ndarray
    phi: np.ndarray
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "eta", _frozen(self.eta))
        object.__setattr__(self, "phi", _frozen(self.phi))
        eta, phi = self.eta, self.phi
        if eta.ndim != 1 or eta.shape != phi.shape:
            raise ProfileError("eta and phi must be 1-d arrays of equal length")
        bad = ~(np.isfinite(eta) & np.isfinite(phi))
        if bad.any():
            raise ProfileError("non-finite value", _first_bad(bad))
        bad = (eta <= 0) | (phi <= 0)
        if bad.any():
            raise ProfileError("eta and phi must be positive", _first_bad(bad))
        if eta.size > 1 and (np.diff(eta) <= 0).any():
            raise ProfileError("eta must be strictly increasing",
                               _first_bad(np.diff(eta) <= 0) + 1)

    def __len__(self):
        return self.eta.size

    def select(self, eta_min=None, eta_max=None):
        """Return the sub-profile with eta_min <= eta <= eta_max."""
        keep = np.ones(self.eta.size, dtype=bool)
        if eta_min is not None:
            keep &= self.eta >= eta_min
        if eta_max is not None:
            keep &= self.eta <= eta_max
        return WallScaledProfile(self.eta[keep], self.phi[keep], self.source)


def wall_scale(p: VelocityProfile) -> WallScaledProfile:
    """Convert a dimensional profile to wall units, preserving order."""
    for arr in (p.y, p.u):
        bad = ~np.isfinite(arr)
        if bad.any():
            raise ProfileError("non-finite value", _first_bad(bad))
    eta = p.u_tau * p.y / p.nu
    phi = p.u / p.u_tau
    return WallScaledProfile(eta, phi, p.name)


def drag_coefficient(u_tau: float, U: float) -> float:
    """Skin-friction coefficient ``2 u_tau**2 / U**2``."""
    if not U > 0:
        raise DomainError(f"free-stream velocity must be positive, got {U!r}")
    if u_tau < 0:
        raise DomainError(f"friction velocity must be non-negative, got {u_tau!r}")
    return 2.0 * (u_tau / U) ** 2


def momentum_thickness(p: VelocityProfile) -> tuple[float, float]:
    """
    Momentum thickness and the Reynolds number based on it.

    Trapezoidal quadrature of (u/U)(1 - u/U) over the measured range
    [y[0], y[-1]] only; nothing is extrapolated to the wall or the edge.

    Returns
    -------
    theta : float
        momentum thickness in metres
    re_theta : float
        U_inf * theta / nu
    """
    y = np.asarray(p.y, dtype=float)
    if y.size < 2:
        raise ProfileError("momentum thickness needs at least 2 points")
    r = np.asarray(p.u, dtype=float) / p.U_inf
    theta = float(np.trapezoid(r * (1.0 - r), y))
    return theta, p.U_inf * theta / p.nu


def _check_re(Re):
    if not Re > 1:
        raise DomainError(f"Re must exceed 1 (ln Re > 0), got {Re!r}")


def scaling_law_coefficient(Re: float) -> float:
    """Prefactor ln(Re)/sqrt(3) + 5/2 of the wall-layer scaling law."""
    _check_re(Re)
    return math.log(Re) / math.sqrt(3.0) + 2.5


def scaling_law_exponent(Re: float) -> float:
    """Exponent 3/(2 ln Re) of the wall-layer scaling law."""
    _check_re(Re)
    return 1.5 / math.log(Re)


def _rng(seed):
    # PCG64 is numpy's documented, platform-independent bit generator
    return np.random.Generator(np.random.PCG64(seed))


def _log_grid(lo, hi, n):
    return np.exp(np.linspace(math.log(lo), math.log(hi), n))


def synth_wall_profile(A, alpha, n=200, eta_lo=30.0, eta_hi=1000.0,
                       noise_rel=0.0, seed=0, eta_break=None, outer_exponent=None,
                       source="synthetic"):
    """
    Power-law profile phi = A * eta**alpha on a log-uniform eta grid.

    With ``eta_break`` and ``outer_exponent`` set, the profile continues
    above eta_break as B * eta**outer_exponent, with B chosen so the two
    laws meet at the break.  Noise is multiplicative, uniform in
    [-noise_rel, noise_rel].
    """
    if n < MIN_POINTS:
        raise DomainError(f"n must be at least {MIN_POINTS}, got {n}")
    if not 0 < eta_lo < eta_hi:
        raise DomainError(f"need 0 < eta_lo < eta_hi, got {eta_lo!r}, {eta_hi!r}")
    if noise_rel < 0:
        raise DomainError(f"noise_rel must be non-negative, got {noise_rel!r}")
    eta = _log_grid(eta_lo, eta_hi, n)
    phi = A * eta ** alpha
    if eta_break is not None:
        B = A * eta_break ** (alpha - outer_exponent)
        outer = eta > eta_break
        phi[outer] = B * eta[outer] ** outer_exponent
    if noise_rel > 0:
        phi = phi * (1.0 + _rng(seed).uniform(-noise_rel, noise_rel, n))
    return WallScaledProfile(eta, phi, source)


def synth_profile(Re: float, n: int = 200, eta_lo: float = 30.0,
                  eta_hi: float | None = None, noise_rel: float = 0.0, seed: int = 0,
                  U: float = 10.0, nu: float = 1.5e-5, C: float = 0.26,
                  name: str | None = None) -> VelocityProfile:
    """
    Dimensional profile following the wall-layer scaling law at ``Re``.

    The friction velocity is taken from the boundary-layer drag law,
    u_tau = U * sqrt(cf/2) with cf = C / ln(Re)**2, so a single Re fixes
    the whole profile.  Without ``eta_hi`` the grid ends where the
    noiseless profile reaches the free-stream velocity.
    """
    _check_re(Re)
    if U <= 0 or nu <= 0:
        raise DomainError("U and nu must be positive")
    A, alpha = scaling_law_coefficient(Re), scaling_law_exponent(Re)
    u_tau = U * math.sqrt(0.5 * C / math.log(Re) ** 2)
    if eta_hi is None:
        eta_hi = (U / (u_tau * A)) ** (1.0 / alpha)
    w = synth_wall_profile(A, alpha, n, eta_lo, eta_hi, noise_rel, seed)
    if name is None:
        name = f"synth_Re{Re:.6g}"
    return VelocityProfile(name=name, nu=nu, U_inf=U, u_tau=u_tau,
                           y=w.eta * nu / u_tau, u=w.phi * u_tau)
