"""
Two-layer power-law fits of wall-scaled profiles and the effective
Reynolds number implied by the wall-layer scaling law.

All regressions are ordinary least squares of ln(phi) on ln(eta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profile import DomainError, WallScaledProfile

__all__ = [
    "PowerLawFit",
    "TwoLayerFit",
    "EffectiveReResult",
    "fit_power_law",
    "detect_interface",
    "re_from_exponent",
    "re_from_coefficient",
    "reconcile_re",
    "length_scale",
    "MIN_SEGMENT",
    "DEFAULT_TOL_LN",
    "DEFAULT_ETA_MIN",
]

MIN_SEGMENT = 5
DEFAULT_TOL_LN = 0.1
DEFAULT_ETA_MIN = 30.0
ALPHA_MAX = 1.5


@dataclass(frozen=True)
class PowerLawFit:
    """phi = coeff * eta**exponent over the inclusive index range (start, stop)."""

    coeff: float
    exponent: float
    index_range: tuple[int, int]
    sse: float
    r2: float

    @property
    def n(self):
        return self.index_range[1] - self.index_range[0] + 1

    def __call__(self, eta):
        return self.coeff * np.asarray(eta, dtype=float) ** self.exponent


@dataclass(frozen=True)
class TwoLayerFit:
    inner: PowerLawFit
    outer: PowerLawFit
    eta_break: float
    total_sse: float
    # wall-layer thickness in metres; None without nu/u_tau context
    lam: float | None = None


@dataclass(frozen=True)
class EffectiveReResult:
    re_from_alpha: float
    re_from_A: float
    re_eff: float
    ln_discrepancy: float
    consistent: bool
    tol_ln: float
    length_scale: float | None = None


def _ols(x, z):
    """Slope, intercept, sse and r2 of z on x."""
    xm = x.mean()
    zm = z.mean()
    dx = x - xm
    dz = z - zm
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("degenerate range: all eta values are equal")
    slope = float(dx @ dz) / sxx
    intercept = zm - slope * xm
    resid = z - (intercept + slope * x)
    sse = float(resid @ resid)
    szz = float(dz @ dz)
    if szz == 0.0:
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - sse / szz))
    return slope, intercept, sse, r2


def fit_power_law(w: WallScaledProfile, index_range=None) -> PowerLawFit:
    """
    Fit phi = coeff * eta**exponent on an inclusive index range.

    Parameters
    ----------
    w : WallScaledProfile
    index_range : (start, stop), optional
        inclusive point indices; defaults to the whole profile

    Returns
    -------
    PowerLawFit with sse and r2 measured in (ln eta, ln phi) space
    """
    if index_range is None:
        index_range = (0, len(w) - 1)
    start, stop = (int(i) for i in index_range)
    if start < 0 or stop >= len(w):
        raise IndexError(f"index range {index_range} outside profile of {len(w)} points")
    if stop - start + 1 < MIN_SEGMENT:
        raise ValueError(f"range must cover at least {MIN_SEGMENT} points, got {index_range}")
    x = np.log(w.eta[start:stop + 1])
    z = np.log(w.phi[start:stop + 1])
    slope, intercept, sse, r2 = _ols(x, z)
    return PowerLawFit(math.exp(intercept), slope, (start, stop), sse, r2)


def detect_interface(w: WallScaledProfile, min_seg: int = MIN_SEGMENT,
                     nu: float | None = None, u_tau: float | None = None) -> TwoLayerFit:
    """
    Locate the sharp interface between two power-law regions.

    Every split k with min_seg <= k <= n - min_seg is tried: the inner
    segment takes points [0, k-1] and the outer segment [k, n-1].  The
    split with the smallest combined sse wins, the smaller k on ties.  The
    interface sits at the geometric mean of the two boundary points.
    """
    n = len(w)
    if min_seg < MIN_SEGMENT:
        raise ValueError(f"min_seg must be at least {MIN_SEGMENT}, got {min_seg}")
    if n < 2 * min_seg:
        raise ValueError(f"need at least {2 * min_seg} points for min_seg={min_seg}, got {n}")
    best = None
    for k in range(min_seg, n - min_seg + 1):
        inner = fit_power_law(w, (0, k - 1))
        outer = fit_power_law(w, (k, n - 1))
        total = inner.sse + outer.sse
        if best is None or total < best[0]:
            best = (total, k, inner, outer)
    total, k, inner, outer = best
    eta_break = math.sqrt(w.eta[k - 1] * w.eta[k])
    lam = None
    if nu is not None and u_tau is not None:
        lam = nu * eta_break / u_tau
    return TwoLayerFit(inner, outer, eta_break, total, lam)


def re_from_exponent(alpha: float) -> float:
    """Invert alpha = 3/(2 ln Re)."""
    if not 0 < alpha < ALPHA_MAX:
        raise DomainError(f"exponent must lie in (0, {ALPHA_MAX}), got {alpha!r}")
    return math.exp(1.5 / alpha)


def re_from_coefficient(A: float) -> float:
    """Invert A = ln(Re)/sqrt(3) + 5/2."""
    if not A > 2.5:
        raise DomainError(f"coefficient must exceed 5/2, got {A!r}")
    return math.exp(math.sqrt(3.0) * (A - 2.5))


def reconcile_re(re_a: float, re_b: float, tol_ln: float = DEFAULT_TOL_LN) -> EffectiveReResult:
    """Geometric mean of two Re estimates, flagged consistent when |d ln Re| <= tol_ln."""
    if not (re_a > 1 and re_b > 1):
        raise DomainError(f"Reynolds numbers must exceed 1, got {re_a!r}, {re_b!r}")
    if not tol_ln > 0:
        raise DomainError(f"tolerance must be positive, got {tol_ln!r}")
    la, lb = math.log(re_a), math.log(re_b)
    disc = abs(la - lb)
    return EffectiveReResult(re_from_alpha=re_a, re_from_A=re_b,
                             re_eff=math.exp(0.5 * (la + lb)), ln_discrepancy=disc,
                             consistent=disc <= tol_ln, tol_ln=tol_ln)


def length_scale(re_eff: float, U: float, nu: float) -> float:
    """Characteristic length Lambda = Re * nu / U."""
    if not (re_eff > 0 and U > 0 and nu > 0):
        raise DomainError("re_eff, U and nu must all be positive")
    return re_eff * nu / U
