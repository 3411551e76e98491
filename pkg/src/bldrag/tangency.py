"""
Tangent power-law approximation of the inverse-log-square law.

Matching 1/ln(x)**2 and G x**-gamma in value and slope at x0 gives

    gamma = 2 / ln(x0)        G = x0**gamma / ln(x0)**2

so a log-square correlation C/ln(Re)**2 looks locally like the power law
(C G) Re**-gamma, and a power law with exponent gamma is tangent to some
log-square law at x0 = exp(2/gamma).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import PowerLaw
from .profile import DomainError

__all__ = [
    "TangencyMap",
    "tangency_map",
    "logsq_to_power",
    "power_to_logsq",
    "approximation_error",
]


@dataclass(frozen=True)
class TangencyMap:
    x0: float
    gamma: float
    G: float

    def power(self, x):
        return self.G * np.asarray(x, dtype=float) ** -self.gamma

    def power_slope(self, x):
        return -self.gamma * self.G * np.asarray(x, dtype=float) ** (-self.gamma - 1.0)


def tangency_map(x0: float) -> TangencyMap:
    if not x0 > math.e:
        raise DomainError(f"tangency point must exceed e, got {x0!r}")
    L = math.log(x0)
    gamma = 2.0 / L
    return TangencyMap(x0, gamma, x0 ** gamma / L ** 2)


def logsq_to_power(x0: float, C: float = 1.0, reynolds: str = "re_eff") -> PowerLaw:
    """Power law (C G) x**-gamma tangent to C/ln(x)**2 at x0."""
    if not C > 0:
        raise DomainError(f"constant must be positive, got {C!r}")
    t = tangency_map(x0)
    return PowerLaw(C * t.G, t.gamma, reynolds)


def power_to_logsq(gamma: float) -> float:
    """Tangency abscissa x0 = exp(2/gamma) for a power-law exponent."""
    if not 0 < gamma <= 2:
        raise DomainError(f"exponent must lie in (0, 2], got {gamma!r}")
    return math.exp(2.0 / gamma)


def approximation_error(C, x0, x_lo, x_hi, n_grid=1001):
    """
    Largest relative gap between C/ln(x)**2 and its tangent power law.

    Evaluated on n_grid log-uniform points spanning [x_lo, x_hi], which
    must bracket x0.  The constant C cancels out of the relative gap; it is
    kept so callers can pass the correlation they are studying.
    """
    if not (math.e < x_lo <= x0 <= x_hi):
        raise ValueError(f"need e < x_lo <= x0 <= x_hi, got {x_lo!r}, {x0!r}, {x_hi!r}")
    if n_grid < 2 and x_lo != x_hi:
        raise ValueError("n_grid must be at least 2")
    law = logsq_to_power(x0, C)
    lx = np.linspace(math.log(x_lo), math.log(x_hi), max(int(n_grid), 1))
    exact = C / lx ** 2
    approx = law.G * np.exp(-law.gamma * lx)
    return float(np.max(np.abs(approx - exact) / exact))
