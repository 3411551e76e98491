"""
Skin-friction drag laws.

    pipe, exact        c   = 8 / Psi(alpha)**(2/(1+alpha)),  alpha = 3/(2 ln Re)
    pipe, asymptotic   c   = 6 / (e**3 ln(Re)**2)
    boundary layer     cf' = C / ln(Re)**2            (C = 0.26)
    Langley            cf' = 0.0097 Re_theta**-0.144  (fitted on 3e4 .. 6e5)

with

    Psi(alpha) = e**1.5 (sqrt(3) + 5 alpha) / (2**alpha alpha (1+alpha) (2+alpha))

Both pipe forms are kept exactly as printed.  Note that the small-alpha
limit of Psi above gives c ln(Re)**2 -> 24/e**3, four times the asymptotic
constant; `exact_to_asymptotic_limit` exposes that ratio.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profile import DomainError

__all__ = [
    "BL_CONSTANT",
    "PIPE_ASYMPTOTIC_CONSTANT",
    "LANGLEY_G",
    "LANGLEY_GAMMA",
    "LANGLEY_RANGE",
    "LogSquare",
    "PowerLaw",
    "PipeExact",
    "PipeAsymptotic",
    "LANGLEY",
    "ConstantFit",
    "psi",
    "pipe_drag_exact",
    "pipe_drag_asymptotic",
    "bl_drag_logsq",
    "bl_drag_langley",
    "fit_logsq_constant",
    "exact_to_asymptotic_limit",
]

BL_CONSTANT = 0.26
PIPE_ASYMPTOTIC_CONSTANT = 6.0 / math.e ** 3
LANGLEY_G = 0.0097
LANGLEY_GAMMA = 0.144
LANGLEY_RANGE = (3e4, 6e5)


def psi(alpha: float) -> float:
    """Pipe-flow drag transfer function Psi(alpha)."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return (math.exp(1.5) * (math.sqrt(3.0) + 5.0 * alpha)
            / (2.0 ** alpha * alpha * (1.0 + alpha) * (2.0 + alpha)))


def pipe_drag_exact(Re: float) -> float:
    if not Re > 1:
        raise DomainError(f"Re must exceed 1, got {Re!r}")
    alpha = 1.5 / math.log(Re)
    return 8.0 / psi(alpha) ** (2.0 / (1.0 + alpha))


def _check_ln_re(Re):
    if not Re > math.e:
        raise DomainError(f"Re must exceed e (ln Re > 1), got {Re!r}")


def pipe_drag_asymptotic(Re: float) -> float:
    _check_ln_re(Re)
    return PIPE_ASYMPTOTIC_CONSTANT / math.log(Re) ** 2


def bl_drag_logsq(Re: float, C: float = BL_CONSTANT) -> float:
    """Boundary-layer drag C / ln(Re)**2 at effective Reynolds number Re."""
    _check_ln_re(Re)
    if not C > 0:
        raise DomainError(f"constant must be positive, got {C!r}")
    return C / math.log(Re) ** 2


def bl_drag_langley(Re_theta: float) -> tuple[float, bool]:
    """
    Langley power law on the momentum-thickness Reynolds number.

    Values outside the calibration range are still returned; the flag says
    whether Re_theta was inside it.
    """
    if not Re_theta > 0:
        raise DomainError(f"Re_theta must be positive, got {Re_theta!r}")
    lo, hi = LANGLEY_RANGE
    return LANGLEY_G * Re_theta ** -LANGLEY_GAMMA, lo <= Re_theta <= hi


def exact_to_asymptotic_limit() -> float:
    """Limit of pipe_drag_exact / pipe_drag_asymptotic as Re -> infinity (= 4)."""
    limit_alpha_psi = math.exp(1.5) * math.sqrt(3.0) / 2.0
    # Psi ~ limit_alpha_psi * 2 ln(Re) / 3, so c ln(Re)**2 -> 8 * 9 / (4 limit**2)
    return 18.0 / limit_alpha_psi ** 2 / PIPE_ASYMPTOTIC_CONSTANT


# correlation descriptors -------------------------------------------------

@dataclass(frozen=True)
class LogSquare:
    C: float = BL_CONSTANT
    reynolds = "re_eff"
    tag = "logsq"

    def __post_init__(self):
        if not self.C > 0:
            raise DomainError(f"constant must be positive, got {self.C!r}")

    def __call__(self, Re):
        return bl_drag_logsq(Re, self.C)


@dataclass(frozen=True)
class PowerLaw:
    """cf = G * Re**-gamma; ``reynolds`` names the argument it is defined on."""

    G: float = LANGLEY_G
    gamma: float = LANGLEY_GAMMA
    reynolds: str = "re_theta"

    def __post_init__(self):
        if not self.G > 0:
            raise DomainError(f"prefactor must be positive, got {self.G!r}")
        if not 0 < self.gamma < 2:
            raise DomainError(f"exponent must lie in (0, 2), got {self.gamma!r}")
        if self.reynolds not in ("re_eff", "re_theta"):
            raise ValueError(f"unknown Reynolds argument {self.reynolds!r}")

    @property
    def tag(self):
        if (self.G, self.gamma, self.reynolds) == (LANGLEY_G, LANGLEY_GAMMA, "re_theta"):
            return "langley"
        return "power"

    def __call__(self, Re):
        if not Re > 0:
            raise DomainError(f"Reynolds number must be positive, got {Re!r}")
        return self.G * Re ** -self.gamma


@dataclass(frozen=True)
class PipeExact:
    reynolds = "re_eff"
    tag = "pipe_exact"

    def __call__(self, Re):
        return pipe_drag_exact(Re)


@dataclass(frozen=True)
class PipeAsymptotic:
    reynolds = "re_eff"
    tag = "pipe_asym"

    def __call__(self, Re):
        return pipe_drag_asymptotic(Re)


LANGLEY = PowerLaw()


@dataclass(frozen=True)
class ConstantFit:
    C: float
    n: int
    rms_rel: float


def fit_logsq_constant(samples) -> ConstantFit:
    """
    Least-squares constant C in cf = C / ln(Re)**2.

    Residuals are taken in cf space, which gives the closed form
    C = sum(cf x) / sum(x**2) with x = 1/ln(Re)**2.

    Parameters
    ----------
    samples : iterable of (Re, cf) pairs, at least 3
    """
    data = np.asarray(list(samples), dtype=float)
    if data.size == 0:
        raise ValueError("no samples")
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("samples must be (Re, cf) pairs")
    if data.shape[0] < 3:
        raise ValueError(f"need at least 3 samples, got {data.shape[0]}")
    re, cf = data[:, 0], data[:, 1]
    if not np.all(re > math.e):
        raise DomainError("every Re must exceed e")
    if not np.all(cf > 0):
        raise DomainError("every cf must be positive")
    x = 1.0 / np.log(re) ** 2
    C = float(cf @ x / (x @ x))
    rel = cf / (C * x) - 1.0
    return ConstantFit(C, int(re.size), float(np.sqrt(np.mean(rel ** 2))))
