"""Profile reduction: wall scaling through to drag predictions."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .comparison import prediction_columns
from .correlations import LANGLEY, LANGLEY_RANGE, LogSquare
from .profile import (
    VelocityProfile,
    WallScaledProfile,
    drag_coefficient,
    momentum_thickness,
    wall_scale,
)
from .scaling import (
    ALPHA_MAX,
    DEFAULT_ETA_MIN,
    DEFAULT_TOL_LN,
    MIN_SEGMENT,
    EffectiveReResult,
    TwoLayerFit,
    detect_interface,
    length_scale,
    re_from_coefficient,
    re_from_exponent,
    reconcile_re,
)

__all__ = ["ProfileAnalysis", "analyze_profile", "DEFAULT_CORRELATIONS"]

DEFAULT_CORRELATIONS = (LogSquare(), LANGLEY)


@dataclass(frozen=True)
class ProfileAnalysis:
    profile: VelocityProfile
    scaled: WallScaledProfile
    fit: TwoLayerFit
    effective: EffectiveReResult
    theta: float
    re_theta: float
    cf: float
    predictions: dict = field(default_factory=dict)
    warnings: tuple = ()


def analyze_profile(p: VelocityProfile, eta_min=DEFAULT_ETA_MIN, min_seg=MIN_SEGMENT,
                    tol_ln=DEFAULT_TOL_LN, corrs=DEFAULT_CORRELATIONS) -> ProfileAnalysis:
    """
    Reduce one measured profile.

    Points below ``eta_min`` (the viscous sublayer) are left out of the
    power-law fits; the effective Reynolds number comes from the inner
    segment's coefficient and exponent.  Momentum thickness uses every
    measured point.
    """
    warnings = []
    scaled = wall_scale(p).select(eta_min=eta_min)
    if len(scaled) < 2 * min_seg:
        raise ValueError(f"only {len(scaled)} points with eta >= {eta_min}; "
                         f"need {2 * min_seg}")
    fit = detect_interface(scaled, min_seg, nu=p.nu, u_tau=p.u_tau)
    alpha, A = fit.inner.exponent, fit.inner.coeff
    if alpha > 0.5 * ALPHA_MAX:
        warnings.append(f"inner exponent {alpha:.4g} is implausibly large")
    res = reconcile_re(re_from_exponent(alpha), re_from_coefficient(A), tol_ln)
    lam = length_scale(res.re_eff, p.U_inf, p.nu)
    res = replace(res, length_scale=lam)
    if not res.consistent:
        warnings.append(f"Re estimates disagree: |d ln Re| = {res.ln_discrepancy:.4g} "
                        f"> {tol_ln:g}")
    theta, re_theta = momentum_thickness(p)
    cf = drag_coefficient(p.u_tau, p.U_inf)

    predictions = {}
    for name, corr in zip(prediction_columns(corrs), corrs):
        arg = res.re_eff if corr.reynolds == "re_eff" else re_theta
        predictions[name] = corr(arg)
        if corr == LANGLEY:
            lo, hi = LANGLEY_RANGE
            if not lo <= re_theta <= hi:
                warnings.append(f"Re_theta = {re_theta:.4g} outside the Langley range "
                                f"[{lo:g}, {hi:g}]")
    return ProfileAnalysis(p, scaled, fit, res, theta, re_theta, cf, predictions,
                           tuple(warnings))
