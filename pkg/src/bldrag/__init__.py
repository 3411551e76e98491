"""Turbulent boundary-layer drag: scaling-law fits, effective Reynolds
number and skin-friction correlations."""

__version__ = "0.1.0"

from .profile import (
    DomainError,
    ProfileError,
    VelocityProfile,
    WallScaledProfile,
    drag_coefficient,
    momentum_thickness,
    synth_profile,
    synth_wall_profile,
    wall_scale,
)
from .scaling import (
    EffectiveReResult,
    PowerLawFit,
    TwoLayerFit,
    detect_interface,
    fit_power_law,
    length_scale,
    re_from_coefficient,
    re_from_exponent,
    reconcile_re,
)
from .correlations import (
    LANGLEY,
    ConstantFit,
    LogSquare,
    PipeAsymptotic,
    PipeExact,
    PowerLaw,
    bl_drag_langley,
    bl_drag_logsq,
    fit_logsq_constant,
    pipe_drag_asymptotic,
    pipe_drag_exact,
    psi,
)
from .tangency import (
    TangencyMap,
    approximation_error,
    logsq_to_power,
    power_to_logsq,
    tangency_map,
)
from .comparison import (
    ComparisonReport,
    DragSample,
    evaluate,
    figure_table,
    lambda_theta_table,
    sign_test,
    synth_dragset,
)
from .pipeline import analyze_profile
