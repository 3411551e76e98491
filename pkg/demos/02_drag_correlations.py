"""Compare the drag laws across a range of Reynolds numbers.

Pipe and boundary-layer correlations are evaluated side by side.  The last
block fits the log-square constant to a synthetic scatter of drag data.
"""
import numpy as np

from bldrag import synth_dragset
from bldrag.correlations import (
    PIPE_ASYMPTOTIC_CONSTANT,
    bl_drag_langley,
    bl_drag_logsq,
    fit_logsq_constant,
    pipe_drag_asymptotic,
    pipe_drag_exact,
)

print(f"pipe asymptotic constant 6/e^3 = {PIPE_ASYMPTOTIC_CONSTANT:.6f}\n")
print(f"{'Re':>10} {'pipe exact':>12} {'pipe asym':>12} {'0.26/ln^2':>12}")
for re in np.geomspace(1e4, 1e10, 7):
    print(f"{re:10.3g} {pipe_drag_exact(re):12.6f} {pipe_drag_asymptotic(re):12.6f} "
          f"{bl_drag_logsq(re):12.6f}")

print(f"\n{'Re_theta':>10} {'Langley':>10}  calibrated")
for rt in (1e4, 3e4, 1e5, 6e5, 1e6):
    cf, ok = bl_drag_langley(rt)
    print(f"{rt:10.3g} {cf:10.6f}  {'yes' if ok else 'no'}")

samples = synth_dragset(C=0.26, n=40, noise_rel=0.03, seed=7)
fit = fit_logsq_constant([(s.re_eff, s.cf) for s in samples])
print(f"\nfitted C = {fit.C:.4f} from {fit.n} noisy samples (rms rel {fit.rms_rel:.4f})")
