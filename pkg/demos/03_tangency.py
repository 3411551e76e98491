"""Replace the log-square law with a power law that touches it at one point.

Around the tangency point x0 the power law matches both value and slope.
Away from x0 the two drift apart, and the worst relative gap grows with the
width of the interval.
"""
import math

from bldrag.tangency import approximation_error, logsq_to_power, power_to_logsq

for x0 in (1e4, 1e6, 1e8):
    law = logsq_to_power(x0, C=0.26)
    print(f"x0={x0:8.0e}: cf ~ {law.G:.5f} * Re^-{law.gamma:.5f}")

x0 = 1e6
print(f"\nworst relative gap around x0 = {x0:.0e}")
for decades in (0.5, 1, 2, 3):
    lo, hi = x0 / 10 ** decades, x0 * 10 ** decades
    err = approximation_error(0.26, x0, lo, hi)
    print(f"  +/- {decades:<3} decades: {err:.4f}")

gamma = 0.144
print(f"\na power law with exponent {gamma} is tangent at Re = {power_to_logsq(gamma):.4g}")
print(f"(ln of that point is {math.log(power_to_logsq(gamma)):.3f})")
