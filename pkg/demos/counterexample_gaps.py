"""
Why the density hypothesis matters
==================================

Equal expected utility of two convex-ordered laws forces them to coincide
only if the curvature of the utility has a density everywhere. A kinked
utility is blind to any change that leaves the stop-loss transform at the
kink untouched.
"""

from stochorder.convexfn import cfn_quadratic
from stochorder.distortion import DualPowerDistortion
from stochorder.theorems import gap_counterexample, verify_distortion_theorem, verify_utility_theorem

for kind in ("utility-gap", "distortion-gap"):
    b = gap_counterexample(kind)
    print(f"--- {kind}")
    print(b.description)
    for k, v in b.recheck().items():
        print(f"  {k:16} {v}")
    print("  certified:", b.certify())

# Replace the kinked functional by one whose curvature has a density and
# the gap opens up.
b = gap_counterexample("utility-gap")
rep = verify_utility_theorem(b.y1, b.y2, cfn_quadratic(-2, 1))
print("x^2:", rep.margins["value_1"], "vs", rep.margins["value_2"], "| notes:", rep.notes)
rep = verify_distortion_theorem(b.y1, b.y2, DualPowerDistortion(2.0))
print("dual power:", rep.margins["value_1"], "vs", rep.margins["value_2"], "| notes:", rep.notes)
