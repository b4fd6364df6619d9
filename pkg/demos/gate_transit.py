"""Transit through the gate of z^2 + 1/4 + eps and the phase at -1.75 + eps."""
import math

from renormlab import douady_chart

for eps in (1e-3, 1e-4, 1e-5, 1e-6):
    ch = douady_chart(0.25 + eps, 1)
    print(f"eps={eps:.0e}  transit {ch.transit_time:10.3f}  pi/sqrt(eps) {math.pi / math.sqrt(eps):10.3f}  phase {ch.phase:.4f}")
for eps in (1e-4, 1e-5):
    ch = douady_chart(-1.75 + eps, 3)
    print(f"-1.75+{eps:.0e}  transit {ch.transit_time:9.3f}  index {ch.holomorphic_index.real:+.5f}")
