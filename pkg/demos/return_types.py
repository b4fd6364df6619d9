"""Return-type sequence of sigma3_n read off the principal nest at c_n."""
import sys

from renormlab import build_nest, detect_cascades, return_type_sequence
from renormlab.solver import solve_sigma3_center

n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
c = float(solve_sigma3_center(n).c)
nest = build_nest(c, 3 * n + 2)
seq = return_type_sequence(nest)
print(seq.to_text())
for casc in detect_cascades(nest):
    print(f"cascade {casc.start}..{casc.end}: {casc.kind}, neglectable levels {casc.neglectable}")
print("essential period", seq.essential_period())
