"""Centers of the sigma3_n copies, their essential periods and the limit -1.75."""
from renormlab import centers_sigma3, essential_period, root_of_copy, sigma3_n, validate_shuffle

root = float(root_of_copy(validate_shuffle((3, 1, 2))).c)
print(f"root of the period-3 copy: {root:.12f}")
print(" n  period  c_n                 c_n - root   p_e")
for n, sol in centers_sigma3(12):
    print(f"{n:2d}  {sol.period:6d}  {float(sol.c):.15f}  {float(sol.c) - root:.3e}   {essential_period(sigma3_n(n))}")
