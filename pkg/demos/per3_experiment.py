"""Renormalize the (8, 10, 12) tuned center and watch the inner classes approach -1.75."""
from renormlab.experiment import ExperimentConfig, run_per3

rep = run_per3(ExperimentConfig((8, 10, 12), 3, 0.02))
for row in rep.rows:
    print(f"stage {row['stage']}  period {row['period']:4d}  midpoint {row['midpoint']}  agreement {row['agreement']}")
print(rep.verdict, rep.reason)
