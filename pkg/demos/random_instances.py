"""
Cross-checking on random instances
==================================

The equivalent formulations of representability are decided by different
linear programs.  The suite runs them side by side on generated spaces and
flags any disagreement together with the instance that caused it.
"""

from ordrep import generate_instance, run_suite, serialize_instance
from ordrep import lp

###############################################################################
# A generated instance is plain JSON with rationals as strings.
print(serialize_instance(generate_instance(7)))

###############################################################################
# Run the suite on a handful of seeds, recording every LP that gets solved.
with lp.recording() as log:
    report = run_suite([generate_instance(seed) for seed in range(8)])
print("verdict:", report.verdict)
for inst in report.instances:
    flags = [("holds" if all(a["criteria"].values()) else "fails") for a in inst["alphas"]]
    print(f"  {inst['name']:<14} {flags}")

###############################################################################
# Each outcome carries a certificate that is re-checked by arithmetic alone.
print(len(log), "LPs solved;", sum(lp.verify_certificate(p, o) for p, o in log), "certificates verified")
