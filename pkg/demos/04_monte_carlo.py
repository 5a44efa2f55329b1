"""
Checking analytic credences by simulation
=========================================

Each sampling mode is the frequency counterpart of one rule. Runs are
deterministic in the seed and can be split across workers.
"""

import math

from selfloc import EvidenceQuery, builtin_scenario, credence, format_rational, run
from selfloc.simulation import MODE_RULE

s = builtin_scenario("two-coins")
q = EvidenceQuery(1, "seeH")

# %%
for mode, rule in MODE_RULE.items():
    v = credence(s, rule, q, "same")
    rep = run(s, mode, q, "same", trials=200_000, seed=42, analytic=v, workers=2)
    bound = 4 * math.sqrt(float(v) * (1 - float(v)) / rep.denominator_count)
    print(f"{mode.value:>13} vs {rule:<9} estimate {rep.estimate:.6f}"
          f"  analytic {format_rational(v)}  |err| {rep.abs_error:.6f} <= {bound:.6f}")
