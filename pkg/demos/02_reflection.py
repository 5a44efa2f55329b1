"""
Auditing Reflection
===================

Find the points where an agent following a rule can be sure of a credence
she does not hold yet, and grade each case by its structural flags.
"""

from selfloc import builtin_scenario, detect_violations, format_rational


def show(name, rule, event):
    report = detect_violations(builtin_scenario(name), rule, event)
    print(f"{rule} on {name}, event {event}:")
    if not report.violations:
        print("    none")
    for v in report.violations:
        flags = ", ".join(sorted(f.value for f in v.flags)) or "-"
        print(f"    {v.from_point} -> stage {v.to_stage}: "
              f"{format_rational(v.value_before)} -> {format_rational(v.value_after)}"
              f"  severity {v.severity} [{flags}]")


# %%
# The thirder in the original problem: the later credence is reached only
# with sleep and an unequal number of awakenings, so few flags are raised.
show("original-sb", "thirder", "Heads")

# %%
# The halfer rule in two-coins: always woken, on every day.
show("two-coins", "halfer", "same")

# %%
# Telling Beauty the day adds a transition inside one awakening, with no
# memory loss. All four flags are set.
show("two-coins-disclosure", "halfer", "same")

# %%
# Shangri-La: memories merge, so NO_MEMORY_LOSS is absent.
show("shangri-la", "halfer", "Heads")
