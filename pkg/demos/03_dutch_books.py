"""
Synthesizing Dutch books
========================

Every bet is priced at the agent's own credence and is repeated at every
awakening in the same evidence class. The exact simplex either returns a
schedule losing money in every world or proves that none exists.
"""

from selfloc import builtin_scenario, format_rational, synthesize


def book(name, rule, events, max_stage, stages=None):
    s = builtin_scenario(name)
    sched = synthesize(s, rule, events, max_stage, stages=stages)
    where = f"stages {sorted(stages)}" if stages else f"stages <= {max_stage}"
    print(f"{rule} on {name}, events {events}, {where}:")
    if sched is None:
        print("    no Dutch book (infeasible)")
        return
    for b in sched.bets:
        print(f"    {str(b.point):<16} {b.event:<6} stake {format_rational(b.stake):>3}"
              f" at price {format_rational(b.price)}")
    pays = ", ".join(f"{w}: {format_rational(p)}" for w, p in sched.per_world_payoff.items())
    print(f"    payoffs {pays}; guaranteed loss {format_rational(sched.guaranteed_loss)}")


# %%
# Sunday and Monday-after-disclosure only: the classic book against Lewis.
book("lewis-sb", "lewis", ["Heads"], 2, stages={2})
book("two-coins", "halfer", ["same"], 1)

# %%
# The thirder cannot be booked with bets that ignore what she cannot see.
book("original-sb", "thirder", ["Heads"], 1)

# %%
# The halfer in the original problem can: a stage-1 bet is struck at both
# Tails awakenings.
book("original-sb", "halfer", ["Heads"], 1)
