"""
Four ways to update on self-locating evidence
=============================================

Load the builtin scenarios and compare what each update rule says.
"""

from selfloc import EvidenceQuery, builtin_scenario, credence, format_rational, update

# %%
# In the two-coins scenario Beauty is woken on Monday and on Tuesday and
# shown the coin belonging to that day. She cannot tell the coins apart.
two_coins = builtin_scenario("two-coins")
seen_heads = EvidenceQuery(stage=1, label="seeH")

for rule in ("halfer", "thirder", "selection", "lewis"):
    d = update(two_coins, rule, seen_heads)
    worlds = ", ".join(f"{w}={format_rational(p)}" for w, p in d.items())
    same = credence(two_coins, rule, seen_heads, "same")
    print(f"{rule:>9}: {worlds}   P(same)={format_rational(same)}")

# %%
# Cost-cutting: Beauty sleeps through Tails days. Now the selection rule
# gives 1/3 to each surviving world, like the halfer rule.
cost = builtin_scenario("cost-cutting")
for rule in ("halfer", "thirder", "selection"):
    print(rule, format_rational(update(cost, rule, seen_heads)["HH"]))

# %%
# Lewis halfing only departs from the halfer rule once Beauty learns
# the day.
lewis = builtin_scenario("lewis-sb")
for label in ("awake_mon", "awake_untold"):
    q = EvidenceQuery(2, label)
    print(label, {r: format_rational(credence(lewis, r, q, "Heads"))
                  for r in ("halfer", "lewis")})
