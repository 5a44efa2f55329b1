from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfloc import (EvidenceQuery, RuleId, UnrealizableEvidence, builtin_names,
                     builtin_scenario, credence, halfer_update, lewis_update,
                     selection_update, thirder_update, update, validate_scenario)
from selfloc.rules import lewis_centered
from strategies import scenarios

F = Fraction
Q = EvidenceQuery


def lewis_disclosure_oracle(coin_seen, day_told):
    """Brute-force Lewis credence in the two-coins disclosure variant.

    Enumerates the (coins, day) cells directly: on seeing a coin, each
    world consistent with it keeps its prior, split evenly over its
    awakenings showing that coin; then condition on the announced day.
    """
    cells = {}
    for c1, c2 in product("HT", repeat=2):
        world = c1 + c2
        shown = {"Mon": c1, "Tue": c2}
        days = [d for d in ("Mon", "Tue") if shown[d] == coin_seen]
        for d in days:
            cells[(world, d)] = F(1, 4) / len(days)
    told = {k: v for k, v in cells.items() if k[1] == day_told}
    z = sum(told.values())
    out = {}
    for (world, _), v in told.items():
        out[world] = out.get(world, 0) + v / z
    return out


def test_lewis_oracle_disclosure():
    assert lewis_disclosure_oracle("H", "Mon") == {"HH": F(1, 3), "HT": F(2, 3)}
    s = builtin_scenario("two-coins-disclosure")
    for coin, day in product("HT", ("Mon", "Tue")):
        label = f"see{coin}_{day.lower()}"
        assert lewis_update(s, Q(2, label)) == lewis_disclosure_oracle(coin, day)


# ---- halfer ----------------------------------------------------------------

def test_halfer_two_coins():
    d = halfer_update(builtin_scenario("two-coins"), Q(1, "seeH"))
    assert d == {"HH": F(1, 3), "HT": F(1, 3), "TH": F(1, 3), "TT": 0}
    assert d["TT"] == 0


def test_halfer_original():
    assert halfer_update(builtin_scenario("original-sb"), Q(1, "awake")) == {
        "Heads": F(1, 2), "Tails": F(1, 2)}


def test_halfer_disclosure():
    assert halfer_update(builtin_scenario("two-coins-disclosure"), Q(2, "seeH_mon")) == {
        "HH": F(1, 2), "HT": F(1, 2)}


# ---- thirder ---------------------------------------------------------------

def test_thirder_two_coins():
    s = builtin_scenario("two-coins")
    d = thirder_update(s, Q(1, "seeH"))
    assert d == {"HH": F(1, 2), "HT": F(1, 4), "TH": F(1, 4)}
    assert credence(s, "thirder", Q(1, "seeH"), "same") == F(1, 2)


def test_thirder_original():
    assert thirder_update(builtin_scenario("original-sb"), Q(1, "awake")) == {
        "Heads": F(1, 3), "Tails": F(2, 3)}


def test_single_world_identity():
    s = validate_scenario({"name": "one", "worlds": [("w", 1)], "times": ["t", "u"],
                           "centers": [("w", "t", ("x",)), ("w", "u", ("x",))],
                           "events": []})
    for rule in RuleId:
        assert update(s, rule, Q(1, "x")) == {"w": 1}


# ---- selection -------------------------------------------------------------

def test_selection_two_coins_term_by_term():
    s = builtin_scenario("two-coins")
    # likelihoods 1, 1/2, 1/2 times prior 1/4 each
    expected = (1 * F(1, 4)) / (1 * F(1, 4) + F(1, 2) * F(1, 4) + F(1, 2) * F(1, 4))
    assert expected == F(1, 2)
    assert selection_update(s, Q(1, "seeH"))["HH"] == expected


def test_selection_cost_cutting_term_by_term():
    s = builtin_scenario("cost-cutting")
    expected = (1 * F(1, 4)) / (1 * F(1, 4) + 1 * F(1, 4) + 1 * F(1, 4))
    assert expected == F(1, 3)
    d = selection_update(s, Q(1, "seeH"))
    assert d == {"HH": F(1, 3), "HT": F(1, 3), "TH": F(1, 3), "TT": 0}


# ---- lewis -----------------------------------------------------------------

def test_lewis_sb():
    s = builtin_scenario("lewis-sb")
    assert lewis_update(s, Q(2, "awake_mon")) == {"Heads": F(2, 3), "Tails": F(1, 3)}
    assert lewis_update(s, Q(1, "awake")) == {"Heads": F(1, 2), "Tails": F(1, 2)}
    assert lewis_update(s, Q(2, "awake_untold")) == {"Tails": 1}


def test_lewis_centered_split():
    s = builtin_scenario("lewis-sb")
    c = {str(k): v for k, v in lewis_centered(s, Q(1, "awake")).items()}
    assert c == {"Heads@Mon": F(1, 2), "Tails@Mon": F(1, 4), "Tails@Tue": F(1, 4)}


def test_lewis_shangri_la_merges_lineage():
    s = builtin_scenario("shangri-la")
    assert lewis_update(s, Q(2, "memA")) == {"Heads": F(1, 2), "Tails": F(1, 2)}
    assert lewis_update(s, Q(1, "expA")) == {"Heads": 1}


# ---- errors ----------------------------------------------------------------

@pytest.mark.parametrize("rule", list(RuleId))
def test_unrealizable(rule):
    s = builtin_scenario("two-coins")
    with pytest.raises(UnrealizableEvidence, match="unrealizable evidence seeX at stage 1"):
        update(s, rule, Q(1, "seeX"))


def test_zero_prior_only_label_is_unrealizable():
    s = validate_scenario({"name": "z", "worlds": [("a", 1), ("b", 0)], "times": ["t"],
                           "centers": [("a", "t", ("x",)), ("b", "t", ("y",))],
                           "events": []})
    with pytest.raises(UnrealizableEvidence):
        halfer_update(s, Q(1, "y"))


# ---- properties ------------------------------------------------------------

def realizable_queries(s):
    return [Q(k, lab) for k in range(1, s.stage_count + 1) for lab in s.realizable_labels(k)]


@pytest.mark.parametrize("name", builtin_names())
@pytest.mark.parametrize("rule", list(RuleId))
def test_rules_normalized_on_builtins(name, rule):
    s = builtin_scenario(name)
    for q in realizable_queries(s):
        d = update(s, rule, q)
        assert sum(d.values()) == 1 and all(v >= 0 for v in d.values())


@settings(max_examples=1000, deadline=None)
@given(scenarios(), st.data())
def test_rules_normalized_random(s, data):
    q = data.draw(st.sampled_from(realizable_queries(s)))
    for rule in RuleId:
        d = update(s, rule, q)
        assert set(d) == set(s.world_ids)
        assert sum(d.values()) == 1
        assert all(v >= 0 for v in d.values())


@settings(max_examples=300, deadline=None)
@given(scenarios(), st.data())
def test_halfer_support(s, data):
    q = data.draw(st.sampled_from(realizable_queries(s)))
    d = halfer_update(s, q)
    for w in s.worlds:
        has = any(c.label(q.stage) == q.label for c in s.centers_of(w.id))
        assert (d[w.id] > 0) == (has and w.prior > 0)


@settings(max_examples=300, deadline=None)
@given(scenarios(), st.data())
def test_thirder_proportional_to_count(s, data):
    q = data.draw(st.sampled_from(realizable_queries(s)))
    d = thirder_update(s, q)
    weight = {w.id: w.prior * sum(1 for c in s.centers if c.world == w.id
                                  and c.signature[q.stage - 1] == q.label)
              for w in s.worlds}
    z = sum(weight.values())
    assert d == {w: v / z for w, v in weight.items()}


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.data())
def test_one_match_per_world_collapses_rules(n_worlds, n_times, data):
    """Equal center counts and one matching center each: all Bayes-equal."""
    weights = data.draw(st.lists(st.integers(1, 5), min_size=n_worlds, max_size=n_worlds))
    worlds = [(f"w{i}", F(x, sum(weights))) for i, x in enumerate(weights)]
    times = [f"t{j}" for j in range(n_times)]
    centers = []
    for wid, _ in worlds:
        hit = data.draw(st.integers(0, n_times - 1))
        for j, t in enumerate(times):
            centers.append((wid, t, ("e" if j == hit else f"o{j}",)))
    s = validate_scenario({"name": "r", "worlds": worlds, "times": times,
                           "centers": centers, "events": []})
    q = Q(1, "e")
    h = halfer_update(s, q)
    assert thirder_update(s, q) == h
    assert selection_update(s, q) == h


@settings(max_examples=300, deadline=None)
@given(scenarios(allow_zero_prior=False), st.data())
def test_selection_equals_halfer_for_equal_fractions(s, data):
    q = data.draw(st.sampled_from(realizable_queries(s)))
    fracs = set()
    for w in s.worlds:
        cs = s.centers_of(w.id)
        m = sum(1 for c in cs if c.label(q.stage) == q.label)
        if m:
            fracs.add(F(m, len(cs)))
    if len(fracs) == 1:
        assert selection_update(s, q) == halfer_update(s, q)


@settings(max_examples=300, deadline=None)
@given(scenarios(max_stages=1), st.data())
def test_lewis_equals_halfer_at_stage_one(s, data):
    q = data.draw(st.sampled_from(realizable_queries(s)))
    assert lewis_update(s, q) == halfer_update(s, q)
