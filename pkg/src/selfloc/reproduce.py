"""Reproduction table of the published credences, Reflection cases and books.

Every row is checked by exact equality of rationals or of booleans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dsl import builtin_scenario
from .dutchbook import synthesize, verify
from .model import PRIOR, DecisionPoint, EvidenceQuery
from .reflection import Flag, detect_violations
from .rules import credence, update


@dataclass(frozen=True)
class Row:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


def _cred(scn, rule, stage, label, event):
    return credence(builtin_scenario(scn), rule, EvidenceQuery(stage, label), event)


def _find(report, point, to_stage):
    for v in report.violations:
        if v.from_point == point and v.to_stage == to_stage:
            return v
    return None


def _violation_row(name, scn, rule, event, point, to_stage, before, after,
                   present, absent):
    v = _find(detect_violations(builtin_scenario(scn), rule, event), point, to_stage)
    if v is None:
        actual = None
    else:
        actual = (v.value_before, v.value_after,
                  all(f in v.flags for f in present),
                  not any(f in v.flags for f in absent))
    return Row(name, (Fraction(before), Fraction(after), True, True), actual)


def _book_row(name, scn, rule, events, max_stage, expect_book):
    s = builtin_scenario(scn)
    sched = synthesize(s, rule, events, max_stage)
    if sched is None:
        actual = "none"
    else:
        pay = verify(s, sched)
        sound = (pay == sched.per_world_payoff
                 and all(pay[w.id] <= -sched.guaranteed_loss
                         for w in s.worlds if w.prior > 0))
        actual = "verified" if sound else "unsound"
    return Row(name, "verified" if expect_book else "none", actual)


def paper_rows() -> list[Row]:
    F = Fraction
    rows = [
        Row("halfer two-coins seeH same", F(1, 3), _cred("two-coins", "halfer", 1, "seeH", "same")),
        Row("halfer two-coins seeT same", F(1, 3), _cred("two-coins", "halfer", 1, "seeT", "same")),
        Row("thirder two-coins seeH same", F(1, 2), _cred("two-coins", "thirder", 1, "seeH", "same")),
        Row("thirder original-sb awake Heads", F(1, 3),
            _cred("original-sb", "thirder", 1, "awake", "Heads")),
        Row("halfer original-sb awake Heads", F(1, 2),
            _cred("original-sb", "halfer", 1, "awake", "Heads")),
        Row("selection two-coins seeH HH", F(1, 2),
            update(builtin_scenario("two-coins"), "selection", EvidenceQuery(1, "seeH"))["HH"]),
        Row("selection cost-cutting seeH HH", F(1, 3),
            update(builtin_scenario("cost-cutting"), "selection", EvidenceQuery(1, "seeH"))["HH"]),
        Row("halfer disclosure seeH_mon same", F(1, 2),
            _cred("two-coins-disclosure", "halfer", 2, "seeH_mon", "same")),
        Row("thirder disclosure seeH_mon same", F(1, 2),
            _cred("two-coins-disclosure", "thirder", 2, "seeH_mon", "same")),
        Row("lewis lewis-sb awake_mon Heads", F(2, 3),
            _cred("lewis-sb", "lewis", 2, "awake_mon", "Heads")),
        _violation_row("reflection halfer two-coins prior->1", "two-coins", "halfer", "same",
                       PRIOR, 1, F(1, 2), F(1, 3),
                       [Flag.REACHED_IN_ALL_WORLDS, Flag.UNIFORM_STRUCTURE],
                       [Flag.AGENT_LOCATED]),
        _violation_row("reflection halfer disclosure (1,seeH)->2", "two-coins-disclosure",
                       "halfer", "same", DecisionPoint(1, "seeH"), 2, F(1, 3), F(1, 2),
                       [Flag.NO_MEMORY_LOSS, Flag.AGENT_LOCATED], []),
        _violation_row("reflection thirder original-sb prior->1", "original-sb", "thirder",
                       "Heads", PRIOR, 1, F(1, 2), F(1, 3), [],
                       [Flag.UNIFORM_STRUCTURE, Flag.AGENT_LOCATED]),
        _violation_row("reflection halfer shangri-la (1,expA)->2", "shangri-la", "halfer",
                       "Heads", DecisionPoint(1, "expA"), 2, F(1), F(1, 2), [],
                       [Flag.NO_MEMORY_LOSS]),
        _book_row("dutch book lewis-sb lewis Heads", "lewis-sb", "lewis", ["Heads"], 2, True),
        _book_row("dutch book two-coins halfer same", "two-coins", "halfer", ["same"], 1, True),
        _book_row("no dutch book original-sb thirder Heads", "original-sb", "thirder",
                  ["Heads"], 1, False),
    ]
    return rows
