"""Reflection-Principle audits of an update rule.

A violation is reported only when the agent can be *certain* of her later
credence: every evidence state she might reach at the later stage yields the
same value, and that value differs from her current one.

Severity flags are structural properties of the transition, independent of
the rule:

REACHED_IN_ALL_WORLDS
    every positive-prior world has at least one awakening.
UNIFORM_STRUCTURE
    every world is awake at the same set of time slots.
AGENT_LOCATED
    each later-stage label occurs at exactly one time slot.
NO_MEMORY_LOSS
    the transition starts inside an awakening and the later labels refine
    the earlier ones (no two distinct earlier states merge).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .model import PRIOR, DecisionPoint, EvidenceQuery, Scenario, event_probability
from .rules import RuleId, credence


class Flag(str, enum.Enum):
    REACHED_IN_ALL_WORLDS = "REACHED_IN_ALL_WORLDS"
    UNIFORM_STRUCTURE = "UNIFORM_STRUCTURE"
    AGENT_LOCATED = "AGENT_LOCATED"
    NO_MEMORY_LOSS = "NO_MEMORY_LOSS"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Violation:
    from_point: DecisionPoint
    to_stage: int
    event: str
    value_before: Fraction
    value_after: Fraction
    flags: frozenset[Flag]

    @property
    def severity(self) -> int:
        return len(self.flags)


@dataclass(frozen=True)
class ReflectionReport:
    scenario: str
    rule: RuleId
    event: str
    violations: tuple[Violation, ...]

    def __bool__(self):
        return bool(self.violations)


def posterior_profile(s: Scenario, rule, event, stage: int) -> dict[str, Fraction]:
    """The rule's event credence for each realizable label at ``stage``.

    Stage 0 gives the prior credence under the single key ``"PRIOR"``.
    """
    if isinstance(event, str):
        event = s.event(event)
    if stage == 0:
        return {"PRIOR": event_probability(s.priors(), event)}
    return {lab: credence(s, rule, EvidenceQuery(stage, lab), event)
            for lab in s.realizable_labels(stage)}


def transition_flags(s: Scenario, from_stage: int, to_stage: int) -> frozenset[Flag]:
    flags = set()
    if all(s.centers_of(w.id) for w in s.worlds if w.prior > 0):
        flags.add(Flag.REACHED_IN_ALL_WORLDS)
    awake = {frozenset(c.time for c in s.centers_of(w)) for w in s.world_ids}
    if len(awake) == 1:
        flags.add(Flag.UNIFORM_STRUCTURE)
    slots = {}
    for c in s.centers:
        slots.setdefault(c.label(to_stage), set()).add(c.time)
    if all(len(t) == 1 for t in slots.values()):
        flags.add(Flag.AGENT_LOCATED)
    if from_stage >= 1:
        origin = {}
        merged = False
        for c in s.centers:
            prev = origin.setdefault(c.label(to_stage), c.label(from_stage))
            merged |= prev != c.label(from_stage)
        if not merged:
            flags.add(Flag.NO_MEMORY_LOSS)
    return frozenset(flags)


def _unanimous(values):
    vals = set(values)
    return vals.pop() if len(vals) == 1 else None


def detect_violations(s: Scenario, rule, event) -> ReflectionReport:
    if isinstance(event, str):
        event = s.event(event)
    rule = RuleId(rule)
    prior = event_probability(s.priors(), event)
    profiles = {k: posterior_profile(s, rule, event, k)
                for k in range(1, s.stage_count + 1)}
    pri = s.priors()
    found = []
    for k in range(1, s.stage_count + 1):
        v = _unanimous(profiles[k].values())
        if v is not None and v != prior:
            found.append(Violation(PRIOR, k, event.id, prior, v,
                                   transition_flags(s, 0, k)))
        for j in range(1, k):
            for lab, before in profiles[j].items():
                later = {c.label(k) for c in s.centers
                         if c.label(j) == lab and pri[c.world] > 0}
                v = _unanimous(profiles[k][m] for m in later)
                if v is not None and v != before:
                    found.append(Violation(DecisionPoint(j, lab), k, event.id,
                                           before, v, transition_flags(s, j, k)))
    return ReflectionReport(s.name, rule, event.id, tuple(found))
