"""Credence-update rules mapping centered evidence to uncentered credence."""

from __future__ import annotations

import enum
from fractions import Fraction

from .model import (Center, EvidenceQuery, Scenario, UnrealizableEvidence,
                    WorldDistribution, event_probability)


class RuleId(str, enum.Enum):
    HALFER = "halfer"
    THIRDER = "thirder"
    SELECTION = "selection"
    LEWIS = "lewis"

    def __str__(self):
        return self.value


def _matches(s: Scenario, q: EvidenceQuery) -> dict[str, int]:
    """Matching-center count per world; raises if the evidence cannot occur."""
    if not s.is_realizable(q):
        raise UnrealizableEvidence(q.label, q.stage)
    counts = {w: 0 for w in s.world_ids}
    for c in s.matching(q):
        counts[c.world] += 1
    return counts


def halfer_update(s: Scenario, q: EvidenceQuery) -> WorldDistribution:
    """Zero out worlds with no matching center, renormalize the rest."""
    counts = _matches(s, q)
    return WorldDistribution.normalized(
        {w.id: w.prior if counts[w.id] else 0 for w in s.worlds})


def thirder_update(s: Scenario, q: EvidenceQuery) -> WorldDistribution:
    counts = _matches(s, q)
    return WorldDistribution.normalized(
        {w.id: w.prior * counts[w.id] for w in s.worlds})


def selection_update(s: Scenario, q: EvidenceQuery) -> WorldDistribution:
    """Bayes with likelihood = fraction of the world's centers that match.

    A world without centers has likelihood zero.
    """
    counts = _matches(s, q)
    weights = {}
    for w in s.worlds:
        n = len(s.centers_of(w.id))
        weights[w.id] = w.prior * Fraction(counts[w.id], n) if n else Fraction(0)
    return WorldDistribution.normalized(weights)


def lewis_centered(s: Scenario, q: EvidenceQuery) -> dict[Center, Fraction]:
    """Centered credence behind Lewis halfing, after conditioning through ``q.stage``.

    At stage 1 each world's prior is split evenly over its centers whose
    stage-1 label lies on the lineage of the queried class; each later stage
    conditions on the lineage labels at that stage, ending with ``q.label``.
    """
    _matches(s, q)
    target = s.matching(q)
    pri = s.priors()
    lineage = [{c.label(j) for c in target} for j in range(1, q.stage + 1)]

    alive = [c for c in s.centers if c.label(1) in lineage[0]]
    per_world = {}
    for c in alive:
        per_world[c.world] = per_world.get(c.world, 0) + 1
    cred = {c: pri[c.world] / per_world[c.world] for c in alive}
    cred = _renormalize(cred)

    for j in range(2, q.stage + 1):
        cred = _renormalize(
            {c: v for c, v in cred.items() if c.label(j) in lineage[j - 1]})
    return cred


def _renormalize(cred):
    total = sum(cred.values(), Fraction(0))
    if total == 0:
        # Unreachable for realizable queries: the target class keeps mass.
        raise ArithmeticError("centered credence collapsed to zero")
    return {c: v / total for c, v in cred.items()}


def lewis_update(s: Scenario, q: EvidenceQuery) -> WorldDistribution:
    cred = lewis_centered(s, q)
    weights = {w: Fraction(0) for w in s.world_ids}
    for c, v in cred.items():
        weights[c.world] += v
    return WorldDistribution(weights)


RULES = {
    RuleId.HALFER: halfer_update,
    RuleId.THIRDER: thirder_update,
    RuleId.SELECTION: selection_update,
    RuleId.LEWIS: lewis_update,
}


def update(s: Scenario, rule, q: EvidenceQuery) -> WorldDistribution:
    return RULES[RuleId(rule)](s, q)


def credence(s: Scenario, rule, q: EvidenceQuery, event) -> Fraction:
    """The rule's credence in an uncentered event given evidence ``q``."""
    if isinstance(event, str):
        event = s.event(event)
    return event_probability(update(s, rule, q), event)
