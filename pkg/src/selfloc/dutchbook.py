"""Fair diachronic Dutch books against a rule's credence sequence.

A bet is offered at a decision point: the pre-experiment point, or an
evidence class ``(stage, label)``. At an evidence class the same bet is
transacted at every center carrying the label, since the bookie cannot
condition on anything the agent cannot distinguish. Each bet is priced at
the agent's own credence, so it is exactly fair by her lights. All bets
settle on uncentered events once the experiment is over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import (PRIOR, DecisionPoint, EvidenceQuery, Scenario,
                    StageOutOfRange, event_probability)
from .rules import credence
from .simplex import solve_feasibility


class InvalidSchedule(ValueError):
    pass


@dataclass(frozen=True)
class Bet:
    point: DecisionPoint
    event: str
    stake: Fraction
    price: Fraction

    def payoff(self, won: bool) -> Fraction:
        """Payoff of one transaction: stake * (indicator - price)."""
        return self.stake * ((1 if won else 0) - self.price)


@dataclass(frozen=True)
class BetSchedule:
    bets: tuple[Bet, ...]
    per_world_payoff: dict[str, Fraction]
    guaranteed_loss: Fraction


def multiplicity(s: Scenario, point: DecisionPoint, world: str) -> int:
    if point.is_prior:
        return 1
    return sum(1 for c in s.centers_of(world) if c.label(point.stage) == point.label)


def decision_points(s: Scenario, max_stage: int, stages=None) -> list[DecisionPoint]:
    points = [PRIOR]
    for k in range(1, max_stage + 1):
        if stages is not None and k not in stages:
            continue
        points += [DecisionPoint(k, lab) for lab in s.realizable_labels(k)]
    return points


def price_at(s: Scenario, rule, point: DecisionPoint, event) -> Fraction:
    if isinstance(event, str):
        event = s.event(event)
    if point.is_prior:
        return event_probability(s.priors(), event)
    return credence(s, rule, EvidenceQuery(point.stage, point.label), event)


def _integral(stakes):
    """Scale a rational vector by a positive factor to coprime integers."""
    lcm = 1
    for v in stakes:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in stakes]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [Fraction(v, g or 1) for v in ints]


def synthesize(s: Scenario, rule, events, max_stage: int, stages=None,
               max_bits: int | None = 4096) -> BetSchedule | None:
    """Find fair bets that lose money in every positive-prior world.

    Bets may be placed before the experiment and at every evidence class of
    stages ``1..max_stage``; ``stages`` narrows that to the listed stages.
    Returns ``None`` when the exact simplex proves no such schedule exists.
    """
    if not 0 <= max_stage <= s.stage_count:
        raise StageOutOfRange(f"max stage {max_stage} outside 0..{s.stage_count}")
    events = [s.event(e) if isinstance(e, str) else s.event(e.id) for e in events]
    points = decision_points(s, max_stage, stages)
    columns = [(p, e, price_at(s, rule, p, e)) for p in points for e in events]

    live = [w for w in s.worlds if w.prior > 0]
    A = []
    for w in live:
        A.append([multiplicity(s, p, w.id) * ((1 if w.id in e.members else 0) - price)
                  for p, e, price in columns])
    result = solve_feasibility(A, [-1] * len(A), max_bits=max_bits)
    if not result.feasible:
        return None

    stakes = _integral(list(result.x))
    bets = tuple(Bet(p, e.id, st, price)
                 for (p, e, price), st in zip(columns, stakes) if st != 0)
    payoff = verify(s, BetSchedule(bets, {}, Fraction(0)))
    loss = min(-payoff[w.id] for w in live)
    sched = BetSchedule(bets, payoff, loss)
    if loss <= 0:
        raise AssertionError("simplex returned a schedule without sure loss")
    return sched


def verify(s: Scenario, sched: BetSchedule) -> dict[str, Fraction]:
    """Recompute per-world payoffs by walking every center of every world."""
    for bet in sched.bets:
        if bet.event not in {e.id for e in s.events}:
            raise InvalidSchedule(f"bet on unknown event {bet.event}")
        if not bet.point.is_prior:
            if not 1 <= bet.point.stage <= s.stage_count:
                raise InvalidSchedule(f"decision point {bet.point} out of range")
            if bet.point.label not in s.realizable_labels(bet.point.stage):
                raise InvalidSchedule(f"decision point {bet.point} is not realizable")
    payoff = {}
    for w in s.worlds:
        total = Fraction(0)
        for bet in sched.bets:
            won = w.id in s.event(bet.event).members
            if bet.point.is_prior:
                total += bet.payoff(won)
                continue
            for c in s.centers_of(w.id):
                if c.signature[bet.point.stage - 1] == bet.point.label:
                    total += bet.payoff(won)
        payoff[w.id] = total
    return payoff


def scaled(sched: BetSchedule, factor) -> BetSchedule:
    """Multiply every stake by ``factor`` (> 0); payoffs scale alike."""
    factor = Fraction(factor)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    bets = tuple(Bet(b.point, b.event, b.stake * factor, b.price) for b in sched.bets)
    return BetSchedule(bets, {w: v * factor for w, v in sched.per_world_payoff.items()},
                       sched.guaranteed_loss * factor)
