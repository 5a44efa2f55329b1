"""Exact-arithmetic domain types: scenarios, centers, events, distributions.

All probabilities are :class:`fractions.Fraction` values. Nothing in this
module ever rounds.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

Rational = Fraction

# Identifiers and labels may not contain whitespace or the DSL's punctuation.
_ID_RE = re.compile(r"[^\s#\[\]{},=]+\Z")
_RATIONAL_RE = re.compile(r"(-?\d+)(?:/(\d+))?\Z")


class ScenarioError(Exception):
    """Base class for every error raised on scenario data."""


class ValidationError(ScenarioError):
    pass


class PriorSumError(ValidationError):
    pass


class PriorRangeError(ValidationError):
    pass


class DuplicateId(ValidationError):
    pass


class DanglingReference(ValidationError):
    pass


class RaggedSignature(ValidationError):
    pass


class EmptyScenario(ValidationError):
    pass


class InvalidId(ValidationError):
    pass


class StageOutOfRange(ScenarioError):
    pass


class UnknownEvent(ScenarioError):
    pass


class UnrealizableEvidence(ScenarioError):
    def __init__(self, label, stage):
        super().__init__(f"unrealizable evidence {label} at stage {stage}")
        self.label = label
        self.stage = stage


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or a bare integer. Decimals are rejected."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def valid_id(text) -> bool:
    return isinstance(text, str) and _ID_RE.match(text) is not None


@dataclass(frozen=True)
class World:
    id: str
    prior: Fraction


@dataclass(frozen=True)
class Center:
    world: str
    time: str
    signature: tuple[str, ...]

    def label(self, stage: int) -> str:
        return self.signature[stage - 1]

    def __str__(self):
        return f"{self.world}@{self.time}"


@dataclass(frozen=True)
class Event:
    id: str
    members: frozenset[str]


@dataclass(frozen=True)
class EvidenceQuery:
    stage: int
    label: str


@dataclass(frozen=True)
class DecisionPoint:
    """Either the pre-experiment point (stage 0) or an evidence class."""

    stage: int = 0
    label: str | None = None

    @property
    def is_prior(self) -> bool:
        return self.stage == 0

    def __str__(self):
        return "PRIOR" if self.is_prior else f"({self.stage}, {self.label})"


PRIOR = DecisionPoint()


@dataclass(frozen=True)
class Scenario:
    name: str
    worlds: tuple[World, ...]
    times: tuple[str, ...]
    centers: tuple[Center, ...]
    events: tuple[Event, ...]
    stage_count: int
    _by_world: Mapping[str, tuple[Center, ...]] = field(
        default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        by_world = {w.id: [] for w in self.worlds}
        for c in self.centers:
            by_world.setdefault(c.world, []).append(c)
        object.__setattr__(
            self, "_by_world", {k: tuple(v) for k, v in by_world.items()})

    @property
    def world_ids(self) -> tuple[str, ...]:
        return tuple(w.id for w in self.worlds)

    def prior(self, world_id: str) -> Fraction:
        for w in self.worlds:
            if w.id == world_id:
                return w.prior
        raise KeyError(world_id)

    def priors(self) -> dict[str, Fraction]:
        return {w.id: w.prior for w in self.worlds}

    def centers_of(self, world_id: str) -> tuple[Center, ...]:
        return self._by_world.get(world_id, ())

    def event(self, event_id: str) -> Event:
        for e in self.events:
            if e.id == event_id:
                return e
        raise UnknownEvent(f"unknown event {event_id}")

    def check_stage(self, stage: int) -> None:
        if not (isinstance(stage, int) and 1 <= stage <= self.stage_count):
            raise StageOutOfRange(
                f"stage {stage} outside 1..{self.stage_count}")

    def labels(self, stage: int) -> list[str]:
        """Distinct stage labels in first-appearance order."""
        self.check_stage(stage)
        return list(dict.fromkeys(c.label(stage) for c in self.centers))

    def realizable_labels(self, stage: int) -> list[str]:
        """Labels carried at ``stage`` by some center of a positive-prior world."""
        pri = self.priors()
        self.check_stage(stage)
        return list(dict.fromkeys(
            c.label(stage) for c in self.centers if pri[c.world] > 0))

    def matching(self, q: EvidenceQuery) -> list[Center]:
        self.check_stage(q.stage)
        return [c for c in self.centers if c.label(q.stage) == q.label]

    def is_realizable(self, q: EvidenceQuery) -> bool:
        pri = self.priors()
        return any(pri[c.world] > 0 for c in self.matching(q))


class WorldDistribution(Mapping):
    """Exact credence over worlds; values are nonnegative and sum to 1."""

    def __init__(self, values):
        vals = {k: Fraction(v) for k, v in dict(values).items()}
        if any(v < 0 for v in vals.values()):
            raise ValueError("negative credence")
        if sum(vals.values(), Fraction(0)) != 1:
            raise ValueError("credences do not sum to 1")
        self._vals = vals

    @classmethod
    def normalized(cls, weights) -> WorldDistribution:
        weights = {k: Fraction(v) for k, v in dict(weights).items()}
        total = sum(weights.values(), Fraction(0))
        if total <= 0:
            raise ValueError("cannot normalize zero total weight")
        return cls({k: v / total for k, v in weights.items()})

    def __getitem__(self, key):
        return self._vals[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._vals)

    def __len__(self):
        return len(self._vals)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            keys = set(self) | set(other)
            return all(self.get(k, 0) == other.get(k, 0) for k in keys)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self._vals.items() if v))

    def __repr__(self):
        body = ", ".join(f"{k}: {format_rational(v)}" for k, v in self._vals.items())
        return f"WorldDistribution({{{body}}})"


def validate_scenario(raw) -> Scenario:
    """Check unchecked scenario data and build a :class:`Scenario`.

    ``raw`` is a mapping with keys ``name``, ``worlds`` (list of
    ``(id, prior)``), ``times``, ``centers`` (list of
    ``(world, time, signature)``) and ``events`` (list of ``(id, members)``).
    Malformed input raises a :class:`ValidationError`; nothing else escapes.
    """
    try:
        return _validate(raw)
    except ScenarioError:
        raise
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        raise ValidationError(f"malformed scenario data: {exc}") from exc


def _validate(raw) -> Scenario:
    name = raw["name"]
    if not valid_id(name):
        raise InvalidId(f"invalid scenario name {name!r}")

    worlds = []
    seen = set()
    for wid, prior in raw["worlds"]:
        if not valid_id(wid):
            raise InvalidId(f"invalid world id {wid!r}")
        if wid in seen:
            raise DuplicateId(f"duplicate world {wid}")
        seen.add(wid)
        if isinstance(prior, str):
            prior = parse_rational(prior)
        if isinstance(prior, float):
            raise PriorRangeError(f"prior of {wid} must be exact, got float")
        prior = Fraction(prior)
        if not 0 <= prior <= 1:
            raise PriorRangeError(f"prior of {wid} outside [0, 1]: {prior}")
        worlds.append(World(wid, prior))
    if not worlds:
        raise EmptyScenario("scenario has no worlds")
    total = sum((w.prior for w in worlds), Fraction(0))
    if total != 1:
        raise PriorSumError(f"priors sum to {format_rational(total)}, not 1")

    times = []
    for t in raw["times"]:
        if not valid_id(t):
            raise InvalidId(f"invalid time id {t!r}")
        if t in times:
            raise DuplicateId(f"duplicate time {t}")
        times.append(t)

    centers = []
    cells = set()
    for wid, t, sig in raw["centers"]:
        if wid not in seen:
            raise DanglingReference(f"center names unknown world {wid}")
        if t not in times:
            raise DanglingReference(f"center names unknown time {t}")
        if (wid, t) in cells:
            raise DuplicateId(f"duplicate center {wid} {t}")
        cells.add((wid, t))
        sig = tuple(sig)
        for lab in sig:
            if not valid_id(lab):
                raise InvalidId(f"invalid observation label {lab!r}")
        centers.append(Center(wid, t, sig))
    if not centers:
        raise EmptyScenario("scenario has no centers")
    lengths = {len(c.signature) for c in centers}
    if len(lengths) != 1:
        raise RaggedSignature(f"signature lengths differ: {sorted(lengths)}")
    stage_count = lengths.pop()
    if stage_count < 1:
        raise RaggedSignature("signatures must have at least one stage")

    events = []
    eids = set()
    for eid, members in raw["events"]:
        if not valid_id(eid):
            raise InvalidId(f"invalid event id {eid!r}")
        if eid in eids:
            raise DuplicateId(f"duplicate event {eid}")
        eids.add(eid)
        members = frozenset(members)
        for m in members:
            if m not in seen:
                raise DanglingReference(f"event {eid} names unknown world {m}")
        events.append(Event(eid, members))

    return Scenario(raw["name"], tuple(worlds), tuple(times), tuple(centers),
                    tuple(events), stage_count)


def evidence_classes(s: Scenario, stage: int) -> dict[str, list[Center]]:
    """Partition the centers of ``s`` by their label at ``stage``."""
    s.check_stage(stage)
    classes: dict[str, list[Center]] = {}
    for c in s.centers:
        classes.setdefault(c.label(stage), []).append(c)
    return classes


def event_probability(d: Mapping, e: Event | Iterable[str]) -> Fraction:
    members = e.members if isinstance(e, Event) else frozenset(e)
    unknown = [m for m in members if m not in d]
    if unknown:
        raise UnknownEvent(f"event names worlds outside the distribution: {unknown}")
    return sum((d[m] for m in members), Fraction(0))
