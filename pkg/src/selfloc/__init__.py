"""Credence-update rules for self-locating evidence, with exact arithmetic.

The analytic side (rules, Reflection audits, Dutch books) works entirely in
:class:`fractions.Fraction`; only :mod:`selfloc.simulation` uses floats.
"""

from .dsl import (ScenarioSyntaxError, UnknownBuiltin, builtin_names, builtin_scenario,
                  load_scenario, parse_scenario, print_scenario)
from .dutchbook import Bet, BetSchedule, InvalidSchedule, synthesize, verify
from .model import (PRIOR, Center, DecisionPoint, DanglingReference, DuplicateId,
                    EmptyScenario, Event, EvidenceQuery, PriorSumError, RaggedSignature,
                    Scenario, ScenarioError, StageOutOfRange, UnknownEvent,
                    UnrealizableEvidence, ValidationError, World, WorldDistribution,
                    event_probability, evidence_classes, format_rational, parse_rational,
                    validate_scenario)
from .reflection import Flag, ReflectionReport, Violation, detect_violations, posterior_profile
from .rules import (RuleId, credence, halfer_update, lewis_update, selection_update,
                    thirder_update, update)
from .simplex import NumericOverflow
from .simulation import FrequencyReport, SamplingMode, run

__version__ = "0.1.0"
