"""Line-oriented scenario description language.

Grammar, one directive per line (``#`` starts a comment)::

    scenario <name>
    world <id> prior <int|p/q>
    time <id>
    center <world> <time> obs [<label>, <label>, ...]
    event <id> = { <world>, <world>, ... }

``time`` declaration order is temporal order. The ``scenario`` header must
come before any other directive.
"""

from __future__ import annotations

import re
from importlib import resources

from .model import (Scenario, ScenarioError, format_rational, parse_rational,
                    validate_scenario)

BUILTIN_DESCRIPTIONS = {
    "original-sb": "Sleeping Beauty: Heads wakes Monday, Tails wakes Monday and Tuesday",
    "two-coins": "two fair coins, today's coin shown on each of two awakenings",
    "two-coins-disclosure": "two-coins, then told the day later in each awakening",
    "cost-cutting": "two-coins, but only woken on days whose coin came up Heads",
    "lewis-sb": "Sleeping Beauty, told 'Monday' later in the Monday awakening",
    "shangri-la": "experience A or B by a coin; memories of B later replaced by A",
}

_TOKEN_RE = re.compile(r"\s*(?:([\[\]{},=])|([^\s#\[\]{},=]+))")


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, msg, line, col):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


class UnknownBuiltin(ScenarioError):
    pass


def _tokenize(text, lineno):
    """Split one (comment-stripped) line into ``(token, column)`` pairs."""
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ScenarioSyntaxError(f"unexpected character {text[pos]!r}",
                                      lineno, pos + 1)
        start = m.start(1) if m.group(1) else m.start(2)
        toks.append((m.group(1) or m.group(2), start + 1))
        pos = m.end()
    return toks


class _Line:
    def __init__(self, toks, lineno, end_col):
        self.toks = toks
        self.lineno = lineno
        self.end_col = end_col
        self.i = 0

    def fail(self, msg):
        col = self.toks[self.i][1] if self.i < len(self.toks) else self.end_col
        raise ScenarioSyntaxError(msg, self.lineno, col)

    def word(self, what):
        if self.i >= len(self.toks) or self.toks[self.i][0] in "[]{},=":
            self.fail(f"expected {what}")
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def punct(self, p):
        if self.i >= len(self.toks) or self.toks[self.i][0] != p:
            self.fail(f"expected {p!r}")
        self.i += 1

    def keyword(self, kw):
        if self.i >= len(self.toks) or self.toks[self.i][0] != kw:
            self.fail(f"expected keyword {kw!r}")
        self.i += 1

    def bracketed(self, open_, close, what):
        self.punct(open_)
        items = []
        if self.i < len(self.toks) and self.toks[self.i][0] == close:
            self.i += 1
            return items
        while True:
            items.append(self.word(what))
            if self.i < len(self.toks) and self.toks[self.i][0] == ",":
                self.i += 1
                continue
            self.punct(close)
            return items

    def done(self):
        if self.i != len(self.toks):
            self.fail(f"unexpected token {self.toks[self.i][0]!r}")


def parse_scenario(src: str) -> Scenario:
    """Parse scenario text. Syntax errors carry line and column."""
    raw = {"name": None, "worlds": [], "times": [], "centers": [], "events": []}
    for lineno, line in enumerate(src.splitlines(), start=1):
        text = line.split("#", 1)[0]
        toks = _tokenize(text, lineno)
        if not toks:
            continue
        ln = _Line(toks, lineno, len(text.rstrip()) + 1)
        head = ln.word("directive")
        if head != "scenario" and raw["name"] is None:
            raise ScenarioSyntaxError("missing 'scenario <name>' header",
                                      lineno, toks[0][1])
        if head == "scenario":
            if raw["name"] is not None:
                ln.i = 0
                ln.fail("duplicate scenario header")
            raw["name"] = ln.word("scenario name")
        elif head == "world":
            wid = ln.word("world id")
            ln.keyword("prior")
            col = toks[ln.i][1] if ln.i < len(toks) else ln.end_col
            lit = ln.word("prior value")
            try:
                prior = parse_rational(lit)
            except ValueError:
                raise ScenarioSyntaxError(
                    f"prior must be an integer or p/q, got {lit!r}", lineno, col)
            raw["worlds"].append((wid, prior))
        elif head == "time":
            raw["times"].append(ln.word("time id"))
        elif head == "center":
            wid = ln.word("world id")
            t = ln.word("time id")
            ln.keyword("obs")
            raw["centers"].append((wid, t, tuple(ln.bracketed("[", "]", "label"))))
        elif head == "event":
            eid = ln.word("event id")
            ln.punct("=")
            raw["events"].append((eid, ln.bracketed("{", "}", "world id")))
        else:
            ln.i = 0
            ln.fail(f"unknown directive {head!r}")
        ln.done()
    if raw["name"] is None:
        raise ScenarioSyntaxError("missing 'scenario <name>' header", 1, 1)
    return validate_scenario(raw)


def print_scenario(s: Scenario) -> str:
    """Canonical text; ``parse_scenario(print_scenario(s)) == s``."""
    order = {w: i for i, w in enumerate(s.world_ids)}
    out = [f"scenario {s.name}"]
    out += [f"world {w.id} prior {format_rational(w.prior)}" for w in s.worlds]
    out += [f"time {t}" for t in s.times]
    out += [f"center {c.world} {c.time} obs [{', '.join(c.signature)}]"
            for c in s.centers]
    for e in s.events:
        members = sorted(e.members, key=order.__getitem__)
        out.append(f"event {e.id} = {{ {', '.join(members)} }}")
    return "\n".join(out) + "\n"


def builtin_names() -> list[str]:
    return list(BUILTIN_DESCRIPTIONS)


def builtin_source(name: str) -> str:
    if name not in BUILTIN_DESCRIPTIONS:
        raise UnknownBuiltin(f"unknown builtin scenario {name}")
    return resources.files("selfloc").joinpath(
        "scenarios", f"{name}.sbs").read_text(encoding="utf-8")


def builtin_scenario(name: str) -> Scenario:
    return parse_scenario(builtin_source(name))


def load_scenario(spec: str) -> Scenario:
    """Load ``builtin:NAME`` or a path to a ``.sbs`` file."""
    if spec.startswith("builtin:"):
        return builtin_scenario(spec[len("builtin:"):])
    with open(spec, encoding="utf-8") as fh:
        return parse_scenario(fh.read())
