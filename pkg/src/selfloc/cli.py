"""Command-line front end.

Exit codes: 0 success, 1 parse/validation/usage error, 2 unrealizable query
or unknown id, 3 internal invariant failure. Diagnostics go to stderr and
nothing is written to stdout on an error path.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .dsl import BUILTIN_DESCRIPTIONS, ScenarioSyntaxError, UnknownBuiltin, load_scenario
from .dutchbook import synthesize
from .model import (EvidenceQuery, StageOutOfRange, UnknownEvent, UnrealizableEvidence,
                    ValidationError, event_probability, format_rational)
from .reflection import Flag, detect_violations
from .reproduce import paper_rows
from .rules import RuleId, credence, update
from .simulation import SamplingMode, run

RULE_NAMES = [r.value for r in RuleId]
MODE_NAMES = [m.value for m in SamplingMode]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.6f}"
    if v is None:
        return ""
    if hasattr(v, "denominator"):
        return format_rational(v)
    return str(v)


def render(header, rows, fmt):
    rows = [[_fmt(v) for v in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(n) for h, n in zip(header, widths)).rstrip()]
    lines += ["  ".join(c.ljust(n) for c, n in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _cmd_credence(a):
    s = load_scenario(a.scenario)
    q = EvidenceQuery(a.stage, a.evidence)
    d = update(s, a.rule, q)
    out = render(["world", "credence"], [[w, v] for w, v in d.items()], a.format)
    if a.event:
        value = event_probability(d, s.event(a.event))
        if a.format == "csv":
            out += render(["event", "credence"], [[a.event, value]], "csv")
        else:
            out += f"{a.event} = {format_rational(value)}\n"
    return out


def _cmd_reflect(a):
    s = load_scenario(a.scenario)
    report = detect_violations(s, a.rule, a.event)
    flags = list(Flag)
    header = ["from", "to_stage", "event", "before", "after"] + [f.value for f in flags] + [
        "severity"]
    rows = [[str(v.from_point), v.to_stage, v.event, v.value_before, v.value_after]
            + [int(f in v.flags) for f in flags] + [v.severity]
            for v in report.violations]
    out = render(header, rows, a.format)
    if not rows and a.format == "table":
        out += f"no Reflection violations for {a.rule} on {s.name}, event {a.event}\n"
    return out


def _cmd_dutchbook(a):
    s = load_scenario(a.scenario)
    events = [e for e in a.events.split(",") if e]
    for e in events:
        s.event(e)
    sched = synthesize(s, a.rule, events, a.max_stage)
    if sched is None:
        return "NO DUTCH BOOK (infeasible)\n"
    out = render(["point", "event", "stake", "price"],
                 [[str(b.point), b.event, b.stake, b.price] for b in sched.bets], a.format)
    out += "\n" if a.format == "table" else ""
    out += render(["world", "payoff"], list(sched.per_world_payoff.items()), a.format)
    if a.format == "table":
        out += f"guaranteed loss = {format_rational(sched.guaranteed_loss)}\n"
    else:
        out += render(["guaranteed_loss"], [[sched.guaranteed_loss]], "csv")
    return out


def _cmd_simulate(a):
    s = load_scenario(a.scenario)
    q = EvidenceQuery(a.stage, a.evidence)
    event = s.event(a.event)
    analytic = credence(s, a.analytic, q, event) if a.analytic else None
    rep = run(s, a.mode, q, event, a.trials, a.seed, analytic=analytic, workers=a.workers)
    header = ["mode", "trials", "seed", "denominator_count", "numerator_count",
              "estimate", "analytic", "abs_error"]
    row = [rep.mode.value, rep.trials, rep.seed, rep.denominator_count,
           rep.numerator_count, rep.estimate, rep.analytic, rep.abs_error]
    out = render(header, [row], a.format)
    if rep.zero_denominator:
        a._stderr.write("warning: zero denominator, no trial matched the evidence\n")
    return out


def _cmd_list(a):
    return render(["name", "description"], list(BUILTIN_DESCRIPTIONS.items()), a.format)


def _cmd_check(a):
    rows = paper_rows()
    out = render(["result", "check", "expected", "actual"],
                 [["PASS" if r.passed else "FAIL", r.name, _show(r.expected), _show(r.actual)]
                  for r in rows], a.format)
    a._failed = not all(r.passed for r in rows)
    return out


def _show(v):
    if isinstance(v, tuple):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return _fmt(v)


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    p = _Parser(prog="selfloc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["table", "csv"], default="table")
        sp.set_defaults(func=func)
        return sp

    sp = add("credence", _cmd_credence, "world credences under a rule")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--rule", required=True, choices=RULE_NAMES)
    sp.add_argument("--stage", required=True, type=_pos_int)
    sp.add_argument("--evidence", required=True)
    sp.add_argument("--event")

    sp = add("reflect", _cmd_reflect, "Reflection-Principle audit")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--rule", required=True, choices=RULE_NAMES)
    sp.add_argument("--event", required=True)

    sp = add("dutchbook", _cmd_dutchbook, "synthesize a fair Dutch book")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--rule", required=True, choices=RULE_NAMES)
    sp.add_argument("--events", required=True)
    sp.add_argument("--max-stage", required=True, type=_nonneg_int)

    sp = add("simulate", _cmd_simulate, "Monte Carlo frequency estimate")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--mode", required=True, choices=MODE_NAMES)
    sp.add_argument("--stage", required=True, type=_pos_int)
    sp.add_argument("--evidence", required=True)
    sp.add_argument("--event", required=True)
    sp.add_argument("--trials", required=True, type=_pos_int)
    sp.add_argument("--seed", required=True, type=_nonneg_int)
    sp.add_argument("--analytic", choices=RULE_NAMES)
    sp.add_argument("--workers", type=_pos_int, default=1)

    add("list-builtins", _cmd_list, "list builtin scenarios")
    add("check", _cmd_check, "reproduce the published values")
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        a._failed = False
        a._stderr = stderr
        out = a.func(a)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 1
    except SystemExit as exc:
        # --help
        return 0 if exc.code in (0, None) else 1
    except (ScenarioSyntaxError, ValidationError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except UnrealizableEvidence as exc:
        stderr.write(f"{exc}\n")
        return 2
    except (UnknownEvent, UnknownBuiltin, StageOutOfRange) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # invariant failures surface as exit 3
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 3
    stdout.write(out)
    return 3 if a._failed else 0


def run_cli(argv):
    """Run with captured streams; returns ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
