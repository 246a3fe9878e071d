"""Three-valued verdicts with witnesses, and report containers.

A Verdict is the result of a decision procedure: Holds, Fails with a
canonical witness, or Unknown with the search bound that was exhausted.
Witnesses are plain JSON-serializable data (lists, dicts, strings,
ints) so verdicts can be rendered byte-identically by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field

HOLDS = "Holds"
FAILS = "Fails"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    witness: object = None
    note: str = ""
    rule: str = ""
    caveats: tuple = ()

    def __post_init__(self):
        if self.outcome not in (HOLDS, FAILS, UNKNOWN):
            raise ValueError(f"bad outcome: {self.outcome!r}")

    def __bool__(self):
        # Unknown is not Holds: three-valued logic must stay explicit.
        if self.outcome == UNKNOWN:
            raise ValueError("Unknown verdict has no truth value")
        return self.outcome == HOLDS

    @property
    def holds(self):
        return self.outcome == HOLDS

    @property
    def fails(self):
        return self.outcome == FAILS

    @property
    def unknown(self):
        return self.outcome == UNKNOWN

    def to_json(self):
        out = {"outcome": self.outcome}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        if self.rule:
            out["rule"] = self.rule
        if self.caveats:
            out["caveats"] = list(self.caveats)
        return out

    def render(self):
        out = self.outcome
        if self.witness is not None:
            out += f" ({_compact(self.witness)})"
        if self.note:
            out += f" | {self.note}"
        for caveat in self.caveats:
            out += f" | caveat: {caveat}"
        return out


def holds(note="", rule="", caveats=()):
    return Verdict(HOLDS, None, note, rule, tuple(caveats))


def fails(witness, note="", rule="", caveats=()):
    return Verdict(FAILS, witness, note, rule, tuple(caveats))


def unknown(bound, note="", rule="", caveats=()):
    return Verdict(UNKNOWN, None, note, rule, tuple(caveats) + (f"bound={bound}",))


def _compact(value):
    if isinstance(value, dict):
        return ", ".join(f"{k}: {_compact(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        if any(isinstance(v, (dict, list, tuple)) for v in value):
            if len(value) <= 3:
                return "; ".join("[" + _compact(v) + "]" for v in value)
            return f"{len(value)} rows"
        return ",".join(_compact(v) for v in value)
    return str(value)


@dataclass
class Report:
    """Named checks with verdicts, a conclusion line, and free-form notes.

    The rule field on each verdict records which decision rule produced
    it, so a report is traceable check by check.
    """

    kind: str
    subject: str
    checks: dict = field(default_factory=dict)
    conclusion: str = ""
    notes: list = field(default_factory=list)

    def add(self, name, verdict):
        self.checks[name] = verdict

    def to_json(self):
        return {
            "kind": self.kind,
            "subject": self.subject,
            "checks": {k: v.to_json() for k, v in self.checks.items()},
            "conclusion": self.conclusion,
            "notes": list(self.notes),
        }

    def render(self):
        lines = [f"{self.kind} report: {self.subject}"]
        for name, verdict in self.checks.items():
            lines.append(f"  {name}: {verdict.render()}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        lines.append(f"conclusion: {self.conclusion}")
        return "\n".join(lines)
