"""Machine definitions: the automaton tuple, its text format, validation.

A machine file is line oriented, UTF-8, with ``#`` comments:

    machine <name>
    alphabet <sym> <sym> ...
    states <id> ...
    start <id>
    accept <id> ...
    reject <id> ...
    detector_start <gx-expr> <gy-expr>    # gridlines; "n+2"-style affine ok
    budget <k>
    entry <state> <symbol|CENT|DOLLAR> <0|1> -> <state> head=<-1|0|+1> det=<dgx>,<dgy> toggle=<0|pi|->

Endmarkers are spelled CENT and DOLLAR; they are tape symbols only.  The
detector start may depend affinely on the input length ``n`` because some
constructions position the detector relative to the end of the tape.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .geometry import GridPoint
from .optics import Phase

CENT = "CENT"
DOLLAR = "DOLLAR"

_AFFINE_RE = re.compile(r"^(?:(-?\d*)n)?([+-]?\d+)?$")


@dataclass(frozen=True, slots=True)
class Affine:
    """Gridline coordinate of the form coef*n + const."""

    coef: int = 0
    const: int = 0

    def __call__(self, n: int) -> int:
        return self.coef * n + self.const

    def __str__(self) -> str:
        if self.coef == 0:
            return str(self.const)
        head = "n" if self.coef == 1 else f"{self.coef}n"
        if self.const == 0:
            return head
        return f"{head}{self.const:+d}"

    @classmethod
    def parse(cls, text: str) -> "Affine":
        m = _AFFINE_RE.match(text)
        if m is None or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad affine coordinate {text!r}")
        coef = 0
        if m.group(1) is not None:
            raw = m.group(1)
            coef = 1 if raw in ("", "+") else -1 if raw == "-" else int(raw)
        const = int(m.group(2)) if m.group(2) is not None else 0
        return cls(coef, const)


@dataclass(frozen=True, slots=True)
class TransitionEntry:
    next_state: str
    head_move: int  # -1, 0, +1 tape cells
    dgx: int  # gridlines, |dgx| <= 2
    dgy: int  # gridlines, |dgy| <= 2
    toggle: Phase | None  # phase to toggle with, or None


@dataclass
class MachineDef:
    name: str
    alphabet: list[str]
    states: list[str]
    start: str
    accept: set[str]
    reject: set[str]
    detector_start: tuple[Affine, Affine]
    budget: int = 2
    table: dict[tuple[str, str, int], TransitionEntry] = field(default_factory=dict)
    notes: str = ""

    def tape_symbols(self) -> list[str]:
        return [CENT, DOLLAR, *self.alphabet]

    def initial_detector(self, n: int) -> GridPoint:
        gx, gy = self.detector_start
        return GridPoint(gx(n), gy(n))


@dataclass(frozen=True, slots=True)
class Diagnostic:
    line: int
    column: int
    severity: str  # "error" | "warning"
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class MachineParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_TOGGLE_TOKENS = {"0": Phase.P0, "pi": Phase.PPI, "-": None}
_TOGGLE_NAMES = {Phase.P0: "0", Phase.PPI: "pi", None: "-"}
_ENTRY_RE = re.compile(
    r"^entry\s+(\S+)\s+(\S+)\s+([01])\s+->\s+(\S+)\s+head=([+-]?\d+)\s+"
    r"det=([+-]?\d+),([+-]?\d+)\s+toggle=(0|pi|-)$"
)


def parse_machine(text: str) -> MachineDef:
    """Parse the machine file format; raises MachineParseError on bad input."""
    name = None
    alphabet: list[str] = []
    states: list[str] = []
    start = None
    accept: set[str] = set()
    reject: set[str] = set()
    detector_start = None
    budget = 2
    table: dict[tuple[str, str, int], TransitionEntry] = {}
    entry_lines: dict[tuple[str, str, int], int] = {}
    note_lines: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        comment = ""
        if "#" in raw:
            raw, comment = raw.split("#", 1)
            if comment.strip():
                note_lines.append(comment.strip())
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        directive = parts[0]
        try:
            if directive == "machine":
                name = parts[1]
            elif directive == "alphabet":
                alphabet = parts[1:]
            elif directive == "states":
                states.extend(parts[1:])
            elif directive == "start":
                start = parts[1]
            elif directive == "accept":
                accept.update(parts[1:])
            elif directive == "reject":
                reject.update(parts[1:])
            elif directive == "detector_start":
                detector_start = (Affine.parse(parts[1]), Affine.parse(parts[2]))
            elif directive == "budget":
                budget = int(parts[1])
            elif directive == "entry":
                m = _ENTRY_RE.match(line)
                if m is None:
                    raise MachineParseError(lineno, f"malformed entry: {line!r}")
                key = (m.group(1), m.group(2), int(m.group(3)))
                if key in table:
                    raise MachineParseError(
                        lineno,
                        f"duplicate entry for {key} (first at line {entry_lines[key]})",
                    )
                head = int(m.group(5))
                table[key] = TransitionEntry(
                    next_state=m.group(4),
                    head_move=head,
                    dgx=int(m.group(6)),
                    dgy=int(m.group(7)),
                    toggle=_TOGGLE_TOKENS[m.group(8)],
                )
                entry_lines[key] = lineno
            else:
                raise MachineParseError(lineno, f"unknown directive {directive!r}")
        except MachineParseError:
            raise
        except (IndexError, ValueError) as exc:
            raise MachineParseError(lineno, str(exc)) from exc

    if name is None:
        raise MachineParseError(0, "missing 'machine' directive")
    if start is None:
        raise MachineParseError(0, "missing 'start' directive")
    if detector_start is None:
        raise MachineParseError(0, "missing 'detector_start' directive")
    return MachineDef(
        name=name,
        alphabet=alphabet,
        states=states,
        start=start,
        accept=accept,
        reject=reject,
        detector_start=detector_start,
        budget=budget,
        table=table,
        notes="\n".join(note_lines),
    )


def validate(m: MachineDef) -> list[Diagnostic]:
    """Structural diagnostics, ordered by (line, column); parse gives no lines,
    so everything is reported at line 0 with column = ordinal."""
    diags: list[Diagnostic] = []
    col = 0

    def err(msg: str) -> None:
        nonlocal col
        col += 1
        diags.append(Diagnostic(0, col, "error", msg))

    def warn(msg: str) -> None:
        nonlocal col
        col += 1
        diags.append(Diagnostic(0, col, "warning", msg))

    declared = set(m.states)
    if m.start not in declared:
        err(f"start state {m.start!r} not declared")
    for s in sorted(m.accept | m.reject):
        if s not in declared:
            err(f"halt state {s!r} not declared")
    overlap = m.accept & m.reject
    if overlap:
        err(f"accept and reject sets overlap: {sorted(overlap)}")
    symbols = set(m.tape_symbols())
    for (state, sym, bit), entry in m.table.items():
        where = f"entry ({state},{sym},{bit})"
        if state not in declared:
            err(f"{where}: undeclared state {state!r}")
        if sym not in symbols:
            err(f"{where}: unknown symbol {sym!r}")
        if entry.next_state not in declared:
            err(f"{where}: undeclared target state {entry.next_state!r}")
        if entry.head_move not in (-1, 0, 1):
            err(f"{where}: head move {entry.head_move} out of range")
        if abs(entry.dgx) > 2 or abs(entry.dgy) > 2:
            err(f"{where}: detector displacement ({entry.dgx},{entry.dgy}) exceeds two gridlines")
    if m.budget < 1:
        err(f"toggle budget {m.budget} must be positive")
    # n >= 1 keeps affine starts meaningful; check representability at n = 1.
    det = m.initial_detector(1)
    if det.gx < 0 or det.gy < 0:
        err(f"detector start {det} has negative coordinates at n=1")

    halting = m.accept | m.reject
    for state in m.states:
        if state in halting:
            continue
        for sym in m.tape_symbols():
            for bit in (0, 1):
                if (state, sym, bit) not in m.table:
                    warn(f"unmapped triple ({state},{sym},{bit})")
    return diags


def serialize_machine(m: MachineDef) -> str:
    """Render a machine back into the file format (round-trips parse)."""
    lines = [f"machine {m.name}"]
    if m.alphabet:
        lines.append("alphabet " + " ".join(m.alphabet))
    lines.append("states " + " ".join(m.states))
    lines.append(f"start {m.start}")
    if m.accept:
        lines.append("accept " + " ".join(sorted(m.accept)))
    if m.reject:
        lines.append("reject " + " ".join(sorted(m.reject)))
    gx, gy = m.detector_start
    lines.append(f"detector_start {gx} {gy}")
    lines.append(f"budget {m.budget}")
    order = {s: i for i, s in enumerate(m.states)}
    symorder = {s: i for i, s in enumerate(m.tape_symbols())}
    for (state, sym, bit), e in sorted(
        m.table.items(),
        key=lambda kv: (order.get(kv[0][0], 99), symorder.get(kv[0][1], 99), kv[0][2]),
    ):
        lines.append(
            f"entry {state} {sym} {bit} -> {e.next_state} "
            f"head={e.head_move:+d} det={e.dgx},{e.dgy} toggle={_TOGGLE_NAMES[e.toggle]}"
        )
    return "\n".join(lines) + "\n"
