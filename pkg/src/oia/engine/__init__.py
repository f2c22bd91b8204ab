"""Operational semantics: dispatch loop, outcomes, trace emission.

Two interchangeable kernels execute the dispatch loop: a compiled extension
(``_ckernel``, built from Cython) and a pure-Python fallback.  The fallback
is always used for traced runs, which are rare and need formatted output;
untraced runs take whichever backend is active.  Both implement identical
semantics and the test suite cross-checks them when the extension is built.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..geometry import GridPoint
from ..machine import MachineDef
from ..optics import Phase, new_sources
from .compile import CompiledMachine, compile_machine, encode_tape
from ._pykernel import (
    OUT_ACCEPT,
    OUT_CRASH,
    OUT_ENGINE_ERROR,
    OUT_REJECT,
    OUT_STEP_LIMIT,
    OUT_STUCK,
    OUTCOME_NAMES,
    run_kernel as _run_py,
)

try:  # pragma: no cover - depends on the build environment
    from ._ckernel import run_kernel_c as _run_c

    HAVE_C_KERNEL = True
except ImportError:  # pragma: no cover
    _run_c = None
    HAVE_C_KERNEL = False

DEFAULT_BACKEND = "c" if HAVE_C_KERNEL else "py"

__all__ = [
    "RunResult",
    "Configuration",
    "initial_config",
    "run",
    "run_compiled",
    "compile_machine",
    "encode_tape",
    "default_max_moves",
    "OUTCOME_NAMES",
    "OUT_ACCEPT",
    "OUT_REJECT",
    "OUT_STUCK",
    "OUT_CRASH",
    "OUT_STEP_LIMIT",
    "OUT_ENGINE_ERROR",
    "HAVE_C_KERNEL",
    "DEFAULT_BACKEND",
]


def default_max_moves(n: int) -> int:
    """Move budget covering the cubic-time constructions with slack."""
    return 50 * (n + 2) ** 3 + 10**6


@dataclass
class Configuration:
    """Instantaneous description plus the artifact-level bookkeeping."""

    state: str
    head: int
    det: "GridPoint"
    sources: list[Phase]
    run_lengths: list[int]  # current consecutive-toggle run per source
    closed_odd_runs: list[int]
    moves: int = 0


def initial_config(machine: MachineDef, word: str) -> Configuration:
    """The starting configuration: head on the left endmarker, all dark."""
    n = len(word)
    ncells = n + 2
    det = machine.initial_detector(n)
    if not det.in_bounds(n):
        raise ValueError(f"detector start {det} out of bounds for n={n}")
    return Configuration(
        state=machine.start,
        head=0,
        det=det,
        sources=new_sources(n),
        run_lengths=[0] * ncells,
        closed_odd_runs=[0] * ncells,
    )


@dataclass(frozen=True)
class RunResult:
    outcome: str  # Accept | Reject | Stuck | Crash | StepLimit | EngineError
    moves: int
    halt_state: str
    reason: str = ""
    trace: tuple[str, ...] | None = None

    @property
    def accepted(self) -> bool:
        return self.outcome == "Accept"

    @property
    def code(self) -> int:
        return OUTCOME_NAMES.index(self.outcome)


def run_compiled(
    cm: CompiledMachine,
    tape: list[int],
    det_gx: int,
    det_gy: int,
    max_moves: int,
    trace: bool = False,
    backend: str | None = None,
    toggle_events: list[int] | None = None,
) -> RunResult:
    """Run a compiled machine on an encoded tape."""
    backend = backend or DEFAULT_BACKEND
    lines: list[str] | None = [] if trace else None
    if trace or toggle_events is not None or backend == "py":
        out, moves, state, reason = _run_py(
            cm, tape, det_gx, det_gy, max_moves, lines, toggle_events
        )
    elif backend == "c":
        if _run_c is None:
            raise RuntimeError("compiled kernel not available")
        out, moves, state, reason = _run_c(cm, tape, det_gx, det_gy, max_moves)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return RunResult(
        outcome=OUTCOME_NAMES[out],
        moves=moves,
        halt_state=cm.state_names[state],
        reason=reason,
        trace=tuple(lines) if lines is not None else None,
    )


def run(
    machine: MachineDef,
    word: str,
    max_moves: int | None = None,
    trace: bool = False,
    backend: str | None = None,
) -> RunResult:
    """Run a machine on an input word; never raises for in-model failures."""
    cm = compile_machine(machine)
    tape = encode_tape(machine, word)
    n = len(word)
    det = machine.initial_detector(n)
    if max_moves is None:
        max_moves = default_max_moves(n)
    return run_compiled(cm, tape, det.gx, det.gy, max_moves, trace=trace, backend=backend)
