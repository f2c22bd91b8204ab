"""Pure-Python run kernel: the reference semantics, with optional tracing.

One dispatch applies, in order: toggle at the head cell, head move, state
change, then the detector micro-moves (vertical gridlines first, then
horizontal), re-sampling the detector bit after every micro-move and
abandoning the remainder of the move the moment the bit differs from the one
the dispatch fired on.  Toggle runs are classified only when they close: a
maximal run of consecutive dispatches toggling the same source counts
against that source's budget iff its length is odd, and the machine crashes
at the close that pushes a source past the budget.
"""

from __future__ import annotations

from .compile import FLAG_ACCEPT, FLAG_REJECT, NO_ENTRY, CompiledMachine

OUT_ACCEPT = 0
OUT_REJECT = 1
OUT_STUCK = 2
OUT_CRASH = 3
OUT_STEP_LIMIT = 4
OUT_ENGINE_ERROR = 5

OUTCOME_NAMES = ["Accept", "Reject", "Stuck", "Crash", "StepLimit", "EngineError"]

_TOGGLE_ACTS = {1: "toggle:0", 2: "toggle:pi"}


def _bit(src: list[int], ncells: int, gx: int, gy: int) -> int:
    """Exact detector bit: 0 iff every visible distance class cancels.

    Returns -1 to flag an ON source coincident with the detector.
    """
    lo = -(-(gx - gy) // 2)
    if lo < 0:
        lo = 0
    hi = (gx + gy) // 2
    if hi > ncells - 1:
        hi = ncells - 1
    for s in range(lo, hi + 1):
        p = src[s]
        if p == 0:
            continue
        d = 2 * s - gx
        if d == 0:
            if gy == 0:
                return -1
            return 1
        mirror = gx - s
        if mirror < 0 or mirror > ncells - 1:
            return 1
        q = src[mirror]
        if q == 0 or q == p:
            return 1
    return 0


def run_kernel(
    cm: CompiledMachine,
    tape: list[int],
    det_gx: int,
    det_gy: int,
    max_moves: int,
    trace: list[str] | None = None,
    toggle_events: list[int] | None = None,
) -> tuple[int, int, int, str]:
    """Run to halt; returns (outcome, moves, halt_state, reason).

    ``trace``, when given, receives formatted trace lines.  ``toggle_events``
    receives the toggled cell per dispatch (-1 when none); tests replay it
    through an independent run classifier.
    """
    ncells = len(tape)
    n = ncells - 2
    limit = 2 * (n + 1)
    src = [0] * ncells
    counts = [0] * ncells
    open_cell = -1
    open_len = 0

    state = cm.start
    head = 0
    gx, gy = det_gx, det_gy
    moves = 0
    dispatches = 0

    names = cm.state_names
    syms = cm.sym_names

    def emit(act: str, bit: int, note: str | None = None) -> None:
        line = (
            f"move={moves} state={names[state]} head={head} sym={syms[tape[head]]} "
            f"det={gx},{gy} bit={bit} act={act}"
        )
        if note:
            line += f" note={note}"
        trace.append(line)

    if not (0 <= gx <= limit and 0 <= gy <= limit):
        return OUT_ENGINE_ERROR, 0, state, f"detector start ({gx},{gy}) out of bounds"

    if trace is not None:
        b0 = _bit(src, ncells, gx, gy)
        emit("-", b0 if b0 >= 0 else 0)

    while True:
        bit = _bit(src, ncells, gx, gy)
        if bit < 0:
            return OUT_ENGINE_ERROR, moves, state, "ON source coincident with detector"

        flag = cm.flags[state]
        if flag != 0:
            # Halting: close any open toggle run first; a budget overrun
            # at this close supersedes the normal outcome.
            if open_len > 0 and open_len % 2 == 1:
                counts[open_cell] += 1
                if trace is not None:
                    emit("-", bit, "run-closed:odd")
                if counts[open_cell] > cm.budget:
                    return OUT_CRASH, moves, state, f"toggle budget exceeded at cell {open_cell}"
            elif open_len > 0 and trace is not None:
                emit("-", bit, "run-closed:even")
            if flag == FLAG_ACCEPT:
                if bit == 0:
                    return OUT_ACCEPT, moves, state, ""
                return OUT_REJECT, moves, state, "accept state with detector bit 1"
            return OUT_REJECT, moves, state, ""

        if moves > max_moves or dispatches > max_moves:
            return OUT_STEP_LIMIT, moves, state, "move budget exhausted"
        dispatches += 1

        i = (state * cm.nsyms + tape[head]) * 2 + bit
        nxt = cm.next_state[i]
        note = None

        # Ledger update happens per dispatch, before the toggle applies.
        tog = cm.toggle[i] if nxt != NO_ENTRY else 0
        tcell = head if tog else -1
        if toggle_events is not None and nxt != NO_ENTRY:
            toggle_events.append(tcell)
        if open_len > 0 and open_cell != tcell:
            if open_len % 2 == 1:
                counts[open_cell] += 1
                note = "run-closed:odd"
                if counts[open_cell] > cm.budget:
                    if trace is not None:
                        emit("-", bit, note)
                    return OUT_CRASH, moves, state, f"toggle budget exceeded at cell {open_cell}"
            else:
                note = "run-closed:even"
            open_cell, open_len = -1, 0

        if nxt == NO_ENTRY:
            if trace is not None:
                emit("-", bit, note)
            return OUT_STUCK, moves, state, f"no entry for ({names[state]},{syms[tape[head]]},{bit})"

        if trace is not None:
            emit(_TOGGLE_ACTS.get(tog, "-"), bit, note)

        if tcell >= 0:
            if open_cell == tcell:
                open_len += 1
            else:
                open_cell, open_len = tcell, 1
            src[tcell] = tog if src[tcell] == 0 else 0

        hm = cm.head_move[i]
        if hm != 0:
            head += hm
            if head < 0 or head > ncells - 1:
                return OUT_ENGINE_ERROR, moves, state, "head out of bounds"
            moves += 1
            if trace is not None:
                emit(f"head:{hm:+d}", bit)

        state = nxt

        dgx, dgy = cm.dgx[i], cm.dgy[i]
        total = abs(dgx) + abs(dgy)
        done = 0
        # Vertical micro-moves first, then horizontal.
        for axis, delta in (("y", dgy), ("x", dgx)):
            step = 1 if delta > 0 else -1
            for _ in range(abs(delta)):
                if axis == "y":
                    gy += step
                else:
                    gx += step
                if not (0 <= gx <= limit and 0 <= gy <= limit):
                    return OUT_ENGINE_ERROR, moves, state, "detector out of bounds"
                moves += 1
                done += 1
                newbit = _bit(src, ncells, gx, gy)
                if newbit < 0:
                    return OUT_ENGINE_ERROR, moves, state, "ON source coincident with detector"
                if newbit != bit:
                    if trace is not None:
                        emit(
                            f"det:{'+' if step > 0 else '-'}{axis}",
                            newbit,
                            "bit-change" if done < total else None,
                        )
                    done = total + 1  # abandon remaining micro-moves
                    break
                if trace is not None:
                    emit(f"det:{'+' if step > 0 else '-'}{axis}", newbit)
            if done > total:
                break
