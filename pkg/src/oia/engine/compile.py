"""Lower a MachineDef into dense integer tables for the run kernels.

Both kernels (pure Python and the compiled extension) consume this form:
states and tape symbols become small integers, the transition table a flat
array indexed by (state, symbol, bit).  Symbol 0 is the left endmarker,
symbol 1 the right endmarker, input letters follow in alphabet order.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..machine import CENT, DOLLAR, MachineDef
from ..optics import Phase

SYM_CENT = 0
SYM_DOLLAR = 1

NO_ENTRY = -1
FLAG_NORMAL = 0
FLAG_ACCEPT = 1
FLAG_REJECT = 2


@dataclass
class CompiledMachine:
    name: str
    nstates: int
    nsyms: int
    start: int
    budget: int
    flags: list[int]  # per state
    next_state: list[int]  # [state][sym][bit] flattened; NO_ENTRY if unmapped
    head_move: list[int]
    dgx: list[int]
    dgy: list[int]
    toggle: list[int]  # 0 none, 1 phase 0, 2 phase pi
    state_names: list[str]
    sym_names: list[str]

    def index(self, state: int, sym: int, bit: int) -> int:
        return (state * self.nsyms + sym) * 2 + bit


def compile_machine(m: MachineDef) -> CompiledMachine:
    state_names = list(m.states)
    state_ids = {s: i for i, s in enumerate(state_names)}
    sym_names = m.tape_symbols()
    sym_ids = {s: i for i, s in enumerate(sym_names)}

    nstates, nsyms = len(state_names), len(sym_names)
    size = nstates * nsyms * 2
    next_state = [NO_ENTRY] * size
    head_move = [0] * size
    dgx = [0] * size
    dgy = [0] * size
    toggle = [0] * size

    for (state, sym, bit), e in m.table.items():
        i = (state_ids[state] * nsyms + sym_ids[sym]) * 2 + bit
        next_state[i] = state_ids[e.next_state]
        head_move[i] = e.head_move
        dgx[i] = e.dgx
        dgy[i] = e.dgy
        toggle[i] = 0 if e.toggle is None else (1 if e.toggle is Phase.P0 else 2)

    flags = [FLAG_NORMAL] * nstates
    for s in m.accept:
        flags[state_ids[s]] = FLAG_ACCEPT
    for s in m.reject:
        flags[state_ids[s]] = FLAG_REJECT

    return CompiledMachine(
        name=m.name,
        nstates=nstates,
        nsyms=nsyms,
        start=state_ids[m.start],
        budget=m.budget,
        flags=flags,
        next_state=next_state,
        head_move=head_move,
        dgx=dgx,
        dgy=dgy,
        toggle=toggle,
        state_names=state_names,
        sym_names=sym_names,
    )


def encode_tape(m: MachineDef, word: str) -> list[int]:
    sym_ids = {s: i for i, s in enumerate(m.tape_symbols())}
    try:
        middle = [sym_ids[ch] for ch in word]
    except KeyError as exc:
        raise ValueError(f"input symbol {exc.args[0]!r} not in alphabet") from exc
    return [SYM_CENT, *middle, SYM_DOLLAR]
