"""Direct membership deciders and the differential-test harness.

Each bundled machine has an independent oracle written as a plain string
check; the harness enumerates inputs exhaustively (or over the a^n b^m
family for the block-counting languages), runs the machine on each, and
compares acceptance with membership.  Non-Accept/Reject outcomes are
reported separately: reaching an unmapped table cell or crashing signals a
transcription bug even when the verdict happens to be right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .engine import compile_machine, encode_tape, run_compiled
from .machine import MachineDef

LANGUAGES = ("centre", "eq", "pal", "pal2", "bal", "sq", "pow")


def in_language(name: str, word: str) -> bool:
    """Direct check, independent of the machines."""
    if name == "centre":
        _check_alpha(word, "ab")
        return len(word) % 2 == 1 and word[len(word) // 2] == "a"
    if name == "eq":
        _check_alpha(word, "ab")
        n = len(word) // 2
        return len(word) >= 2 and word == "a" * n + "b" * n
    if name in ("pal", "pal2"):
        _check_alpha(word, "ab")
        return word == word[::-1] and len(word) % 2 == 0
    if name == "bal":
        _check_alpha(word, "()")
        depth = 0
        for ch in word:
            depth += 1 if ch == "(" else -1
            if depth < 0:
                return False
        return depth == 0
    if name == "sq":
        _check_alpha(word, "ab")
        n = word.count("a")
        return n >= 1 and word == "a" * n + "b" * (n * n)
    if name == "pow":
        _check_alpha(word, "ab")
        n = word.count("a")
        return n >= 1 and word == "a" * n + "b" * (2**n)
    raise ValueError(f"unknown language {name!r}")


def _check_alpha(word: str, alphabet: str) -> None:
    bad = set(word) - set(alphabet)
    if bad:
        raise ValueError(f"symbols {sorted(bad)} outside alphabet {alphabet!r}")


@dataclass
class DiffReport:
    machine: str
    tested: int = 0
    mismatches: list[tuple[str, str, bool]] = field(default_factory=list)
    abnormal: list[tuple[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.abnormal

    def render(self) -> str:
        lines = [
            f"machine={self.machine} tested={self.tested} "
            f"mismatches={len(self.mismatches)} abnormal={len(self.abnormal)} "
            f"verdict={'PASS' if self.passed else 'FAIL'}"
        ]
        for word, outcome, member in self.mismatches:
            lines.append(
                f"mismatch input={word!r} outcome={outcome} member={member}"
            )
        for word, outcome in self.abnormal:
            lines.append(f"abnormal input={word!r} outcome={outcome}")
        return "\n".join(lines)


def enumerate_inputs(
    name: str,
    machine: MachineDef,
    max_len: int,
    n_max: int | None = None,
    m_max: int | None = None,
    alphabet: list[str] | None = None,
):
    """Inputs for the differential test, in deterministic order.

    For the block-counting languages the interesting inputs live on the
    a^n b^m family, enumerated instead of the exponentially many strings.
    """
    if name in ("sq", "pow"):
        n_max = n_max if n_max is not None else (5 if name == "sq" else 4)
        m_max = m_max if m_max is not None else (30 if name == "sq" else 20)
        for n in range(1, n_max + 1):
            for m in range(0, m_max + 1):
                yield "a" * n + "b" * m
        return
    letters = alphabet if alphabet is not None else machine.alphabet
    for length in range(1, max_len + 1):
        for tup in product(letters, repeat=length):
            yield "".join(tup)


def differential_test(
    machine: MachineDef,
    name: str,
    max_len: int,
    n_max: int | None = None,
    m_max: int | None = None,
    alphabet: list[str] | None = None,
    max_moves_for: "callable | None" = None,
    backend: str | None = None,
) -> DiffReport:
    """Exhaustively compare machine acceptance against the oracle."""
    from .zoo import default_max_moves_for  # local import to avoid a cycle

    if max_moves_for is None:
        max_moves_for = lambda w: default_max_moves_for(name, len(w))
    cm = compile_machine(machine)
    report = DiffReport(machine=name)
    for word in enumerate_inputs(name, machine, max_len, n_max, m_max, alphabet):
        det = machine.initial_detector(len(word))
        result = run_compiled(
            cm,
            encode_tape(machine, word),
            det.gx,
            det.gy,
            max_moves_for(word),
            backend=backend,
        )
        report.tested += 1
        if result.outcome not in ("Accept", "Reject"):
            report.abnormal.append((word, result.outcome))
            continue
        member = in_language(name, word)
        if result.accepted != member:
            report.mismatches.append((word, result.outcome, member))
    return report


def canonical_member(name: str, size: int) -> str:
    """A member string used by the scaling probe; ``size`` is the family
    parameter (input length, or the block count for sq/pow)."""
    if name == "centre":
        k = size if size % 2 == 1 else size + 1
        half = (k - 1) // 2
        return "b" * half + "a" + "b" * half
    if name == "eq":
        k = size // 2
        return "a" * k + "b" * k
    if name in ("pal", "pal2"):
        k = size // 2
        # Alternating halves keep both letter chains busy.
        left = "".join("ab"[i % 2] for i in range(k))
        return left + left[::-1]
    if name == "bal":
        k = size // 2
        return "(" * k + ")" * k
    if name == "sq":
        return "a" * size + "b" * (size * size)
    if name == "pow":
        return "a" * size + "b" * (2**size)
    raise ValueError(f"unknown language {name!r}")


def scaling_probe(
    machine: MachineDef, name: str, sizes: list[int], backend: str | None = None
) -> list[tuple[int, int]]:
    """Move counts on canonical members; raises if a member fails to accept."""
    from .zoo import default_max_moves_for

    cm = compile_machine(machine)
    points = []
    for size in sizes:
        word = canonical_member(name, size)
        if not in_language(name, word):
            raise ValueError(f"canonical {name} member for size {size} is wrong")
        det = machine.initial_detector(len(word))
        result = run_compiled(
            cm,
            encode_tape(machine, word),
            det.gx,
            det.gy,
            default_max_moves_for(name, len(word)),
            backend=backend,
        )
        if not result.accepted:
            raise ValueError(
                f"machine {name} gave {result.outcome} on canonical member {word!r}"
            )
        points.append((size, result.moves))
    return points


def loglog_slope(points: list[tuple[int, int]]) -> float:
    """Least-squares slope of log(moves) against log(size)."""
    xs = [math.log(p[0]) for p in points]
    ys = [math.log(p[1]) for p in points]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den = sum((x - mean_x) ** 2 for x in xs)
    return num / den
