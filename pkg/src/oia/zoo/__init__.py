"""The bundled machines, loaded from their text files and validated."""

from __future__ import annotations

from importlib import resources

from ..engine import default_max_moves
from ..machine import MachineDef, parse_machine, validate

MACHINE_NAMES = ("centre", "eq", "pal", "pal2", "bal", "sq", "pow")


def machine_text(name: str) -> str:
    if name not in MACHINE_NAMES:
        raise ValueError(f"unknown machine {name!r}; pick from {MACHINE_NAMES}")
    return (
        resources.files("oia.zoo")
        .joinpath(f"machines/{name}.oia")
        .read_text(encoding="utf-8")
    )


def build_machine(name: str) -> MachineDef:
    m = parse_machine(machine_text(name))
    errors = [d for d in validate(m) if d.severity == "error"]
    if errors:  # bundled files must stay clean
        raise ValueError(f"bundled machine {name} invalid: {errors}")
    return m


def machine_notes(name: str) -> str:
    """The CORRECTIONS comment block of a bundled file, verbatim."""
    lines = []
    for raw in machine_text(name).splitlines():
        stripped = raw.strip()
        if stripped.startswith("#"):
            lines.append(stripped.lstrip("# "))
        elif stripped:
            break
    return "\n".join(lines)


def default_max_moves_for(name: str, n: int) -> int:
    """Move budget; the power-of-two machine needs an exponential allowance."""
    if name == "pow":
        return 50 * (n + 2) * 2 ** min(n + 2, 40) + 10**6
    return default_max_moves(n)
