"""Command-line surface: run machines, batch-test them, export fields.

Exit codes are a stable contract: 0 Accept, 1 Reject, 2 Stuck, 3 Crash,
4 StepLimit, 5 error (bad files, bad flags, engine errors).
"""

from __future__ import annotations

import argparse
import sys

from . import oracles
from .engine import run
from .machine import MachineDef, MachineParseError, parse_machine, validate
from .optics import Phase, intensity_field, new_sources
from .zoo import MACHINE_NAMES, build_machine, default_max_moves_for

EXIT_ERROR = 5


def _load_machine(args) -> tuple[MachineDef, str | None]:
    if bool(args.name) == bool(args.file):
        raise SystemExit2("exactly one of --name/--file is required")
    if args.name:
        if args.name not in MACHINE_NAMES:
            raise SystemExit2(f"unknown bundled machine {args.name!r}")
        return build_machine(args.name), args.name
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        machine = parse_machine(text)
    except (OSError, MachineParseError) as exc:
        raise SystemExit2(str(exc)) from exc
    errors = [d for d in validate(machine) if d.severity == "error"]
    if errors:
        raise SystemExit2("; ".join(map(str, errors)))
    return machine, None


class SystemExit2(Exception):
    """CLI failure carrying a diagnostic; mapped to exit code 5."""


def cmd_run(args) -> int:
    machine, name = _load_machine(args)
    max_moves = args.max_moves
    if max_moves is None and name is not None:
        max_moves = default_max_moves_for(name, len(args.input))
    result = run(machine, args.input, max_moves=max_moves, trace=args.trace)
    out = sys.stdout
    close = None
    if args.out:
        out = close = open(args.out, "w", encoding="utf-8")
    try:
        if args.trace:
            for line in result.trace:
                print(line, file=out)
        print(f"{result.outcome} moves={result.moves}", file=out)
        if result.reason:
            print(f"reason: {result.reason}", file=out)
    finally:
        if close:
            close.close()
    return result.code


def cmd_test(args) -> int:
    if args.name not in MACHINE_NAMES:
        raise SystemExit2(f"unknown bundled machine {args.name!r}")
    machine = build_machine(args.name)
    report = oracles.differential_test(
        machine, args.name, args.max_len, n_max=args.n_max, m_max=args.m_max
    )
    print(report.render())
    return 0 if report.passed else 1


def cmd_field(args) -> int:
    try:
        n, sources = _parse_statefile(args.statefile)
    except (OSError, ValueError) as exc:
        raise SystemExit2(str(exc)) from exc
    rows = intensity_field(sources, n, wavelength=args.wavelength)
    out = sys.stdout
    close = None
    if args.out:
        out = close = open(args.out, "w", encoding="utf-8")
    try:
        print("gx,gy,intensity", file=out)
        for gx, gy, value in rows:
            print(f"{gx},{gy},{value!r}", file=out)
    finally:
        if close:
            close.close()
    return 0


def _parse_statefile(path: str) -> tuple[int, list[Phase]]:
    """State file: an `n=<int>` line, then `source <cell> <0|pi>` lines."""
    n = None
    pending: list[tuple[int, Phase]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("n="):
                n = int(line[2:])
            elif line.startswith("source"):
                parts = line.split()
                if len(parts) != 3 or parts[2] not in ("0", "pi"):
                    raise ValueError(f"line {lineno}: malformed source line {line!r}")
                phase = Phase.P0 if parts[2] == "0" else Phase.PPI
                pending.append((int(parts[1]), phase))
            else:
                raise ValueError(f"line {lineno}: unknown directive {line!r}")
    if n is None:
        raise ValueError("statefile missing n=<int> line")
    sources = new_sources(n)
    for cell, phase in pending:
        if not 0 <= cell <= n + 1:
            raise ValueError(f"source cell {cell} out of range 0..{n + 1}")
        sources[cell] = phase
    return n, sources


def cmd_validate(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            machine = parse_machine(fh.read())
    except (OSError, MachineParseError) as exc:
        print(f"error: {exc}")
        return 1
    diags = validate(machine)
    for d in diags:
        print(d)
    errors = [d for d in diags if d.severity == "error"]
    print(f"{len(errors)} error(s), {len(diags) - len(errors)} warning(s)")
    return 0 if not errors else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oia", description="Two-way optical interference automata toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a machine on an input word")
    p_run.add_argument("--name", help="bundled machine name")
    p_run.add_argument("--file", help="machine file path")
    p_run.add_argument("--input", required=True, help="input word")
    p_run.add_argument("--trace", action="store_true", help="emit the step trace")
    p_run.add_argument("--max-moves", type=int, default=None)
    p_run.add_argument("--out", help="write output to a file instead of stdout")
    p_run.set_defaults(func=cmd_run)

    p_test = sub.add_parser("test", help="differential-test a bundled machine")
    p_test.add_argument("--name", required=True)
    p_test.add_argument("--max-len", type=int, default=10)
    p_test.add_argument("--n-max", type=int, default=None)
    p_test.add_argument("--m-max", type=int, default=None)
    p_test.set_defaults(func=cmd_test)

    p_field = sub.add_parser("field", help="export a numeric intensity field as CSV")
    p_field.add_argument("statefile", help="file with n=<int> and source lines")
    p_field.add_argument("--lambda", dest="wavelength", type=float, default=3.141592653589793)
    p_field.add_argument("--out", help="CSV output path (default stdout)")
    p_field.set_defaults(func=cmd_field)

    p_val = sub.add_parser("validate", help="parse and validate a machine file")
    p_val.add_argument("file")
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
