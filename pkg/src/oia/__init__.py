"""Two-way optical interference automata: exact optics, engine, zoo, harness."""

from .geometry import GridPoint, grid_limit, is_visible, squared_distance, visible_sources
from .optics import (
    CoincidentSourceError,
    Phase,
    detector_bit,
    intensity_field,
    intensity_numeric,
    is_zero_intensity,
    new_sources,
    two_wave_intensity,
)
from .machine import (
    CENT,
    DOLLAR,
    Affine,
    Diagnostic,
    MachineDef,
    MachineParseError,
    TransitionEntry,
    parse_machine,
    serialize_machine,
    validate,
)
from .engine import RunResult, default_max_moves, run

__all__ = [
    "GridPoint",
    "grid_limit",
    "is_visible",
    "visible_sources",
    "squared_distance",
    "Phase",
    "CoincidentSourceError",
    "new_sources",
    "is_zero_intensity",
    "detector_bit",
    "intensity_numeric",
    "intensity_field",
    "two_wave_intensity",
    "CENT",
    "DOLLAR",
    "Affine",
    "Diagnostic",
    "MachineDef",
    "MachineParseError",
    "TransitionEntry",
    "parse_machine",
    "serialize_machine",
    "validate",
    "RunResult",
    "run",
    "default_max_moves",
]

__version__ = "0.1.0"
