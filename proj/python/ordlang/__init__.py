"""Ordinal-indexed loop programs and their time hierarchy."""

from ._ordlang import (
    Error,
    FuelExhausted,
    Ordinal,
    ParseError,
    Program,
    classify,
    classify_program,
    omega_pow,
    parse_program,
    run,
    runtime_bound,
    simulate,
    size,
    synthesize,
    tower,
    verify,
    wainer,
)

__all__ = [
    "Error",
    "FuelExhausted",
    "Ordinal",
    "ParseError",
    "Program",
    "classify",
    "classify_program",
    "omega_pow",
    "parse_program",
    "run",
    "runtime_bound",
    "simulate",
    "size",
    "synthesize",
    "tower",
    "verify",
    "wainer",
]
