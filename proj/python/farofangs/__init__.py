"""FARO loss and FANGS point estimation for binary feature allocations."""

from ._core import (
    ConfigError,
    DimensionError,
    FarofangsError,
    ParseError,
    SizeError,
    __version__,
    adjacency,
    draws,
    expected_loss,
    fangs,
    faro_loss,
    format_faz,
    gen_hamming,
    left_order,
    parse_faz,
    psm_score,
    read_faz,
    sifa,
    solve_lap,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "FarofangsError",
    "ParseError",
    "SizeError",
    "__version__",
    "adjacency",
    "draws",
    "expected_loss",
    "fangs",
    "faro_loss",
    "format_faz",
    "gen_hamming",
    "left_order",
    "parse_faz",
    "psm_score",
    "read_faz",
    "sifa",
    "solve_lap",
]
