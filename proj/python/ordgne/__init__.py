"""Solver and verifier for generalized ordinal Nash games."""

from ._ordgne import (
    Game,
    OrdgneError,
    __version__,
    brute_force_gne,
    check_gne_grid,
    check_svip,
    example,
    example_names,
    load_problem,
    parse_problem,
    run_cli,
    selection,
    solve,
)

__all__ = [
    "Game",
    "OrdgneError",
    "brute_force_gne",
    "check_gne_grid",
    "check_svip",
    "example",
    "example_names",
    "load_problem",
    "parse_problem",
    "run_cli",
    "selection",
    "solve",
]
