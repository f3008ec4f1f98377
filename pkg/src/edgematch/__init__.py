"""Edge-matching puzzles: solvers, reductions, games and exact oracles."""

__version__ = "0.1.0"
