"""Constructive reductions between the problems handled by this package."""
