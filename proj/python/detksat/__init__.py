"""Deterministic k-SAT toolkit."""

import json

from ._core import (  # noqa: F401
    ParseError,
    PreconditionError,
    bounds,
    brute_force,
    c3,
    chain_lambda,
    chain_table_mismatches,
    ell_for,
    generate,
)
from ._core import solve as _solve


def solve(dimacs: str, mode: str = "full", threads: int = 1) -> dict:
    """Run report as a dict."""
    return json.loads(_solve(dimacs, mode, threads))
