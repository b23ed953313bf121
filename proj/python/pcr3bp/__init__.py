"""Exact Hansen and Fourier coefficients of the planar circular restricted
three-body perturbing function, and the zero sets of the latter."""

import json as _json

from ._core import (
    AtlasReport,
    DomainError,
    MethodError,
    __version__,
    fourier,
    fourier_value,
    hansen,
    hansen_text,
    hansen_value,
    oracle_fourier,
    oracle_hansen,
    scan,
    solve_kepler,
    tmk,
)


def find_triple(m, k, order=60, grid_n=512):
    """Triangle diagnostics for one mode, as the parsed JSON report entry."""
    report = scan("triple", order, order, modes=[(m, k)], grid_n=grid_n)
    return _json.loads(report.json())["modes"][0]


__all__ = [
    "AtlasReport",
    "DomainError",
    "MethodError",
    "__version__",
    "find_triple",
    "fourier",
    "fourier_value",
    "hansen",
    "hansen_text",
    "hansen_value",
    "oracle_fourier",
    "oracle_hansen",
    "scan",
    "solve_kepler",
    "tmk",
]
