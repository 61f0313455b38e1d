"""Metric-compatible connections and curvature in the bundle of Dirac spinors.

The heavy lifting happens in the compiled extension; this package re-exports
its public surface.  Configuration strings use the same JSON schema as the
command line tool.
"""

from ._core import (
    ConfigError,
    DomainError,
    Error,
    InvalidParam,
    UnknownSpacetime,
    __version__,
    canonical_algebra,
    christoffel,
    compare_json,
    curvature_residual,
    default_tolerances,
    inspect_json,
    spin_connection,
    verify_json,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "InvalidParam",
    "UnknownSpacetime",
    "__version__",
    "canonical_algebra",
    "christoffel",
    "compare_json",
    "curvature_residual",
    "default_tolerances",
    "inspect_json",
    "spin_connection",
    "verify_json",
]
