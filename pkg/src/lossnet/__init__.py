"""Loss-network simulation and analysis.

Simulates blocking in multi-resource loss systems with renewal arrivals,
heavy-tailed integer demands, general holding times, and optional advance
reservations; computes exact small-instance blocking probabilities and
tail-based asymptotic approximations for comparison.
"""

__version__ = "0.1.0"

from .distributions import (
    DemandDistribution,
    HoldingDistribution,
    TailFamily,
    build_atom_plus_stretched_exp,
    build_deterministic_demand,
    build_truncated_geometric,
    build_truncated_power_law,
)
from .model import ArrivalSpec, NetworkModel, RequestClass, offered_load, validate

__all__ = [
    "DemandDistribution",
    "HoldingDistribution",
    "TailFamily",
    "build_atom_plus_stretched_exp",
    "build_deterministic_demand",
    "build_truncated_geometric",
    "build_truncated_power_law",
    "ArrivalSpec",
    "NetworkModel",
    "RequestClass",
    "offered_load",
    "validate",
    "__version__",
]
