"""Exact analysis of n-body motions in which a single mutual distance varies.

The compiled core exposes the full Newtonian integrator, the Gram-matrix
reduction with its standard coordinates, the certificate pipeline for 3 and
4 bodies, and exact Sturm root counting.
"""

from ._core import (
    BodyState,
    Certificate,
    FirstIntegrals,
    MembershipRecord,
    ReducedState,
    Trajectory,
    TrajectorySample,
    balance_residual,
    certify,
    count_roots,
    distances,
    equilibrium_residual,
    first_integrals,
    integrate,
    isolate_roots,
    make_preset,
    preset_angular_rate,
    reduced_rhs,
    reduction_residual,
    replay_matches,
    standard_coordinates,
)

__all__ = [
    "BodyState",
    "Certificate",
    "FirstIntegrals",
    "MembershipRecord",
    "ReducedState",
    "Trajectory",
    "TrajectorySample",
    "balance_residual",
    "certify",
    "count_roots",
    "distances",
    "equilibrium_residual",
    "first_integrals",
    "integrate",
    "isolate_roots",
    "make_preset",
    "preset_angular_rate",
    "reduced_rhs",
    "reduction_residual",
    "replay_matches",
    "standard_coordinates",
]

__version__ = "0.1.0"
