"""Green functions, critical points and Lame discriminants on rectangular tori."""

from ._core import (
    ConvergenceError,
    CornerError,
    CensusIncomplete,
    DomainError,
    InconsistencyError,
    Lattice,
    NumericalError,
    PoleError,
    TorusPoint,
    accessory_corners,
    census,
    classify_region,
    degenerate_scan,
    discriminant_ode,
    discriminants,
    disks,
    hitchin_wp,
    run_acceptance,
    thresholds,
    wp,
    wp_prime,
    zeta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
