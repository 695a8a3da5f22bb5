"""Energy-efficient HARQ power allocation and rate selection."""

from ._core import (
    AllocationResult,
    AsymptoticReport,
    ChannelSpec,
    InfeasibleError,
    MonteCarloReport,
    QosSpec,
    Scheme,
    Solution,
    allocate,
    avg_power_of_ladder,
    ee_limit,
    ell,
    estimate_outage,
    f_alpha,
    g,
    g_prime,
    kappa,
    kappa_inf,
    lambda_direct_rate_ir,
    optimal_alpha,
    optimal_rate_ir,
    optimal_rate_typei_cc,
    phi,
    psi,
    solve,
    spectral_efficiency,
    theta,
    theta_inf,
    uniform_power_solve,
    varsigma,
)

__all__ = [name for name in dir() if not name.startswith("_")]
