"""Scale-dependent regression with detrended fluctuation analysis."""

from ._core import (
    DegenerateError,
    InputError,
    __version__,
    arfima,
    arfima_weights,
    bmfs,
    critical_pdcca,
    critical_t,
    dcca,
    default_scale_grid,
    dfa,
    dfa_regression,
    gaussian_noise,
    log_scale_grid,
    ols,
    partial_corr,
    profile,
    read_csv,
    rho_dcca,
    rho_pdcca,
)

__all__ = [
    "DegenerateError",
    "InputError",
    "__version__",
    "arfima",
    "arfima_weights",
    "bmfs",
    "critical_pdcca",
    "critical_t",
    "dcca",
    "default_scale_grid",
    "dfa",
    "dfa_regression",
    "gaussian_noise",
    "log_scale_grid",
    "ols",
    "partial_corr",
    "profile",
    "read_csv",
    "rho_dcca",
    "rho_pdcca",
]
