"""Exact modular-form q-expansions, Hecke-angle statistics, explicit
prime-counting bounds, nonvanishing densities, and theta-series checks."""

__version__ = "0.1.0"

from .qexp import (  # noqa: F401
    FourierSeries,
    series_mul,
    sigma,
    bernoulli,
    eisenstein_series,
    eta_product,
    sturm_bound,
)
