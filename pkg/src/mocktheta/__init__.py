"""Tenth order mock theta functions: exact q-series, completions, and transformation checks."""

from .qexact import FracPowerSeries, mock_theta_series, theta_series
from .special import NonConvergenceError
from .tenth import (
    Family,
    FormVector,
    NearSingularError,
    F_vector,
    G_vector,
    H_vector,
    J_vector,
    shadow_vector,
    transform_set,
)
from .verify import SuiteParams, run_suite

__all__ = [
    "FracPowerSeries",
    "mock_theta_series",
    "theta_series",
    "NonConvergenceError",
    "Family",
    "FormVector",
    "NearSingularError",
    "F_vector",
    "G_vector",
    "H_vector",
    "J_vector",
    "shadow_vector",
    "transform_set",
    "SuiteParams",
    "run_suite",
]

__version__ = "0.1.0"
