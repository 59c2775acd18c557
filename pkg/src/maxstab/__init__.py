"""Threshold-censored pairwise composite likelihood tools for max-stable
spatial dependence: simulation, fitting, and Monte Carlo study machinery."""

__version__ = "0.1.0"

from .design import PairTable, StationLayout, pair_weights, sample_stations
from .errors import ConfigError, DataError, DegeneracyError, DomainError, ParameterError
from .estimate import FitOptions, FitResult, fit_dependence
from .likelihood import CensoredConfig, CensoredWorkspace, composite_loglik, composite_score
from .maxstable import SmithParams, br_cdf, extremal_coefficient, schlather_cdf, smith_cdf
from .simulate import DailyPanel, ThresholdSpec, simulate_daily_panel, simulate_smith_field

__all__ = [
    "__version__",
    "CensoredConfig",
    "CensoredWorkspace",
    "ConfigError",
    "DailyPanel",
    "DataError",
    "DegeneracyError",
    "DomainError",
    "FitOptions",
    "FitResult",
    "PairTable",
    "ParameterError",
    "SmithParams",
    "StationLayout",
    "ThresholdSpec",
    "br_cdf",
    "composite_loglik",
    "composite_score",
    "extremal_coefficient",
    "fit_dependence",
    "pair_weights",
    "sample_stations",
    "schlather_cdf",
    "simulate_daily_panel",
    "simulate_smith_field",
    "smith_cdf",
]
