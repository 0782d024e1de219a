"""Information inequalities and their statistical-mechanics readings, computed exactly."""

from .ensemble import (
    DiscreteDistribution,
    EnsembleReport,
    Hamiltonian,
    boltzmann,
    ensemble_report,
    hamiltonian_from_distribution,
    interpolate,
    log_partition,
)
from .errors import DomainError, QuadratureError, UnsupportedSizeError
from .gibbs import (
    adiabatic_clausius,
    binary_entropy,
    gibbs_decomposition,
    log_sum_inequality,
    relative_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteDistribution",
    "DomainError",
    "EnsembleReport",
    "Hamiltonian",
    "QuadratureError",
    "UnsupportedSizeError",
    "adiabatic_clausius",
    "binary_entropy",
    "boltzmann",
    "ensemble_report",
    "gibbs_decomposition",
    "hamiltonian_from_distribution",
    "interpolate",
    "log_partition",
    "log_sum_inequality",
    "relative_entropy",
]
