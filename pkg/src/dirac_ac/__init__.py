"""Dirac oscillator with Aharonov-Casher coupling on flat and topologically defected backgrounds."""

from .currents import CurrentReport, fd_current_check, level_current, total_current
from .model import (
    Background,
    BackgroundError,
    BackgroundKind,
    PhysicalParams,
    QuantumNumbers,
    effective_zeta,
)
from .oracle import KERNEL, oracle_eigenvalues, validate_lattice
from .specfun import kummer_1f1, kummer_polynomial
from .spectrum import degeneracy_map, energy_level, enumerate_levels, quantization_beta
from .spinor import build_spinor, dirac_residual, normalize

__version__ = "0.1.0"

__all__ = [
    "Background",
    "BackgroundError",
    "BackgroundKind",
    "PhysicalParams",
    "QuantumNumbers",
    "effective_zeta",
    "quantization_beta",
    "energy_level",
    "enumerate_levels",
    "degeneracy_map",
    "kummer_1f1",
    "kummer_polynomial",
    "KERNEL",
    "oracle_eigenvalues",
    "validate_lattice",
    "build_spinor",
    "dirac_residual",
    "normalize",
    "level_current",
    "total_current",
    "fd_current_check",
    "CurrentReport",
]
