"""Finite-difference ground truth for the radial eigenvalue problem.

The radial equation

    R'' + R'/r - (zeta/eta)^2 R / r^2 - (m omega)^2 r^2 R + beta R = 0

becomes, with ``u = sqrt(r) R``, the self-adjoint problem

    -u'' + [(nu^2 - 1/4) / r^2 + (m omega)^2 r^2] u = beta u,   nu = |zeta/eta|

which is discretized on a uniform grid with Dirichlet ends into a symmetric
tridiagonal matrix and solved by Sturm-sequence bisection.

The centrifugal term is not sampled pointwise.  Near the origin the regular
solution behaves as ``u ~ r^p`` with ``p = nu + 1/2``, which the three-point
stencil resolves poorly when ``p < 3/2`` (for ``nu = 0`` the pointwise scheme
converges only logarithmically).  Instead node ``i`` carries the potential
that makes ``i^p`` an exact null vector of the discrete operator,

    V_i = [(i-1)^p - 2 i^p + (i+1)^p] / (i^p h^2),

which tends to ``(nu^2 - 1/4)/r_i^2`` as ``i`` grows and restores second-order
convergence for every ``nu >= 0``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "KERNEL",
    "RadialGrid",
    "RadialOperator",
    "OracleError",
    "discretize_radial",
    "oracle_eigenvalues",
    "richardson_refine",
    "refined_eigenvalues",
    "analytic_beta",
    "ValidationPoint",
    "DEFAULT_LATTICE_ZETA",
    "DEFAULT_LATTICE_M_OMEGA",
    "gate_for",
    "validate_point",
    "validate_lattice",
]

if os.environ.get("DIRAC_AC_PURE_PYTHON"):
    from . import _sturm_py as _kernel

    KERNEL = "python"
else:
    try:
        from . import _sturm as _kernel

        KERNEL = "cython"
    except ImportError:  # extension not built
        from . import _sturm_py as _kernel

        KERNEL = "python"

MIN_POINTS = 64
DEFAULT_POINTS = 2048
DEFAULT_EXTENT = 10.0
BISECT_RTOL = 4.0 * np.finfo(float).eps
BISECT_MAX_ITER = 200

STRICT_GATE = 1e-6
NEAR_SINGULAR_GATE = 1e-4

DEFAULT_LATTICE_ZETA = (0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 1.5)
DEFAULT_LATTICE_M_OMEGA = (0.5, 1.0, 2.0)


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid of ``points`` interior nodes on (0, rho_max)."""

    rho_max: float
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not self.rho_max > 0:
            raise ValueError(f"rho_max must be positive, got {self.rho_max!r}")
        if int(self.points) != self.points or self.points < MIN_POINTS:
            raise ValueError(f"grid too coarse: need at least {MIN_POINTS} points, got {self.points!r}")
        object.__setattr__(self, "rho_max", float(self.rho_max))
        object.__setattr__(self, "points", int(self.points))

    @classmethod
    def default(cls, m_omega: float, points: int = DEFAULT_POINTS) -> "RadialGrid":
        return cls(DEFAULT_EXTENT / math.sqrt(m_omega), points)

    @property
    def h(self) -> float:
        return self.rho_max / (self.points + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.points + 1, dtype=float)

    def halved(self) -> "RadialGrid":
        """Same extent, step exactly h/2."""
        return RadialGrid(self.rho_max, 2 * (self.points + 1) - 1)


@dataclass(frozen=True)
class RadialOperator:
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: RadialGrid

    def dense(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal, 1)
            + np.diag(self.off_diagonal, -1)
        )


def discretize_radial(zeta_over_eta: float, m_omega: float, grid: RadialGrid) -> RadialOperator:
    if not m_omega > 0:
        raise ValueError(f"m_omega must be positive, got {m_omega!r}")
    if grid.points < MIN_POINTS:
        raise ValueError("grid too coarse")
    h = grid.h
    i = np.arange(1, grid.points + 1, dtype=float)
    p = abs(zeta_over_eta) + 0.5
    centrifugal = ((i - 1.0) ** p - 2.0 * i**p + (i + 1.0) ** p) / i**p / (h * h)
    r = h * i
    diagonal = 2.0 / (h * h) + centrifugal + (m_omega * r) ** 2
    off = np.full(grid.points - 1, -1.0 / (h * h))
    return RadialOperator(diagonal, off, grid)


def _gershgorin(d: np.ndarray, e: np.ndarray) -> tuple[float, float]:
    ae = np.abs(e)
    radius = np.zeros_like(d)
    radius[:-1] += ae
    radius[1:] += ae
    lower = float(np.min(d - radius))
    upper = float(np.max(d + radius))
    pad = 2.0 * np.finfo(float).eps * max(abs(lower), abs(upper)) + 1e-300
    return lower - pad, upper + pad


def tridiagonal_eigenvalues(op: RadialOperator, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues of ``op`` by Sturm bisection, ascending."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count!r}")
    n = op.diagonal.size
    if count > n:
        raise OracleError(f"cannot bracket eigenvalue {n}: matrix has only {n} eigenvalues")
    d = np.ascontiguousarray(op.diagonal, dtype=float)
    e2 = np.ascontiguousarray(op.off_diagonal, dtype=float) ** 2
    lower, upper = _gershgorin(d, op.off_diagonal)
    pivmin = np.finfo(float).tiny * max(1.0, float(e2.max(initial=0.0)))
    values, failed = _kernel.bisect_lowest(
        d, e2, count, lower, upper, pivmin, BISECT_RTOL, BISECT_MAX_ITER
    )
    if failed >= 0:
        raise OracleError(f"failed to bracket eigenvalue index {failed}")
    return np.asarray(values[:count], dtype=float)


def oracle_eigenvalues(
    zeta_over_eta: float, m_omega: float, count: int, grid: RadialGrid | None = None
) -> np.ndarray:
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count!r}")
    grid = grid or RadialGrid.default(m_omega)
    if count >= grid.points // 4:
        raise ValueError("count must be much smaller than the number of grid points")
    return tridiagonal_eigenvalues(discretize_radial(zeta_over_eta, m_omega, grid), count)


def richardson_refine(coarse, fine, order: int = 2):
    """Eliminate the leading ``h**order`` error term from a (h, h/2) pair."""
    if order < 1:
        raise ValueError("order must be >= 1")
    # (2^p fine - coarse) / (2^p - 1), arranged to return ``fine`` exactly when coarse == fine
    if np.ndim(fine) or np.ndim(coarse):
        fine, coarse = np.asarray(fine, dtype=float), np.asarray(coarse, dtype=float)
    return fine + (fine - coarse) / (2.0**order - 1.0)


def refined_eigenvalues(
    zeta_over_eta: float, m_omega: float, count: int, grid: RadialGrid | None = None
) -> tuple[np.ndarray, RadialGrid, RadialGrid]:
    coarse_grid = grid or RadialGrid.default(m_omega)
    fine_grid = coarse_grid.halved()
    coarse = oracle_eigenvalues(zeta_over_eta, m_omega, count, coarse_grid)
    fine = oracle_eigenvalues(zeta_over_eta, m_omega, count, fine_grid)
    return richardson_refine(coarse, fine, 2), coarse_grid, fine_grid


def analytic_beta(j: int, zeta_over_eta: float, m_omega: float) -> float:
    return 4.0 * m_omega * (j + abs(zeta_over_eta) / 2.0 + 0.5)


def gate_for(zeta_over_eta: float) -> float:
    return NEAR_SINGULAR_GATE if abs(zeta_over_eta) < 0.5 else STRICT_GATE


@dataclass(frozen=True)
class ValidationPoint:
    zeta_over_eta: float
    m_omega: float
    j: int
    analytic: float
    oracle: float
    rel_error: float
    gate: float
    grids: tuple[int, int]
    rho_max: float

    @property
    def passed(self) -> bool:
        return self.rel_error < self.gate

    def to_dict(self) -> dict:
        return {
            "zeta_over_eta": self.zeta_over_eta,
            "m_omega": self.m_omega,
            "j": self.j,
            "analytic_beta": self.analytic,
            "oracle_beta": self.oracle,
            "rel_error": self.rel_error,
            "gate": self.gate,
            "passed": self.passed,
            "grids": list(self.grids),
            "rho_max": self.rho_max,
        }


def validate_point(
    zeta_over_eta: float,
    m_omega: float,
    count: int = 4,
    grid: RadialGrid | None = None,
    beta_formula=analytic_beta,
) -> list[ValidationPoint]:
    """Compare refined oracle eigenvalues ``j < count`` with ``beta_formula``."""
    refined, coarse_grid, fine_grid = refined_eigenvalues(zeta_over_eta, m_omega, count, grid)
    out = []
    for j, value in enumerate(refined):
        exact = beta_formula(j, zeta_over_eta, m_omega)
        out.append(
            ValidationPoint(
                zeta_over_eta,
                m_omega,
                j,
                exact,
                float(value),
                abs(float(value) - exact) / abs(exact),
                gate_for(zeta_over_eta),
                (coarse_grid.points, fine_grid.points),
                coarse_grid.rho_max,
            )
        )
    return out


def validate_lattice(
    zetas=DEFAULT_LATTICE_ZETA,
    m_omegas=DEFAULT_LATTICE_M_OMEGA,
    count: int = 4,
    points: int = DEFAULT_POINTS,
    extent: float = DEFAULT_EXTENT,
    beta_formula=analytic_beta,
    mapper=map,
) -> list[ValidationPoint]:
    """Run :func:`validate_point` over the product lattice.

    ``mapper`` may be an order-preserving parallel map.
    """
    tasks = [(z, mw) for z in zetas for mw in m_omegas]

    def run(task):
        z, mw = task
        grid = RadialGrid(extent / math.sqrt(mw), points)
        return validate_point(z, mw, count, grid, beta_formula)

    return [pt for block in mapper(run, tasks) for pt in block]
