"""Closed-form positive-energy bound states and level bookkeeping."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .model import (
    Background,
    PhysicalParams,
    QuantumNumbers,
    ZetaValue,
    effective_zeta,
    validate_background,
)

__all__ = [
    "EnergyLevel",
    "LevelTable",
    "quantization_beta",
    "energy_squared",
    "energy_level",
    "enumerate_levels",
    "degeneracy_map",
    "periodicity_check",
]

PERIODICITY_RTOL = 1e-12


@dataclass(frozen=True)
class EnergyLevel:
    qn: QuantumNumbers
    zeta: ZetaValue
    energy: float
    beta: float

    @property
    def sort_key(self):
        return (self.energy, self.qn.n, self.qn.l, self.qn.s)


@dataclass(frozen=True)
class LevelTable:
    background: Background
    params: PhysicalParams
    levels: tuple[EnergyLevel, ...]
    n_max: int
    l_values: tuple[int, ...]
    spins: tuple[int, ...] = field(default=(1, -1))

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def rows(self) -> list[dict]:
        bg, p = self.background, self.params
        return [
            {
                "n": lv.qn.n,
                "l": lv.qn.l,
                "s": lv.qn.s,
                "k": p.k,
                "eta": bg.eta,
                "chi": bg.chi,
                "mu_lambda": p.mu_lambda,
                "zeta": lv.zeta,
                "beta": lv.beta,
                "energy": lv.energy,
            }
            for lv in self.levels
        ]


def quantization_beta(n: int, zeta: ZetaValue, eta: float, m: float, omega: float) -> float:
    """Radial eigenvalue fixed by termination of the Kummer series at degree ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta out of range (0, 1]: {eta!r}")
    if m <= 0.0 or omega <= 0.0:
        raise ValueError("m and omega must be positive")
    return 4.0 * m * omega * (n + abs(zeta) / (2.0 * eta) + 0.5)


def energy_squared(bg: Background, params: PhysicalParams, qn: QuantumNumbers) -> float:
    """E^2 = m^2 + k^2 + 4 m omega [n + |zeta|/(2 eta) - s zeta/(2 eta)]."""
    zeta = effective_zeta(bg, qn, params)
    # |zeta| - s zeta is exactly 0 for aligned levels, so they stay flat in mu_lambda
    bracket = qn.n + (abs(zeta) - qn.s * zeta) / (2.0 * bg.eta)
    m = params.m
    return m * m + params.k * params.k + 4.0 * m * params.omega * bracket


def energy_level(bg: Background, params: PhysicalParams, qn: QuantumNumbers) -> EnergyLevel:
    validate_background(bg)
    zeta = effective_zeta(bg, qn, params)
    beta = quantization_beta(qn.n, zeta, bg.eta, params.m, params.omega)
    return EnergyLevel(qn, zeta, math.sqrt(energy_squared(bg, params, qn)), beta)


def _l_values(l_range) -> tuple[int, ...]:
    if isinstance(l_range, range):
        return tuple(l_range)
    if isinstance(l_range, tuple) and len(l_range) == 2 and all(isinstance(v, int) for v in l_range):
        lo, hi = l_range
        return tuple(range(lo, hi + 1))
    return tuple(int(v) for v in l_range)


def enumerate_levels(
    bg: Background,
    params: PhysicalParams,
    n_max: int,
    l_range,
    spins: Iterable[int] = (1, -1),
) -> LevelTable:
    """All levels with ``0 <= n <= n_max``, ``l`` in ``l_range`` and ``s`` in ``spins``.

    ``l_range`` is a ``range``, an inclusive ``(l_min, l_max)`` pair, or any
    iterable of integers.  The table is sorted by energy with ties broken by
    ``(n, l, s)``.
    """
    validate_background(bg)
    l_values = _l_values(l_range)
    spins = tuple(sorted(set(int(s) for s in spins), reverse=True))
    levels = [
        energy_level(bg, params, QuantumNumbers(n, l, s))
        for n in range(n_max + 1)
        for l in l_values
        for s in spins
    ]
    levels.sort(key=lambda lv: lv.sort_key)
    return LevelTable(bg, params, tuple(levels), n_max, l_values, spins)


def degeneracy_map(table: LevelTable | Sequence[EnergyLevel], tol: float = 1e-10) -> list[tuple[float, int]]:
    """Distinct energies with multiplicities, clustering on E^2 within ``tol``.

    Each cluster is anchored at its lowest member; a level joins the current
    cluster while its E^2 lies within ``tol`` of that anchor.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    levels = table.levels if isinstance(table, LevelTable) else tuple(table)
    energies = sorted(lv.energy for lv in levels)
    clusters: list[tuple[float, int]] = []
    anchor_sq = None
    for e in energies:
        e_sq = e * e
        if anchor_sq is not None and e_sq - anchor_sq <= tol:
            energy, count = clusters[-1]
            clusters[-1] = (energy, count + 1)
        else:
            clusters.append((e, 1))
            anchor_sq = e_sq
    return clusters


def periodicity_check(
    bg: Background,
    params: PhysicalParams,
    qn: QuantumNumbers,
    direction: int = 1,
    rtol: float = PERIODICITY_RTOL,
) -> bool:
    """Whether E_{n,l}(mu_lambda + direction*s) equals E_{n,l+direction}(mu_lambda).

    A full turn of the Aharonov-Casher phase moves ``zeta`` by ``s``; for
    ``s = +1`` this is the shift phi_AC -> phi_AC + 2 pi, l -> l + 1.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    shifted_phase = energy_level(bg, params.replace(mu_lambda=params.mu_lambda + direction * qn.s), qn)
    shifted_orbit = energy_level(bg, params, QuantumNumbers(qn.n, qn.l + direction, qn.s))
    a, b = shifted_phase.energy, shifted_orbit.energy
    return abs(a - b) <= rtol * max(abs(a), abs(b))
