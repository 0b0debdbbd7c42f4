"""Positive-energy four-component spinors on a radial grid.

Components are ordered ``(phi_+, phi_-, xi_+, xi_-)``: the upper pair ``phi``
and lower pair ``xi`` each split by the eigenvalue of sigma^3.  A mode with
orbital number ``l`` has angular dependence ``exp(i (l + delta_c) varphi)``
with ``delta = (0, 1, 0, 1)``, common factors ``exp(-i E t) exp(i k z)``,
and total angular momentum ``j = l + 1/2``.

With ``Omega = m omega``, ``nu = |zeta|/eta``, ``tau = Omega rho^2`` and the
radial profile ``f = exp(-tau/2) tau^(nu/2)``, the ``s = +1`` solution is::

    phi_+ = C f M(-n, nu+1, tau)
    xi_+  = k/(E+m) phi_+
    xi_-  = i/(E+m) C f [ (s zeta - |zeta|)/(eta rho) M(-n, nu+1, tau)
                          + 2 n Omega rho/(nu+1) M(-n+1, nu+2, tau) ]

and for ``s = -1`` the roles swap: ``phi_-`` carries the profile, ``xi_+``
the bracket and ``xi_- = -k/(E+m) phi_-``.  The lower bracket follows from
acting with the first-order operator on the upper profile; it has no term
linear in ``rho`` beyond the ``n``-proportional one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import simpson

from .model import Background, PhysicalParams, QuantumNumbers, validate_background
from .oracle import RadialGrid
from .specfun import kummer_polynomial
from .spectrum import energy_level

__all__ = [
    "PauliAlgebra",
    "PAULI",
    "SpinorField",
    "SpinorError",
    "ANGULAR_OFFSETS",
    "radial_wavefunction",
    "build_spinor",
    "dirac_residual",
    "residual_gate",
    "normalize",
    "norm_integral",
    "count_nodes",
]

ANGULAR_OFFSETS = np.array([0, 1, 0, 1])
MIN_RESIDUAL_POINTS = 256
EDGE_FRACTION = 0.05
STRICT_RESIDUAL_GATE = 1e-8
NEAR_SINGULAR_RESIDUAL_GATE = 1e-6


class SpinorError(ValueError):
    pass


@dataclass(frozen=True)
class PauliAlgebra:
    sigma1: np.ndarray
    sigma2: np.ndarray
    sigma3: np.ndarray

    def sigma_rho(self, phi: float) -> np.ndarray:
        return math.cos(phi) * self.sigma1 + math.sin(phi) * self.sigma2

    def sigma_phi(self, phi: float) -> np.ndarray:
        return -math.sin(phi) * self.sigma1 + math.cos(phi) * self.sigma2


PAULI = PauliAlgebra(
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class SpinorField:
    grid: RadialGrid
    components: np.ndarray  # shape (4, points), complex
    qn: QuantumNumbers
    energy: float
    norm_constant: float
    background: Background
    params: PhysicalParams
    zeta: float
    gauge: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def rho(self) -> np.ndarray:
        return self.grid.nodes

    def scaled(self, factor: float) -> "SpinorField":
        return replace(self, components=self.components * factor, norm_constant=self.norm_constant * factor)

    def with_energy(self, energy: float) -> "SpinorField":
        return replace(self, energy=float(energy))

    def header(self) -> dict:
        bg, p = self.background, self.params
        return {
            "n": self.qn.n,
            "l": self.qn.l,
            "s": self.qn.s,
            "background": bg.kind.value,
            "eta": bg.eta,
            "chi": bg.chi,
            "mass": p.m,
            "omega": p.omega,
            "mu_lambda": p.mu_lambda,
            "k": p.k,
            "zeta": self.zeta,
            "energy": self.energy,
            "norm_constant": self.norm_constant,
            "t": self.gauge[0],
            "phi": self.gauge[1],
            "z": self.gauge[2],
            "rho_max": self.grid.rho_max,
            "points": self.grid.points,
        }

    def rows(self) -> list[dict]:
        out = []
        for i, r in enumerate(self.rho):
            row = {"rho": float(r)}
            for c in range(4):
                row[f"re{c + 1}"] = float(self.components[c, i].real)
                row[f"im{c + 1}"] = float(self.components[c, i].imag)
            out.append(row)
        return out


def _profile(zeta: float, eta: float, m_omega: float, n: int, rho):
    nu = abs(zeta) / eta
    tau = m_omega * np.asarray(rho, dtype=float) ** 2
    f = np.exp(-0.5 * tau) * tau ** (0.5 * nu)
    return nu, tau, f


def radial_wavefunction(bg: Background, params: PhysicalParams, qn: QuantumNumbers, rho):
    """R(rho) = exp(-tau/2) tau^(|zeta|/(2 eta)) M(-n, |zeta|/eta + 1, tau), tau = m omega rho^2."""
    if np.any(np.asarray(rho) < 0):
        raise ValueError("rho must be non-negative")
    zeta = energy_level(bg, params, qn).zeta
    nu, tau, f = _profile(zeta, bg.eta, params.m_omega, qn.n, rho)
    out = f * kummer_polynomial(qn.n, nu + 1.0, tau)
    return float(out) if np.ndim(rho) == 0 else out


def build_spinor(
    bg: Background,
    params: PhysicalParams,
    qn: QuantumNumbers,
    grid: RadialGrid | None = None,
    gauge: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> SpinorField:
    """Sample the analytic positive-energy spinor for ``qn`` on ``grid``.

    ``gauge`` fixes ``(t, varphi, z)``; the phase it contributes is irrelevant
    to residuals and densities.  The constant C is 1 until :func:`normalize`.
    """
    validate_background(bg)
    level = energy_level(bg, params, qn)
    grid = grid or RadialGrid.default(params.m_omega)
    m, k, energy, zeta, eta = params.m, params.k, level.energy, level.zeta, bg.eta
    if energy + m <= 1e-300:
        raise SpinorError("E + m vanishes")

    rho = grid.nodes
    omega_g = params.m_omega
    nu, tau, f = _profile(zeta, eta, omega_g, qn.n, rho)
    m1 = kummer_polynomial(qn.n, nu + 1.0, tau)
    bracket = (qn.s * zeta - abs(zeta)) / (eta * rho) * m1
    if qn.n > 0:
        m2 = kummer_polynomial(qn.n - 1, nu + 2.0, tau)
        bracket = bracket + 2.0 * qn.n * omega_g * rho / (nu + 1.0) * m2

    upper = f * m1
    lower = 1j * f * bracket / (energy + m)
    axial = k / (energy + m) * upper
    comps = np.zeros((4, rho.size), dtype=complex)
    if qn.s == 1:
        comps[0] = upper
        comps[2] = axial
        comps[3] = lower
    else:
        comps[1] = upper
        comps[2] = lower
        comps[3] = -axial

    t, phi, z = (float(v) for v in gauge)
    common = np.exp(-1j * energy * t) * np.exp(1j * k * z)
    phases = common * np.exp(1j * (qn.l + ANGULAR_OFFSETS) * phi)
    comps *= phases[:, None]
    return SpinorField(grid, comps, qn, energy, 1.0, bg, params, zeta, (t, phi, z))


def _d_drho(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central difference on the interior, NaN on the two edge nodes each side."""
    out = np.full(values.shape, np.nan, dtype=values.dtype)
    out[..., 2:-2] = (
        values[..., :-4] - 8.0 * values[..., 1:-3] + 8.0 * values[..., 3:-1] - values[..., 4:]
    ) / (12.0 * h)
    return out


def dirac_residual(field: SpinorField, bg: Background | None = None, params: PhysicalParams | None = None) -> float:
    """Max pointwise residual of the coupled first-order equations, relative to max |Psi|.

    The equations are, with D = d/dvarphi - chi d/dz::

        (E - m) phi = -i s_rho [d/drho - (1-eta)/(2 eta rho) + mu_lambda/(eta rho) - Omega rho] xi
                      - i s_phi/(eta rho) D xi - i s_3 d/dz xi
        (E + m) xi  = -i s_rho [d/drho - (1-eta)/(2 eta rho) - mu_lambda/(eta rho) + Omega rho] phi
                      - i s_phi/(eta rho) D phi - i s_3 d/dz phi

    where s_rho, s_phi are the rotated Pauli matrices at the field's azimuth.
    Angular and axial derivatives act analytically on the mode.  The first
    and last 5% of nodes are excluded.
    """
    bg = bg or field.background
    params = params or field.params
    validate_background(bg)
    n_points = field.components.shape[1]
    if n_points < MIN_RESIDUAL_POINTS:
        raise SpinorError(f"grid too coarse: need at least {MIN_RESIDUAL_POINTS} points")
    scale = float(np.max(np.abs(field.components)))
    if not scale > 0.0:
        raise SpinorError("empty field")

    psi = field.components
    h = field.grid.h
    rho = field.rho
    eta, chi, k = bg.eta, bg.chi, params.k
    a, omega_g, m, energy = params.mu_lambda, params.m_omega, params.m, field.energy
    phi0 = field.gauge[1]
    s_rho = PAULI.sigma_rho(phi0)
    s_phi = PAULI.sigma_phi(phi0)
    s_3 = PAULI.sigma3

    dpsi = _d_drho(psi, h)
    d_azimuth = 1j * (field.qn.l + ANGULAR_OFFSETS) - chi * 1j * k  # (4,)

    up, lo = psi[:2], psi[2:]
    d_up, d_lo = dpsi[:2], dpsi[2:]
    conn = -(1.0 - eta) / (2.0 * eta * rho)
    inv = 1.0 / (eta * rho)

    radial_lo = d_lo + (conn + a * inv - omega_g * rho) * lo
    res_up = (
        (energy - m) * up
        + 1j * (s_rho @ radial_lo)
        + 1j * inv * (s_phi @ (d_azimuth[2:, None] * lo))
        + 1j * (s_3 @ (1j * k * lo))
    )
    radial_up = d_up + (conn - a * inv + omega_g * rho) * up
    res_lo = (
        (energy + m) * lo
        + 1j * (s_rho @ radial_up)
        + 1j * inv * (s_phi @ (d_azimuth[:2, None] * up))
        + 1j * (s_3 @ (1j * k * up))
    )

    edge = max(2, int(math.ceil(EDGE_FRACTION * n_points)))
    window = slice(edge, n_points - edge)
    norms = np.sqrt(np.sum(np.abs(res_up[:, window]) ** 2 + np.abs(res_lo[:, window]) ** 2, axis=0))
    return float(np.max(norms) / scale)


def residual_gate(field: SpinorField) -> float:
    nu = abs(field.zeta) / field.background.eta
    return NEAR_SINGULAR_RESIDUAL_GATE if nu < 0.5 else STRICT_RESIDUAL_GATE


def norm_integral(field: SpinorField) -> float:
    """Integral of sum |Psi_c|^2 eta rho drho over (0, rho_max) by composite Simpson."""
    density = np.sum(np.abs(field.components) ** 2, axis=0) * field.background.eta * field.rho
    # integrand vanishes at both ends: rho = 0 and the Dirichlet edge
    y = np.concatenate(([0.0], density, [0.0]))
    x = field.grid.h * np.arange(y.size, dtype=float)
    return float(simpson(y, x=x))


def normalize(field: SpinorField) -> SpinorField:
    """Fix C so that the radial density integrates to 1/(2 pi) per unit length."""
    total = norm_integral(field)
    if not total > 0.0:
        raise SpinorError("zero-norm field")
    return field.scaled(1.0 / math.sqrt(2.0 * math.pi * total))


def count_nodes(values, rel_floor: float = 1e-10) -> int:
    """Sign changes of a real profile, ignoring samples below ``rel_floor * max``."""
    v = np.real_if_close(np.asarray(values))
    v = np.asarray(v.real if np.iscomplexobj(v) else v, dtype=float)
    keep = np.abs(v) > rel_floor * np.max(np.abs(v))
    signs = np.sign(v[keep])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
